#include "etdclust/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "etdclust/errors.hpp"

namespace etdclust {

namespace {

constexpr int kMaxIterations = 10000;
const double kEps = std::numeric_limits<double>::epsilon();

/// Gamma-function combinations for the Temme series, |mu| <= 1/2:
///   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
///   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
///   gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu)
/// Near mu = 0 the gam1 quotient is evaluated from the Taylor expansion of
/// 1/Gamma(1+x) (Abramowitz & Stegun 6.1.34) to avoid cancellation.
void gamma_combinations(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    gampl = 1.0 / std::tgamma(1.0 + mu);
    gammi = 1.0 / std::tgamma(1.0 - mu);
    gam2 = 0.5 * (gammi + gampl);
    if (std::abs(mu) < 0.02) {
        // odd coefficients of 1/Gamma(1+x): c2 + c4 x^2 + c6 x^4 + c8 x^6
        constexpr double c2 = 0.5772156649015329;    // Euler-Mascheroni
        constexpr double c4 = -0.0420026350340952;
        constexpr double c6 = -0.0421977345555443;
        constexpr double c8 = 0.0072189432466630;
        const double m2 = mu * mu;
        gam1 = -(c2 + m2 * (c4 + m2 * (c6 + m2 * c8)));
    } else {
        gam1 = (gammi - gampl) / (2.0 * mu);
    }
}

/// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2 and 0 < x < 2 (Temme 1975).
void bessel_k_series(double mu, double x, double& k_mu, double& k_mu1) {
    const double half_x = 0.5 * x;
    const double log_term = -std::log(half_x);       // d
    const double e = mu * log_term;
    const double pi_mu = std::numbers::pi * mu;
    const double fact = std::abs(pi_mu) < kEps ? 1.0 : pi_mu / std::sin(pi_mu);
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;

    double gam1 = 0.0;
    double gam2 = 0.0;
    double gampl = 0.0;
    double gammi = 0.0;
    gamma_combinations(mu, gam1, gam2, gampl, gammi);

    double f = fact * (gam1 * std::cosh(e) + gam2 * fact2 * log_term);  // f_0
    const double exp_e = std::exp(e);
    double p = 0.5 * exp_e / gampl;   // fact * p_0
    double q = 0.5 / (exp_e * gammi); // fact * q_0
    double c = 1.0;
    const double x2_over_4 = half_x * half_x;
    const double mu2 = mu * mu;

    double sum = f;
    double sum1 = p;  // h_0 = p_0
    for (int i = 1; i <= kMaxIterations; ++i) {
        f = (static_cast<double>(i) * f + p + q) / (static_cast<double>(i) * i - mu2);
        c *= x2_over_4 / static_cast<double>(i);
        p /= static_cast<double>(i) - mu;
        q /= static_cast<double>(i) + mu;
        const double del = c * f;
        sum += del;
        const double del1 = c * (p - static_cast<double>(i) * f);
        sum1 += del1;
        if (std::abs(del) < std::abs(sum) * kEps) {
            k_mu = sum;
            k_mu1 = sum1 * 2.0 / x;
            return;
        }
    }
    throw NumericError("modified_bessel_k: series failed to converge");
}

/// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2 and x >= 2 via Steed's
/// continued fraction CF2.
void bessel_k_cf2(double mu, double x, double& k_mu, double& k_mu1) {
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= kMaxIterations; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / static_cast<double>(i);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) {
            h = a1 * h;
            k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
            k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
            return;
        }
    }
    throw NumericError("modified_bessel_k: continued fraction failed to converge");
}

}  // namespace

double modified_bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("modified_bessel_k: x must be positive");
    if (nu < 0.0) nu = -nu;  // K_{-nu} = K_nu

    const int steps = static_cast<int>(nu + 0.5);
    const double mu = nu - steps;  // in [-1/2, 1/2)

    double k_mu = 0.0;
    double k_mu1 = 0.0;
    if (x < 2.0) {
        bessel_k_series(mu, x, k_mu, k_mu1);
    } else {
        bessel_k_cf2(mu, x, k_mu, k_mu1);
    }
    for (int i = 1; i <= steps; ++i) {
        const double k_next = (mu + i) * (2.0 / x) * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = k_next;
    }
    return k_mu;
}

}  // namespace etdclust

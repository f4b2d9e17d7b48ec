#include "etdclust/simulate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "etdclust/bessel.hpp"
#include "etdclust/errors.hpp"
#include "etdclust/rng.hpp"

namespace etdclust::sim {

namespace {

using std::numbers::pi;

double log2p1(double t) { return std::log2(t + 1.0); }

/// First `count` elements of a seeded Fisher-Yates permutation of 0..n-1.
std::vector<int> random_subset(int n, int count, CounterRng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(count);
    return perm;
}

/// Lower-triangular pivot-tolerant Cholesky; returns false when the matrix
/// is indefinite beyond tolerance. Zero pivots (semidefinite directions)
/// zero out their column, so a PSD matrix always factors.
bool cholesky_psd(const Matrix& a, Matrix& lower) {
    const int n = a.rows;
    lower = Matrix(n, n);
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a.at(i, i)));
    const double tol = std::max(1e-12 * max_diag, 1e-300);

    for (int j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (int k = 0; k < j; ++k) d -= lower.at(j, k) * lower.at(j, k);
        if (d < -tol) return false;
        if (d <= tol) {
            // semidefinite direction; leave the column at zero
            continue;
        }
        const double ljj = std::sqrt(d);
        lower.at(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double v = a.at(i, j);
            for (int k = 0; k < j; ++k) v -= lower.at(i, k) * lower.at(j, k);
            lower.at(i, j) = v / ljj;
        }
    }
    return true;
}

int bernoulli_half(CounterRng& rng) { return rng.next_double() < 0.5 ? 1 : 0; }

/// Sign r = +1 if U(-1,1) > 0 else -1.
double contamination_sign(CounterRng& rng) {
    return rng.next_uniform(-1.0, 1.0) > 0.0 ? 1.0 : -1.0;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("eigenvalues: matrix not square");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        mapped(m.data.data(), m.rows, m.cols);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mapped);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigenvalue decomposition failed");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

void MaternParams::validate() const {
    if (dim < 1) throw std::invalid_argument("matern: dim must be >= 1");
    if (static_cast<int>(sigma2.size()) != dim || static_cast<int>(nu.size()) != dim) {
        throw std::invalid_argument("matern: sigma2/nu must have one entry per variable");
    }
    for (double s : sigma2) {
        if (!(s > 0.0)) throw std::invalid_argument("matern: sigma2 must be positive");
    }
    for (double v : nu) {
        if (!(v > 0.0)) throw std::invalid_argument("matern: nu must be positive");
    }
    if (!(eta > 0.0)) throw std::invalid_argument("matern: eta must be positive");
    if (beta.rows != dim || beta.cols != dim) {
        throw std::invalid_argument("matern: beta must be dim x dim");
    }
    for (int i = 0; i < dim; ++i) {
        if (beta.at(i, i) != 1.0) throw std::invalid_argument("matern: beta diagonal must be 1");
        for (int j = 0; j < dim; ++j) {
            if (beta.at(i, j) != beta.at(j, i)) {
                throw std::invalid_argument("matern: beta must be symmetric");
            }
            if (i != j && (beta.at(i, j) < 0.0 || beta.at(i, j) > 1.0)) {
                throw std::invalid_argument("matern: beta off-diagonals must lie in [0,1]");
            }
        }
    }
    if (dim > 1) {
        const auto ev = symmetric_eigenvalues(beta);
        if (ev.front() < -1e-10) {
            throw std::invalid_argument("matern: beta must be positive semidefinite");
        }
    }
}

std::vector<double> default_sigma2(int dim) {
    static constexpr double base[3] = {0.05, 0.2, 0.3};
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = base[i % 3];
    return out;
}

MaternParams draw_matern_params(int dim, std::span<const double> sigma2, double eta,
                                std::uint64_t seed) {
    MaternParams params;
    params.dim = dim;
    params.sigma2.assign(sigma2.begin(), sigma2.end());
    params.eta = eta;
    params.nu.resize(dim);
    for (int i = 1; i <= dim; ++i) {
        CounterRng rng(seed, RngStream::matern_nu, static_cast<std::uint64_t>(i));
        params.nu[i - 1] = rng.next_uniform(0.2, 0.3);
    }
    params.beta = Matrix(dim, dim);
    for (int i = 0; i < dim; ++i) params.beta.at(i, i) = 1.0;
    for (int i = 1; i <= dim; ++i) {
        for (int j = i + 1; j <= dim; ++j) {
            CounterRng rng(seed, RngStream::matern_beta, static_cast<std::uint64_t>(i),
                           static_cast<std::uint64_t>(j));
            const double b = rng.next_double();
            params.beta.at(i - 1, j - 1) = b;
            params.beta.at(j - 1, i - 1) = b;
        }
    }
    if (dim > 1) {
        for (int iter = 0; iter < 200; ++iter) {
            if (symmetric_eigenvalues(params.beta).front() >= -1e-10) break;
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    if (i != j) params.beta.at(i, j) *= 0.9;
                }
            }
        }
    }
    params.validate();
    return params;
}

double matern_correlation(double h, double nu, double eta) {
    if (h < 0.0) h = -h;
    if (h == 0.0) return 1.0;
    const double scaled = eta * h;
    return std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(scaled, nu) *
           modified_bessel_k(nu, scaled);
}

Matrix matern_covariance(const MaternParams& params, const StandardGrid& grid) {
    params.validate();
    const int p = params.dim;
    const int t = grid.size();
    const double half_p = static_cast<double>(p) / 2.0;

    Matrix cov(p * t, p * t);
    std::vector<double> lag_values(t);
    for (int vi = 1; vi <= p; ++vi) {
        for (int vj = vi; vj <= p; ++vj) {
            const double nu_i = params.nu[vi - 1];
            const double nu_j = params.nu[vj - 1];
            double scale = 0.0;
            double nu_eff = 0.0;
            if (vi == vj) {
                nu_eff = nu_i;
                scale = params.sigma2[vi - 1];
            } else {
                nu_eff = 0.5 * (nu_i + nu_j);
                const double rho =
                    params.beta.at(vi - 1, vj - 1) *
                    std::sqrt(std::tgamma(nu_i + half_p) / std::tgamma(nu_i)) *
                    std::sqrt(std::tgamma(nu_j + half_p) / std::tgamma(nu_j)) *
                    (std::tgamma(nu_eff) / std::tgamma(nu_eff + half_p));
                scale = rho * std::sqrt(params.sigma2[vi - 1] * params.sigma2[vj - 1]);
            }
            for (int lag = 0; lag < t; ++lag) {
                lag_values[lag] =
                    scale * matern_correlation(grid[lag] - grid[0], nu_eff, params.eta);
            }
            for (int s = 0; s < t; ++s) {
                for (int u = 0; u < t; ++u) {
                    const double value = lag_values[std::abs(s - u)];
                    cov.at((vi - 1) * t + s, (vj - 1) * t + u) = value;
                    cov.at((vj - 1) * t + u, (vi - 1) * t + s) = value;
                }
            }
        }
    }
    return cov;
}

NoiseSampler::NoiseSampler(const Matrix& cov) {
    if (cov.rows != cov.cols) throw std::invalid_argument("noise: covariance not square");
    for (int i = 0; i < cov.rows; ++i) {
        for (int j = i + 1; j < cov.cols; ++j) {
            if (cov.at(i, j) != cov.at(j, i)) {
                throw std::invalid_argument("noise: covariance not symmetric");
            }
        }
    }
    if (cholesky_psd(cov, factor_)) return;

    Matrix jittered = cov;
    for (double jitter = 1e-10; jitter <= 1e-6 * (1.0 + 1e-12); jitter *= 10.0) {
        for (int i = 0; i < cov.rows; ++i) jittered.at(i, i) = cov.at(i, i) + jitter;
        if (cholesky_psd(jittered, factor_)) {
            jitter_ = jitter;
            return;
        }
    }
    throw NumericError("noise: covariance factorization failed at maximum jitter");
}

std::vector<double> NoiseSampler::draw(std::uint64_t seed, std::uint64_t draw_index) const {
    const int n = factor_.rows;
    CounterRng rng(seed, RngStream::noise, draw_index);
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = rng.next_normal();
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k <= i; ++k) acc += factor_.at(i, k) * z[k];
        out[i] = acc;
    }
    return out;
}

Matrix sample_noise(const Matrix& cov, int n_draws, std::uint64_t seed) {
    if (n_draws < 0) throw std::invalid_argument("sample_noise: negative draw count");
    const NoiseSampler sampler(cov);
    Matrix out(n_draws, cov.rows);
    for (int i = 0; i < n_draws; ++i) {
        const auto draw = sampler.draw(seed, static_cast<std::uint64_t>(i));
        std::copy(draw.begin(), draw.end(), out.data.begin() + static_cast<std::size_t>(i) * cov.rows);
    }
    return out;
}

void ScenarioSpec::validate() const {
    if (n_clusters < 1) throw std::invalid_argument("scenario: need at least 1 cluster");
    if (n_samples < 1) throw std::invalid_argument("scenario: need at least 1 sample");
    if (n_samples % n_clusters != 0) {
        throw std::invalid_argument("scenario: n_samples must be divisible by n_clusters");
    }
    if (grid_size < 2) throw std::invalid_argument("scenario: grid_size must be >= 2");
    if (dim < 1) throw std::invalid_argument("scenario: dim must be >= 1");
    const bool trivariate = id == Scenario::S4 || id == Scenario::S5 || id == Scenario::S6;
    if (trivariate && dim != 3) {
        throw std::invalid_argument("scenario: S4-S6 are defined for exactly 3 variables");
    }
    if (id == Scenario::S2 && dim > 3) {
        throw std::invalid_argument("scenario: S2 is defined for at most 3 variables");
    }
    const bool three_cluster = id == Scenario::S2 || id == Scenario::S5 || id == Scenario::S6;
    if (three_cluster && n_clusters > 3) {
        throw std::invalid_argument("scenario: S2, S5 and S6 are defined for at most 3 clusters");
    }
    if (!sigma2.empty() && static_cast<int>(sigma2.size()) != dim) {
        throw std::invalid_argument("scenario: sigma2 must have one entry per variable");
    }
    for (double s : sigma2) {
        if (!(s > 0.0)) throw std::invalid_argument("scenario: sigma2 must be positive");
    }
    if (!(eta > 0.0)) throw std::invalid_argument("scenario: eta must be positive");
}

void ContaminationSpec::validate() const {
    if (rate < 0.0 || rate >= 0.5) {
        throw std::invalid_argument("contamination: rate must lie in [0, 0.5)");
    }
}

void SparsitySpec::validate() const {
    if (p_size < 0.0 || p_size > 1.0) {
        throw std::invalid_argument("sparsity: p_size must lie in [0, 1]");
    }
    if (p_curve < 0.0 || p_curve >= 1.0) {
        throw std::invalid_argument("sparsity: p_curve must lie in [0, 1)");
    }
}

double scenario_mean(Scenario id, int cluster, int variable, double t,
                     const ScenarioAux& aux) {
    const double k = static_cast<double>(cluster);
    const double v = static_cast<double>(variable);
    const double l = aux.l;
    const double r = static_cast<double>(aux.r);
    switch (id) {
        case Scenario::S1:
            return 2.0 * v * std::cos((l + r * v / 4.0) * pi * t) +
                   (aux.r % 2 == 0 ? 1.0 : -1.0) * 3.0 * k * v;
        case Scenario::S2: {
            double h = 0.0;
            if (cluster == 1) {
                h = log2p1(t);
            } else if (cluster == 2) {
                if (variable == 1) h = t * t;
                else if (variable == 2) h = 1.0 - std::cos(pi * t / 2.0);
                else if (variable == 3) h = std::sin(pi * t / 2.0) * std::sin(pi * t / 2.0);
                else throw std::invalid_argument("scenario_mean: S2 variable out of range");
            } else if (cluster == 3) {
                if (variable == 1) h = t * t * t;
                else if (variable == 2) h = std::sin(pi * t / 2.0);
                else if (variable == 3) h = t;
                else throw std::invalid_argument("scenario_mean: S2 variable out of range");
            } else {
                throw std::invalid_argument("scenario_mean: S2 cluster out of range");
            }
            return 2.0 * v * std::cos((l + r * v / 4.0) * pi * h);
        }
        case Scenario::S3:
            return 6.0 * std::cos((l + v) * pi * (t + 0.2 * l * k) / 2.0);
        case Scenario::S4: {
            const double w = 1.01 * (t + k - 1.0) + 0.548;
            if (variable == 1) return 5.0 * std::cos(3.0 * w) * std::cos(w);
            if (variable == 2) return 5.0 * std::cos(3.0 * w) * std::sin(w);
            if (variable == 3) return 5.0 * std::cos(3.0 * w);
            throw std::invalid_argument("scenario_mean: S4 variable out of range");
        }
        case Scenario::S5: {
            if (cluster < 1 || cluster > 3) {
                throw std::invalid_argument("scenario_mean: S5 cluster out of range");
            }
            if (variable == 1) {
                if (cluster == 1) return -5.0 * t - std::sin(10.0 * pi * t);
                if (cluster == 2) return 5.0 * std::sin(10.0 * pi * t);
                return 5.0 * t + std::sin(10.0 * pi * t);
            }
            if (variable == 2) {
                if (cluster == 1) return 11.0 * t * t;
                if (cluster == 2) return 7.0 * t;
                return 5.0 * log2p1(t);
            }
            if (variable == 3) return 7.0 * k * log2p1(t);
            throw std::invalid_argument("scenario_mean: S5 variable out of range");
        }
        case Scenario::S6: {
            if (cluster < 1 || cluster > 3) {
                throw std::invalid_argument("scenario_mean: S6 cluster out of range");
            }
            if (variable == 1) {
                if (cluster == 1) return 5.0 * std::cos(10.0 * pi * t);
                if (cluster == 2) return 5.0 * t * std::cos(20.0 * pi * t + 10.0);
                return 5.0 * t * std::sin(20.0 * pi * t + 10.0);
            }
            if (variable == 2) {
                if (cluster == 1) return 5.5 * std::sin(10.0 * pi * t);
                if (cluster == 2) return 5.0 * t * std::sin(20.0 * pi * t + 10.0);
                return 5.0 * log2p1(t);
            }
            if (variable == 3) {
                if (cluster == 2) return 10.0 - 10.0 * t;
                return 10.0 * t;
            }
            throw std::invalid_argument("scenario_mean: S6 variable out of range");
        }
    }
    throw std::invalid_argument("scenario_mean: unknown scenario");
}

void contaminate_curve(std::vector<std::vector<double>>& variable_means,
                       Contamination id, std::span<const double> grid,
                       std::uint64_t seed, int curve) {
    if (id == Contamination::none) return;
    const int p = static_cast<int>(variable_means.size());
    const int t = static_cast<int>(grid.size());
    const auto curve_idx = static_cast<std::uint64_t>(curve);

    for (int v = 1; v <= p; ++v) {
        auto& mean = variable_means[v - 1];
        const auto [min_it, max_it] = std::minmax_element(mean.begin(), mean.end());
        const double min_m = *min_it;
        const double max_m = *max_it;
        const double h = std::max(std::abs(min_m), std::abs(max_m)) / 2.0;

        CounterRng sign_rng(seed, RngStream::contam_r, curve_idx, static_cast<std::uint64_t>(v));
        const double r = contamination_sign(sign_rng);

        switch (id) {
            case Contamination::C1:
                for (double& m : mean) m += r * h;
                break;
            case Contamination::C2: {
                CounterRng rng(seed, RngStream::contam_window, curve_idx,
                               static_cast<std::uint64_t>(v));
                const double start = rng.next_uniform(0.0, 0.9);
                for (int k = 0; k < t; ++k) {
                    if (grid[k] >= start && grid[k] <= start + 0.1) mean[k] += r * h;
                }
                break;
            }
            case Contamination::C3: {
                CounterRng rng(seed, RngStream::contam_window, curve_idx,
                               static_cast<std::uint64_t>(v));
                const double start = rng.next_uniform(0.0, 0.5);
                for (int k = 0; k < t; ++k) {
                    if (grid[k] >= start) mean[k] += r * h;
                }
                break;
            }
            case Contamination::C4: {
                CounterRng c_rng(seed, RngStream::contam_intercept, curve_idx,
                                 static_cast<std::uint64_t>(v));
                CounterRng s_rng(seed, RngStream::contam_slope, curve_idx,
                                 static_cast<std::uint64_t>(v));
                const double c = c_rng.next_uniform(min_m / 2.0, max_m / 2.0);
                const double s = s_rng.next_uniform(-2.0 * v, 2.0 * v);
                for (int k = 0; k < t; ++k) {
                    CounterRng eps_rng(seed, RngStream::contam_eps, curve_idx,
                                       static_cast<std::uint64_t>(v) * t + k);
                    mean[k] = c + s * grid[k] + eps_rng.next_uniform(-0.3, 0.3);
                }
                break;
            }
            case Contamination::C5:
            case Contamination::C6: {
                const double omega = id == Contamination::C5 ? 0.5 : 30.0;
                const double midrange = min_m / 2.0 + max_m / 2.0;
                CounterRng a_rng(seed, RngStream::contam_shift, curve_idx,
                                 static_cast<std::uint64_t>(v));
                const double a = a_rng.next_uniform(-h, 0.0);
                for (int k = 0; k < t; ++k) {
                    double trig = 0.0;
                    switch ((v - 1) % 3) {
                        case 0: trig = h * std::cos(omega * pi * grid[k]); break;
                        case 1: trig = h * std::sin(omega * pi * grid[k]); break;
                        case 2: trig = -h * std::cos(omega * pi * grid[k]); break;
                    }
                    mean[k] = midrange + trig + a;
                }
                break;
            }
            case Contamination::none:
                break;
        }
    }
}

std::vector<SparseSample> sparsify(std::vector<SparseSample> samples,
                                   const SparsitySpec& sparsity, std::uint64_t seed) {
    sparsity.validate();
    const int n = static_cast<int>(samples.size());
    const int n_sparse = static_cast<int>(std::ceil(sparsity.p_size * n));
    if (n_sparse == 0) return samples;

    CounterRng choice_rng(seed, RngStream::sparse_choice);
    const std::vector<int> chosen = random_subset(n, n_sparse, choice_rng);

    for (int c : chosen) {
        const SparseSample& s = samples[c];
        const int t_n = s.size();
        const int removed = static_cast<int>(std::lround(sparsity.p_curve * t_n));
        if (removed == 0) continue;
        if (t_n < 3) {
            throw std::invalid_argument("sparsify: curves must have at least 3 points");
        }
        if (t_n - removed < 2) {
            throw std::invalid_argument(
                "sparsify: p_curve too large, fewer than 2 points would survive");
        }
        CounterRng subset_rng(seed, RngStream::sparse_subset, static_cast<std::uint64_t>(c));
        std::vector<int> drop = random_subset(t_n, removed, subset_rng);
        std::sort(drop.begin(), drop.end());

        std::vector<double> times;
        std::vector<double> values;
        times.reserve(t_n - removed);
        values.reserve(static_cast<std::size_t>(t_n - removed) * s.dim());
        std::size_t next_drop = 0;
        for (int k = 0; k < t_n; ++k) {
            if (next_drop < drop.size() && drop[next_drop] == k) {
                ++next_drop;
                continue;  // all variables removed jointly at this index
            }
            times.push_back(s.times()[k]);
            const auto value = s.value(k);
            values.insert(values.end(), value.begin(), value.end());
        }
        samples[c] = SparseSample(s.id(), std::move(times), std::move(values), s.dim());
    }
    return samples;
}

std::vector<int> LabeledDataset::outlier_indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == outlier_label) out.push_back(static_cast<int>(i));
    }
    return out;
}

LabeledDataset generate(const ScenarioSpec& spec, const ContaminationSpec& contamination,
                        const SparsitySpec& sparsity) {
    spec.validate();
    contamination.validate();
    sparsity.validate();

    const int n = spec.n_samples;
    const int k_clusters = spec.n_clusters;
    const int p = spec.dim;
    const StandardGrid grid(spec.grid_size);
    const int t = grid.size();

    const std::vector<double> sigma2 =
        spec.sigma2.empty() ? default_sigma2(p) : spec.sigma2;
    const MaternParams matern = draw_matern_params(p, sigma2, spec.eta, spec.seed);
    const NoiseSampler sampler(matern_covariance(matern, grid));

    // per-(cluster, variable) scenario randoms
    std::vector<std::vector<ScenarioAux>> aux(k_clusters, std::vector<ScenarioAux>(p));
    for (int k = 1; k <= k_clusters; ++k) {
        for (int v = 1; v <= p; ++v) {
            CounterRng l_rng(spec.seed, RngStream::scenario_l, static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(v));
            CounterRng r_rng(spec.seed, RngStream::scenario_r, static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(v));
            aux[k - 1][v - 1].l = l_rng.next_uniform(1.0, static_cast<double>(p));
            aux[k - 1][v - 1].r = bernoulli_half(r_rng);
        }
    }

    // cluster means on the grid: means[k-1][v-1][grid point]
    std::vector<std::vector<std::vector<double>>> means(
        k_clusters, std::vector<std::vector<double>>(p, std::vector<double>(t)));
    for (int k = 1; k <= k_clusters; ++k) {
        for (int v = 1; v <= p; ++v) {
            for (int g = 0; g < t; ++g) {
                means[k - 1][v - 1][g] = scenario_mean(spec.id, k, v, grid[g], aux[k - 1][v - 1]);
            }
        }
    }

    // ceil(N * rate) curves get contaminated means, split as evenly as
    // possible across clusters. Contaminations 5-6 make same-cluster
    // outliers mutually similar, so an uneven draw could hand one cluster
    // enough of them to pass the primary-size guard as a spurious cluster.
    std::vector<char> is_outlier(n, 0);
    if (contamination.id != Contamination::none && contamination.rate > 0.0) {
        const int n_outliers = static_cast<int>(std::ceil(contamination.rate * n));
        const int per_cluster = n / k_clusters;
        const int base = n_outliers / k_clusters;
        const int extra = n_outliers % k_clusters;
        for (int k = 1; k <= k_clusters; ++k) {
            const int count = base + (k <= extra ? 1 : 0);
            CounterRng rng(spec.seed, RngStream::outlier_choice,
                           static_cast<std::uint64_t>(k));
            for (int local : random_subset(per_cluster, count, rng)) {
                is_outlier[(k - 1) * per_cluster + local] = 1;
            }
        }
    }

    LabeledDataset dataset;
    dataset.samples.reserve(n);
    dataset.labels.reserve(n);
    const int per_cluster = n / k_clusters;
    for (int i = 0; i < n; ++i) {
        const int cluster = i / per_cluster + 1;
        std::vector<std::vector<double>> curve_mean = means[cluster - 1];
        int label = cluster;
        if (is_outlier[i]) {
            contaminate_curve(curve_mean, contamination.id, grid.points(), spec.seed, i);
            label = LabeledDataset::outlier_label;
        }
        const std::vector<double> noise = sampler.draw(spec.seed, static_cast<std::uint64_t>(i));
        std::vector<double> values(static_cast<std::size_t>(t) * p);
        for (int g = 0; g < t; ++g) {
            for (int d = 0; d < p; ++d) {
                values[static_cast<std::size_t>(g) * p + d] =
                    curve_mean[d][g] + noise[static_cast<std::size_t>(d) * t + g];
            }
        }
        std::vector<double> times(grid.points().begin(), grid.points().end());
        dataset.samples.emplace_back("c" + std::to_string(i + 1), std::move(times),
                                     std::move(values), p);
        dataset.labels.push_back(label);
    }

    dataset.samples = sparsify(std::move(dataset.samples), sparsity, spec.seed);
    return dataset;
}

}  // namespace etdclust::sim

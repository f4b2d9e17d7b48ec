#pragma once

namespace etdclust {

/// Modified Bessel function of the second kind K_nu(x) for real order
/// nu >= 0 and x > 0. Uses the Temme series for x < 2 and a Steed
/// continued fraction for x >= 2, followed by upward recurrence in the
/// order. Accurate to ~1e-13 relative over nu in [0, 30].
/// Throws std::invalid_argument for x <= 0 and NumericError if the
/// expansion fails to converge.
double modified_bessel_k(double nu, double x);

}  // namespace etdclust

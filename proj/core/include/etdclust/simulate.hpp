#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "etdclust/sample.hpp"

namespace etdclust::sim {

/// Minimal dense row-major matrix.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Ascending eigenvalues of a symmetric matrix.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Matern cross-covariance parameters. Variables are indexed 1..dim in the
/// formulas; vectors here are 0-based over variables.
struct MaternParams {
    int dim = 0;
    std::vector<double> sigma2;  // marginal variances, > 0
    std::vector<double> nu;      // smoothness, > 0
    double eta = 1.0;            // shared scale
    Matrix beta;                 // dim x dim, symmetric, unit diagonal, PSD

    void validate() const;
};

/// Default marginal variances {0.05, 0.2, 0.3}, cycled to `dim` entries.
std::vector<double> default_sigma2(int dim);

/// nu_i ~ U(0.2, 0.3) per variable and beta off-diagonals ~ U(0,1), shrunk
/// toward zero by factor 0.9 until positive semidefinite.
MaternParams draw_matern_params(int dim, std::span<const double> sigma2, double eta,
                                std::uint64_t seed);

/// Matern correlation M(h; nu, eta) = 2^(1-nu)/Gamma(nu) (eta h)^nu K_nu(eta h),
/// with M(0) = 1.
double matern_correlation(double h, double nu, double eta);

/// Assembles the (dim*T) x (dim*T) covariance with blocks
///   C_ii(s,t) = sigma_i^2 M(|s-t|; nu_i, eta)
///   C_ij(s,t) = rho_ij sigma_i sigma_j M(|s-t|; (nu_i+nu_j)/2, eta)
/// where rho_ij carries the Gamma-ratio colocated correlation.
/// Row v*T + k corresponds to variable v+1 at grid point k.
Matrix matern_covariance(const MaternParams& params, const StandardGrid& grid);

/// Gaussian sampler backed by a pivot-tolerant Cholesky factorization.
/// A positive semidefinite input factors exactly (a zero matrix yields zero
/// draws); an indefinite one is retried with diagonal jitter 1e-10 escalated
/// tenfold up to 1e-6 before NumericError is thrown. Each draw is generated
/// from its own (seed, draw index) substream, so draws do not depend on
/// evaluation order.
class NoiseSampler {
public:
    explicit NoiseSampler(const Matrix& cov);

    int dim() const { return factor_.rows; }
    double jitter_used() const { return jitter_; }
    std::vector<double> draw(std::uint64_t seed, std::uint64_t draw_index) const;

private:
    Matrix factor_;  // lower triangular
    double jitter_ = 0.0;
};

/// n_draws x n matrix of draws from N(0, cov); row i is draw i.
Matrix sample_noise(const Matrix& cov, int n_draws, std::uint64_t seed);

enum class Scenario { S1, S2, S3, S4, S5, S6 };
enum class Contamination { none, C1, C2, C3, C4, C5, C6 };

struct ScenarioSpec {
    Scenario id = Scenario::S1;
    int n_clusters = 3;
    int n_samples = 150;
    int grid_size = 50;
    int dim = 3;
    std::vector<double> sigma2;  // empty -> default_sigma2(dim)
    double eta = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ContaminationSpec {
    Contamination id = Contamination::none;
    double rate = 0.10;

    void validate() const;
};

struct SparsitySpec {
    double p_size = 0.0;   // fraction of curves receiving missing points
    double p_curve = 0.0;  // fraction of grid points removed per such curve

    void validate() const;
};

/// Per-(cluster, variable) randoms entering the scenario 1-3 means:
/// l ~ U(1, p) continuous and r ~ Bernoulli(1/2).
struct ScenarioAux {
    double l = 1.0;
    int r = 0;
};

/// Cluster mean m^(v)(t) for 1-based cluster k and variable v. Scenarios 2,
/// 5 and 6 are defined for k <= 3 and scenarios 2 and 4-6 for v <= 3;
/// anything else throws std::invalid_argument.
double scenario_mean(Scenario id, int cluster, int variable, double t,
                     const ScenarioAux& aux);

/// Contaminates one curve's grid-evaluated means in place.
/// variable_means[v-1] holds m^(v) on the grid. Randoms are addressed by
/// (seed, stream, curve, variable), one set per variable.
void contaminate_curve(std::vector<std::vector<double>>& variable_means,
                       Contamination id, std::span<const double> grid,
                       std::uint64_t seed, int curve);

/// Removes round(T_n * p_curve) jointly-missing time points from
/// ceil(N * p_size) uniformly chosen curves; at least 2 points always
/// survive per curve (a removal count leaving fewer throws).
std::vector<SparseSample> sparsify(std::vector<SparseSample> samples,
                                   const SparsitySpec& sparsity, std::uint64_t seed);

/// Simulated dataset with ground truth: labels are 1..K, or -1 for curves
/// whose mean was replaced by a contamination model.
struct LabeledDataset {
    static constexpr int outlier_label = -1;
    std::vector<SparseSample> samples;
    std::vector<int> labels;

    std::vector<int> outlier_indices() const;
};

/// Full generator: cluster means, ceil(N*rate) contaminated curves, one
/// Matern noise draw per curve, then sparsification. Deterministic in the
/// spec's master seed.
LabeledDataset generate(const ScenarioSpec& spec, const ContaminationSpec& contamination,
                        const SparsitySpec& sparsity);

}  // namespace etdclust::sim

#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "gsd/signal_model.hpp"
#include "gsd/spectral.hpp"

namespace gsd {

// Sampling proportions eta over vertices (a simplex element) together with
// the sample budget M, so M eta_i is the expected count at vertex i.
// budget = 0 encodes the no-data design.
struct Design {
  Design(Eigen::VectorXd eta_in, int budget_in);

  Eigen::VectorXd eta;
  int budget = 0;
};

struct PosteriorSummary {
  Eigen::VectorXd estimate;    // posterior mean of the band coefficients
  Eigen::MatrixXd covariance;  // posterior covariance (K x K, SPD)
};

// Raised when a least-squares design leaves the information matrix
// rank-deficient (condition number beyond 1e12).
class SingularDesignError : public std::runtime_error {
 public:
  explicit SingularDesignError(const std::string& what) : std::runtime_error(what) {}
};

// K x K Bayesian information matrix
//   sigma_w^{-2} sum_i w_i u_i u_i^T + diag(variances)^{-1}
// for expected per-vertex sample counts w (fractional counts allowed).
Eigen::MatrixXd bayesian_information_matrix(const SpectralBasis& basis, const GaussianPrior& prior,
                                            const NoiseModel& noise,
                                            const Eigen::VectorXd& expected_counts);

// Posterior covariance of the band coefficients under the design, i.e. the
// inverse of the information matrix at w = M eta. Always SPD for a full-rank
// prior.
Eigen::MatrixXd posterior_covariance(const SpectralBasis& basis, const GaussianPrior& prior,
                                     const NoiseModel& noise, const Design& design);

// Posterior mean and covariance given actual observations.
PosteriorSummary mmse_estimate(const SpectralBasis& basis, const GaussianPrior& prior,
                               const NoiseModel& noise, const SampleSet& samples,
                               const Eigen::VectorXd& observations);

struct LsSummary {
  Eigen::VectorXd estimate;
  Eigen::MatrixXd covariance;  // sigma_w^2 (V_K^T Psi^T Psi V_K)^{-1}
};

// Least-squares estimate via a rank-revealing pseudo-inverse (singular values
// below 1e-12 of the largest are treated as zero). Throws SingularDesignError
// when the sampled rows do not span the band.
LsSummary ls_estimate(const SpectralBasis& basis, const NoiseModel& noise,
                      const SampleSet& samples, const Eigen::VectorXd& observations);

// Vertex-domain normalized squared error of a reconstructed band signal:
// ||V_K coeffs - truth||^2 / ||truth||^2.
double nmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& estimate_coefficients,
            const SpectralBasis& basis);

}  // namespace gsd

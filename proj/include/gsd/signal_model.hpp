#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gsd/spectral.hpp"

namespace gsd {

// Gaussian prior over band coefficients: mean mu and diagonal covariance
// diag(variances). Variances must be strictly positive; values below 1e-12
// are clamped there to keep the covariance invertible.
struct GaussianPrior {
  GaussianPrior(Eigen::VectorXd mean_in, Eigen::VectorXd variances_in);

  int size() const { return static_cast<int>(mean.size()); }

  Eigen::VectorXd mean;
  Eigen::VectorXd variances;
};

// Zero-mean i.i.d. Gaussian observation noise with variance sigma_w^2.
struct NoiseModel {
  explicit NoiseModel(double variance_in);
  double variance;
};

// Integer sample allocation m over vertices; a vertex may be sampled more
// than once. The induced selection operator Psi has one 1 per row and
// Psi^T Psi = diag(m). The observation sequence lists vertices in ascending
// index order with repeats adjacent.
class SampleSet {
 public:
  explicit SampleSet(std::vector<int> counts);

  const std::vector<int>& counts() const { return counts_; }
  int num_vertices() const { return static_cast<int>(counts_.size()); }
  int budget() const { return budget_; }
  const std::vector<int>& sequence() const { return sequence_; }

  // Dense M x N selection matrix; intended for small instances and checks.
  Eigen::MatrixXd sampling_operator() const;

 private:
  std::vector<int> counts_;
  std::vector<int> sequence_;
  int budget_ = 0;
};

// One draw from N(mean, diag(variances)).
Eigen::VectorXd draw_coefficients(const GaussianPrior& prior, std::uint64_t seed);

// Bandlimited synthesis: V_K coefficients.
Eigen::VectorXd synthesize(const SpectralBasis& basis, const Eigen::VectorXd& coefficients);

// y = Psi signal + noise, with an independent noise draw per observation
// event, so repeated samples of one vertex carry fresh noise.
Eigen::VectorXd observe(const Eigen::VectorXd& signal, const SampleSet& samples,
                        const NoiseModel& noise, std::uint64_t seed);

}  // namespace gsd

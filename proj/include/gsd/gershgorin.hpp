#pragma once

#include <string>

#include <Eigen/Dense>

#include "gsd/signal_model.hpp"
#include "gsd/spectral.hpp"

namespace gsd {

// Which matrix a disc set was computed from: the designed operators
// G_nB / G_B, or the band Gram matrices at uniform proportions.
enum class DiscLabel { NonBayesianDesign, BayesianDesign, BandGram, WeightedBandGram };

std::string to_string(DiscLabel label);

// Gershgorin discs of a symmetric matrix: center_i is the diagonal entry,
// radius_i the off-diagonal absolute row sum. Every eigenvalue lies in the
// union of the intervals [center_i - radius_i, center_i + radius_i].
struct DiscSet {
  Eigen::VectorXd centers;
  Eigen::VectorXd radii;
  DiscLabel label = DiscLabel::NonBayesianDesign;

  int size() const { return static_cast<int>(centers.size()); }
};

DiscSet gershgorin_discs(const Eigen::MatrixXd& matrix, DiscLabel label);

// G_nB = M diag(eta)^{1/2} V_K V_K^T diag(eta)^{1/2}; its nonzero spectrum
// matches the prior-free information matrix up to the noise scale.
Eigen::MatrixXd nonbayesian_design_matrix(const SpectralBasis& basis, const Eigen::VectorXd& eta,
                                          int budget);

// G_B = M diag(eta)^{1/2} V_K Sigma V_K^T diag(eta)^{1/2} + sigma_w^2 I.
Eigen::MatrixXd bayesian_design_matrix(const SpectralBasis& basis, const GaussianPrior& prior,
                                       const NoiseModel& noise, const Eigen::VectorXd& eta,
                                       int budget);

DiscSet discs_nonbayesian(const SpectralBasis& basis, const Eigen::VectorXd& eta, int budget);
DiscSet discs_bayesian(const SpectralBasis& basis, const GaussianPrior& prior,
                       const NoiseModel& noise, const Eigen::VectorXd& eta, int budget);
// Discs of V_K V_K^T and V_K Sigma V_K^T, the design-independent reference.
DiscSet discs_band_gram(const SpectralBasis& basis);
DiscSet discs_weighted_band_gram(const SpectralBasis& basis, const GaussianPrior& prior);

struct ContainmentReport {
  bool all_contained = false;
  // Largest distance from an eigenvalue to the nearest disc; <= 0 when all
  // eigenvalues are covered.
  double max_violation = 0.0;
  Eigen::VectorXd eigenvalues;
};

ContainmentReport check_containment(const Eigen::MatrixXd& matrix, const DiscSet& discs);

struct EquivalenceReport {
  bool pass = false;
  double max_deviation = 0.0;
};

// The N x N design matrix and its K x K information-side counterpart share
// their nonzero (respectively non-shifted) spectrum: both are A A^T vs A^T A
// for the same factor. Compares descending eigenvalue lists; the trailing
// N - K eigenvalues must equal 0 (non-Bayesian) or sigma_w^2 (Bayesian).
EquivalenceReport nonzero_spectrum_equivalence(const SpectralBasis& basis,
                                               const Eigen::VectorXd& eta, int budget);
EquivalenceReport nonzero_spectrum_equivalence(const SpectralBasis& basis,
                                               const GaussianPrior& prior, const NoiseModel& noise,
                                               const Eigen::VectorXd& eta, int budget);

struct LogDetReport {
  bool pass = false;
  double lhs = 0.0;  // log det of the posterior information matrix
  double rhs = 0.0;  // prior/noise term plus sum of log lambda_i^B
};

// log det(Sigma_B)^{-1} = log det(sigma_w^{-2} Sigma_f^{-1})
//                         + sum_i log(lambda_i^B),
// with lambda^B the spectrum of M Sigma^{1/2} V_K^T diag(eta) V_K Sigma^{1/2}
// + sigma_w^2 I. Both sides are evaluated independently.
LogDetReport logdet_decomposition_check(const SpectralBasis& basis, const GaussianPrior& prior,
                                        const NoiseModel& noise, const Eigen::VectorXd& eta,
                                        int budget);

}  // namespace gsd

#include "gsd/gershgorin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsd/estimation.hpp"

namespace gsd {
namespace {

constexpr double kSpectrumTol = 1e-8;
constexpr double kLogDetTol = 1e-8;

Eigen::VectorXd checked_weights(const SpectralBasis& basis, const Eigen::VectorXd& eta,
                                int budget) {
  if (eta.size() != basis.size()) {
    throw std::invalid_argument("eta length does not match the graph size");
  }
  if (eta.minCoeff() < -1e-12) {
    throw std::invalid_argument("eta has negative entries");
  }
  if (budget < 0) {
    throw std::invalid_argument("budget must be nonnegative");
  }
  return (budget * eta).cwiseMax(0.0);
}

Eigen::VectorXd symmetric_spectrum_descending(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return solver.eigenvalues().reverse();
}

// Descending spectra of the N x N design matrix and its K x K counterpart;
// the K x K list is padded with `fill` (the deterministic trailing
// eigenvalue) before comparison.
EquivalenceReport compare_spectra(const Eigen::MatrixXd& large, const Eigen::MatrixXd& small,
                                  double fill) {
  const Eigen::VectorXd big = symmetric_spectrum_descending(large);
  const Eigen::VectorXd top = symmetric_spectrum_descending(small);
  EquivalenceReport report;
  for (int i = 0; i < big.size(); ++i) {
    const double expected = i < top.size() ? top(i) : fill;
    report.max_deviation = std::max(report.max_deviation, std::abs(big(i) - expected));
  }
  report.pass = report.max_deviation <= kSpectrumTol;
  return report;
}

}  // namespace

std::string to_string(DiscLabel label) {
  switch (label) {
    case DiscLabel::NonBayesianDesign:
      return "G_nB";
    case DiscLabel::BayesianDesign:
      return "G_B";
    case DiscLabel::BandGram:
      return "band-gram";
    case DiscLabel::WeightedBandGram:
      return "weighted-band-gram";
  }
  throw std::logic_error("unknown disc label");
}

DiscSet gershgorin_discs(const Eigen::MatrixXd& matrix, DiscLabel label) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("Gershgorin discs need a square matrix");
  }
  DiscSet discs;
  discs.label = label;
  discs.centers = matrix.diagonal();
  discs.radii = matrix.cwiseAbs().rowwise().sum() - matrix.diagonal().cwiseAbs();
  return discs;
}

Eigen::MatrixXd nonbayesian_design_matrix(const SpectralBasis& basis, const Eigen::VectorXd& eta,
                                          int budget) {
  const Eigen::VectorXd scale = checked_weights(basis, eta, budget).cwiseSqrt();
  const Eigen::MatrixXd rows = scale.asDiagonal() * basis.band_vectors();
  return rows * rows.transpose();
}

Eigen::MatrixXd bayesian_design_matrix(const SpectralBasis& basis, const GaussianPrior& prior,
                                       const NoiseModel& noise, const Eigen::VectorXd& eta,
                                       int budget) {
  const Eigen::VectorXd scale = checked_weights(basis, eta, budget).cwiseSqrt();
  const Eigen::MatrixXd rows = scale.asDiagonal() * basis.band_vectors() *
                               prior.variances.cwiseSqrt().asDiagonal();
  Eigen::MatrixXd g = rows * rows.transpose();
  g.diagonal().array() += noise.variance;
  return g;
}

DiscSet discs_nonbayesian(const SpectralBasis& basis, const Eigen::VectorXd& eta, int budget) {
  return gershgorin_discs(nonbayesian_design_matrix(basis, eta, budget),
                          DiscLabel::NonBayesianDesign);
}

DiscSet discs_bayesian(const SpectralBasis& basis, const GaussianPrior& prior,
                       const NoiseModel& noise, const Eigen::VectorXd& eta, int budget) {
  return gershgorin_discs(bayesian_design_matrix(basis, prior, noise, eta, budget),
                          DiscLabel::BayesianDesign);
}

DiscSet discs_band_gram(const SpectralBasis& basis) {
  const Eigen::MatrixXd& v = basis.band_vectors();
  return gershgorin_discs(v * v.transpose(), DiscLabel::BandGram);
}

DiscSet discs_weighted_band_gram(const SpectralBasis& basis, const GaussianPrior& prior) {
  const Eigen::MatrixXd rows = basis.band_vectors() * prior.variances.cwiseSqrt().asDiagonal();
  return gershgorin_discs(rows * rows.transpose(), DiscLabel::WeightedBandGram);
}

ContainmentReport check_containment(const Eigen::MatrixXd& matrix, const DiscSet& discs) {
  if (matrix.rows() != discs.size()) {
    throw std::invalid_argument("disc set does not match the matrix size");
  }
  ContainmentReport report;
  report.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(matrix).eigenvalues();
  // Slack absorbs eigensolver round-off relative to the matrix scale.
  const double slack = 1e-10 * std::max(1.0, matrix.cwiseAbs().maxCoeff());
  double worst = -std::numeric_limits<double>::infinity();
  for (int e = 0; e < report.eigenvalues.size(); ++e) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < discs.size(); ++i) {
      const double distance = std::abs(report.eigenvalues(e) - discs.centers(i)) - discs.radii(i);
      nearest = std::min(nearest, distance);
    }
    worst = std::max(worst, nearest);
  }
  report.max_violation = worst;
  report.all_contained = worst <= slack;
  return report;
}

EquivalenceReport nonzero_spectrum_equivalence(const SpectralBasis& basis,
                                               const Eigen::VectorXd& eta, int budget) {
  const Eigen::VectorXd w = checked_weights(basis, eta, budget);
  const Eigen::MatrixXd& v = basis.band_vectors();
  const Eigen::MatrixXd small = v.transpose() * w.asDiagonal() * v;
  return compare_spectra(nonbayesian_design_matrix(basis, eta, budget), small, 0.0);
}

EquivalenceReport nonzero_spectrum_equivalence(const SpectralBasis& basis,
                                               const GaussianPrior& prior, const NoiseModel& noise,
                                               const Eigen::VectorXd& eta, int budget) {
  const Eigen::VectorXd w = checked_weights(basis, eta, budget);
  const Eigen::VectorXd sigma_half = prior.variances.cwiseSqrt();
  const Eigen::MatrixXd& v = basis.band_vectors();
  Eigen::MatrixXd small = sigma_half.asDiagonal() * (v.transpose() * w.asDiagonal() * v) *
                          sigma_half.asDiagonal();
  small.diagonal().array() += noise.variance;
  return compare_spectra(bayesian_design_matrix(basis, prior, noise, eta, budget), small,
                         noise.variance);
}

LogDetReport logdet_decomposition_check(const SpectralBasis& basis, const GaussianPrior& prior,
                                        const NoiseModel& noise, const Eigen::VectorXd& eta,
                                        int budget) {
  const Eigen::MatrixXd info =
      bayesian_information_matrix(basis, prior, noise, checked_weights(basis, eta, budget));
  LogDetReport report;
  report.lhs =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(info).eigenvalues().array().log().sum();

  const Eigen::VectorXd sigma_half = prior.variances.cwiseSqrt();
  const Eigen::VectorXd w = checked_weights(basis, eta, budget);
  const Eigen::MatrixXd& v = basis.band_vectors();
  Eigen::MatrixXd shifted = sigma_half.asDiagonal() * (v.transpose() * w.asDiagonal() * v) *
                            sigma_half.asDiagonal();
  shifted.diagonal().array() += noise.variance;
  const Eigen::VectorXd lambda =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(shifted).eigenvalues();

  const int k = prior.size();
  const double prior_term =
      -k * std::log(noise.variance) - prior.variances.array().log().sum();
  report.rhs = prior_term + lambda.array().log().sum();
  report.pass = std::abs(report.lhs - report.rhs) <= kLogDetTol;
  return report;
}

}  // namespace gsd

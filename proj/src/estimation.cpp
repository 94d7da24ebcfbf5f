#include "gsd/estimation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsd {

namespace {
constexpr double kSimplexTol = 1e-12;
constexpr double kRankThreshold = 1e-12;  // relative to the largest singular value
}  // namespace

Design::Design(Eigen::VectorXd eta_in, int budget_in) : eta(std::move(eta_in)), budget(budget_in) {
  if (budget < 0) throw std::invalid_argument("design budget must be nonnegative");
  if (eta.size() == 0) throw std::invalid_argument("design needs at least one vertex");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (eta[i] < -kSimplexTol || eta[i] > 1.0 + kSimplexTol) {
      throw std::invalid_argument("design proportion out of [0, 1] at vertex " +
                                  std::to_string(i));
    }
    if (eta[i] < 0.0) eta[i] = 0.0;  // absorb rounding residue
    sum += eta[i];
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw std::invalid_argument("design proportions must sum to one");
  }
}

Eigen::MatrixXd bayesian_information_matrix(const SpectralBasis& basis, const GaussianPrior& prior,
                                            const NoiseModel& noise,
                                            const Eigen::VectorXd& expected_counts) {
  const Eigen::MatrixXd& bandvecs = basis.band_vectors();
  if (expected_counts.size() != bandvecs.rows()) {
    throw std::invalid_argument("expected counts length does not match vertex count");
  }
  if (prior.size() != basis.band_size()) {
    throw std::invalid_argument("prior size does not match band size");
  }
  // Form as A^T A with A = diag(sqrt(w / sigma^2)) V_K: symmetric by
  // construction and PSD to rounding.
  const Eigen::VectorXd scale = (expected_counts / noise.variance).cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd scaled = scale.asDiagonal() * bandvecs;
  Eigen::MatrixXd info = scaled.transpose() * scaled;
  info.diagonal() += prior.variances.cwiseInverse();
  return info;
}

Eigen::MatrixXd posterior_covariance(const SpectralBasis& basis, const GaussianPrior& prior,
                                     const NoiseModel& noise, const Design& design) {
  const Eigen::VectorXd weights = static_cast<double>(design.budget) * design.eta;
  const Eigen::MatrixXd info = bayesian_information_matrix(basis, prior, noise, weights);
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("posterior information matrix is not positive definite");
  }
  Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(info.rows(), info.cols()));
  return 0.5 * (cov + cov.transpose());
}

PosteriorSummary mmse_estimate(const SpectralBasis& basis, const GaussianPrior& prior,
                               const NoiseModel& noise, const SampleSet& samples,
                               const Eigen::VectorXd& observations) {
  if (samples.num_vertices() != basis.size()) {
    throw std::invalid_argument("sample set does not match basis size");
  }
  if (observations.size() != samples.budget()) {
    throw std::invalid_argument("observation length does not match sample budget");
  }
  Eigen::VectorXd counts(samples.num_vertices());
  for (int i = 0; i < samples.num_vertices(); ++i) counts[i] = samples.counts()[i];

  const Eigen::MatrixXd info = bayesian_information_matrix(basis, prior, noise, counts);
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("posterior information matrix is not positive definite");
  }

  // V_K^T Psi^T y accumulated by scattering observations onto their vertices.
  const Eigen::MatrixXd& bandvecs = basis.band_vectors();
  Eigen::VectorXd rhs = prior.mean.cwiseQuotient(prior.variances);
  const auto& sequence = samples.sequence();
  for (int r = 0; r < samples.budget(); ++r) {
    rhs += (observations[r] / noise.variance) * bandvecs.row(sequence[r]).transpose();
  }

  PosteriorSummary out;
  out.estimate = llt.solve(rhs);
  Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(info.rows(), info.cols()));
  out.covariance = 0.5 * (cov + cov.transpose());
  return out;
}

LsSummary ls_estimate(const SpectralBasis& basis, const NoiseModel& noise,
                      const SampleSet& samples, const Eigen::VectorXd& observations) {
  if (samples.num_vertices() != basis.size()) {
    throw std::invalid_argument("sample set does not match basis size");
  }
  if (observations.size() != samples.budget()) {
    throw std::invalid_argument("observation length does not match sample budget");
  }
  const int k = basis.band_size();
  const int m = samples.budget();
  if (m < k) {
    throw SingularDesignError("sample budget " + std::to_string(m) + " cannot span " +
                              std::to_string(k) + " band dimensions");
  }
  Eigen::MatrixXd sampled_rows(m, k);
  const auto& sequence = samples.sequence();
  for (int r = 0; r < m; ++r) sampled_rows.row(r) = basis.band_vectors().row(sequence[r]);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sampled_rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const double threshold = kRankThreshold * smax;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > threshold && sv[i] > 0.0) ++rank;
  }
  if (rank < k) {
    throw SingularDesignError("sampled rows span only " + std::to_string(rank) + " of " +
                              std::to_string(k) + " band dimensions; the LS information matrix "
                              "is singular");
  }

  Eigen::VectorXd inv_sv = sv.cwiseInverse();
  LsSummary out;
  out.estimate = svd.matrixV() * inv_sv.asDiagonal() * (svd.matrixU().transpose() * observations);
  out.covariance = noise.variance *
                   (svd.matrixV() * inv_sv.array().square().matrix().asDiagonal() *
                    svd.matrixV().transpose());
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

double nmse(const Eigen::VectorXd& truth, const Eigen::VectorXd& estimate_coefficients,
            const SpectralBasis& basis) {
  const double truth_norm2 = truth.squaredNorm();
  if (!(truth_norm2 > 0.0)) throw std::invalid_argument("truth signal has zero norm");
  const Eigen::VectorXd reconstruction = synthesize(basis, estimate_coefficients);
  return (reconstruction - truth).squaredNorm() / truth_norm2;
}

}  // namespace gsd

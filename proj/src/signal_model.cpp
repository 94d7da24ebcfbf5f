#include "gsd/signal_model.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>

#include "gsd/rng.hpp"

namespace gsd {

namespace {
constexpr double kVarianceFloor = 1e-12;
}

GaussianPrior::GaussianPrior(Eigen::VectorXd mean_in, Eigen::VectorXd variances_in)
    : mean(std::move(mean_in)), variances(std::move(variances_in)) {
  if (mean.size() != variances.size()) {
    throw std::invalid_argument("prior mean and variances must have equal length");
  }
  if (mean.size() == 0) throw std::invalid_argument("prior must have at least one coefficient");
  bool clamped = false;
  for (Eigen::Index k = 0; k < variances.size(); ++k) {
    if (!(variances[k] > 0.0)) {
      throw std::invalid_argument("prior variances must be strictly positive");
    }
    if (variances[k] < kVarianceFloor) {
      variances[k] = kVarianceFloor;
      clamped = true;
    }
  }
  if (clamped) {
    std::cerr << "warning: prior variance below 1e-12 clamped to keep the covariance full-rank\n";
  }
}

NoiseModel::NoiseModel(double variance_in) : variance(variance_in) {
  if (!(variance > 0.0)) throw std::invalid_argument("noise variance must be positive");
}

SampleSet::SampleSet(std::vector<int> counts) : counts_(std::move(counts)) {
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) {
      throw std::invalid_argument("sample count at vertex " + std::to_string(i) + " is negative");
    }
    budget_ += counts_[i];
    for (int r = 0; r < counts_[i]; ++r) sequence_.push_back(static_cast<int>(i));
  }
}

Eigen::MatrixXd SampleSet::sampling_operator() const {
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(budget_, num_vertices());
  for (int r = 0; r < budget_; ++r) psi(r, sequence_[r]) = 1.0;
  return psi;
}

Eigen::VectorXd draw_coefficients(const GaussianPrior& prior, std::uint64_t seed) {
  auto engine = make_engine(seed);
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  Eigen::VectorXd sample(prior.size());
  for (Eigen::Index k = 0; k < sample.size(); ++k) {
    sample[k] = prior.mean[k] + std::sqrt(prior.variances[k]) * standard_normal(engine);
  }
  return sample;
}

Eigen::VectorXd synthesize(const SpectralBasis& basis, const Eigen::VectorXd& coefficients) {
  if (coefficients.size() != basis.band_size()) {
    throw std::invalid_argument("coefficient length does not match band size");
  }
  return basis.band_vectors() * coefficients;
}

Eigen::VectorXd observe(const Eigen::VectorXd& signal, const SampleSet& samples,
                        const NoiseModel& noise, std::uint64_t seed) {
  if (signal.size() != samples.num_vertices()) {
    throw std::invalid_argument("signal length does not match sample set");
  }
  auto engine = make_engine(seed);
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  const double sigma = std::sqrt(noise.variance);
  Eigen::VectorXd y(samples.budget());
  const auto& sequence = samples.sequence();
  for (int r = 0; r < samples.budget(); ++r) {
    y[r] = signal[sequence[r]] + sigma * standard_normal(engine);
  }
  return y;
}

}  // namespace gsd

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gsd/design.hpp"
#include "gsd/estimation.hpp"
#include "gsd/graph.hpp"
#include "gsd/rng.hpp"
#include "gsd/signal_model.hpp"
#include "gsd/spectral.hpp"

namespace fixtures {

// Placement seed of the 64-vertex reference instance used throughout the
// tests. The coherence argmax vertices differ between the Bayesian and
// non-Bayesian rules on this instance, which several tests rely on.
inline constexpr std::uint64_t kReferenceSeed = 7;

struct Instance {
  gsd::Graph graph;
  gsd::SpectralBasis basis;
  gsd::GaussianPrior prior;
  gsd::NoiseModel noise;
  int budget;
};

inline Instance reference_instance() {
  gsd::Graph graph = gsd::generate_rgg(64, 0.6, 0.3, kReferenceSeed);
  gsd::SpectralBasis basis =
      gsd::spectral_decompose(gsd::build_laplacian(graph)).with_band({9, 19, 29});
  Eigen::VectorXd mean = Eigen::VectorXd::Ones(3);
  Eigen::VectorXd variances(3);
  variances << 1.0, 0.5, 0.1;
  return Instance{std::move(graph), std::move(basis),
                  gsd::GaussianPrior(mean, variances), gsd::NoiseModel(0.5), 10};
}

inline gsd::DesignProblem reference_problem(
    const Instance& inst, gsd::DesignObjective objective = gsd::DesignObjective::U1) {
  gsd::DesignProblem problem{inst.basis, inst.prior, inst.noise};
  problem.budget = inst.budget;
  problem.objective = objective;
  return problem;
}

// Small random instance on a connected geometric graph. The radius is large
// enough that connectivity holds for every seed used by the tests.
inline Instance random_instance(std::uint64_t seed, int max_n = 12, int max_k = 4) {
  std::mt19937_64 engine(gsd::derive_seed(seed, gsd::SeedPurpose::Instance, 0));
  std::uniform_int_distribution<int> n_dist(std::min(6, max_n), max_n);
  const int n = n_dist(engine);
  gsd::Graph graph = gsd::generate_rgg(n, 1.5, 0.75, engine());

  std::uniform_int_distribution<int> k_dist(1, std::min(max_k, n - 1));
  const int k = k_dist(engine);
  std::set<int> band_set;
  std::uniform_int_distribution<int> index_dist(0, n - 1);
  while (static_cast<int>(band_set.size()) < k) band_set.insert(index_dist(engine));
  std::vector<int> band(band_set.begin(), band_set.end());

  gsd::SpectralBasis basis =
      gsd::spectral_decompose(gsd::build_laplacian(graph)).with_band(band);

  std::normal_distribution<double> mean_dist(0.0, 1.0);
  std::uniform_real_distribution<double> var_dist(0.1, 2.0);
  Eigen::VectorXd mean(k), variances(k);
  for (int i = 0; i < k; ++i) {
    mean(i) = mean_dist(engine);
    variances(i) = var_dist(engine);
  }
  std::uniform_real_distribution<double> noise_dist(0.1, 1.0);
  std::uniform_int_distribution<int> budget_dist(k, 12);
  return Instance{std::move(graph), std::move(basis),
                  gsd::GaussianPrior(mean, variances),
                  gsd::NoiseModel(noise_dist(engine)), budget_dist(engine)};
}

inline Eigen::VectorXd random_simplex(int n, std::mt19937_64& engine) {
  std::exponential_distribution<double> exp_dist(1.0);
  Eigen::VectorXd eta(n);
  for (int i = 0; i < n; ++i) eta(i) = exp_dist(engine);
  return eta / eta.sum();
}

inline std::vector<int> random_counts(int n, int budget, std::mt19937_64& engine) {
  std::uniform_int_distribution<int> vertex(0, n - 1);
  std::vector<int> counts(n, 0);
  for (int draw = 0; draw < budget; ++draw) ++counts[vertex(engine)];
  return counts;
}

inline Eigen::VectorXd counts_to_eta(const std::vector<int>& counts) {
  Eigen::VectorXd eta(counts.size());
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += counts[i];
  for (std::size_t i = 0; i < counts.size(); ++i) eta(i) = counts[i] / total;
  return eta;
}

// Dense sampling matrix with one row per observation; row order follows
// vertex order with repetitions, matching the observation layout.
inline Eigen::MatrixXd sampling_matrix(const gsd::SampleSet& samples, int n) {
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(samples.budget(), n);
  int row = 0;
  for (int vertex = 0; vertex < n; ++vertex) {
    for (int repeat = 0; repeat < samples.counts()[vertex]; ++repeat) {
      psi(row++, vertex) = 1.0;
    }
  }
  return psi;
}

// Information matrix assembled from scratch, independently of the library.
inline Eigen::MatrixXd oracle_information(const gsd::SpectralBasis& basis,
                                          const gsd::GaussianPrior& prior,
                                          const gsd::NoiseModel& noise,
                                          const Eigen::VectorXd& weights) {
  const Eigen::MatrixXd v = basis.band_vectors();
  const int k = static_cast<int>(v.cols());
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < v.rows(); ++i) {
    info += weights(i) / noise.variance * v.row(i).transpose() * v.row(i);
  }
  for (int j = 0; j < k; ++j) info(j, j) += 1.0 / prior.variances(j);
  return info;
}

// Basis built directly from an explicit orthonormal eigenvector matrix;
// bypasses any graph so synthetic spectra can be tested in isolation.
inline gsd::SpectralBasis identity_basis(int n, const std::vector<int>& band) {
  Eigen::VectorXd eigenvalues = Eigen::VectorXd::LinSpaced(n, 0.0, double(n - 1));
  return gsd::SpectralBasis(eigenvalues, Eigen::MatrixXd::Identity(n, n)).with_band(band);
}

}  // namespace fixtures

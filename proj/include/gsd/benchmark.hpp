#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsd/design.hpp"
#include "gsd/graph.hpp"

namespace gsd {

enum class Method {
  RelaxationU1,
  RelaxationU2,
  BayesCoherence,
  NbCoherence,
  Greedy,
  Uniform,
};

Method parse_method(const std::string& name);
std::string to_string(Method method);
// Bayesian methods score with the MMSE estimator, non-Bayesian with LS;
// uniform is scored both ways to separate the prior's effect from the
// design's.
bool is_bayesian(Method method);
const std::vector<Method>& all_methods();

struct BenchmarkConfig {
  // Graph source: a file path, or RGG parameters when the path is empty.
  std::string graph_file;
  int rgg_n = 64;
  double rgg_radius = 0.6;
  double rgg_bandwidth = 0.3;
  std::uint64_t rgg_seed = 0;

  std::vector<int> band;
  Eigen::VectorXd mean;
  Eigen::VectorXd variances;
  std::vector<double> noise_grid = {0.01, 0.05, 0.1, 0.5, 1.0, 2.0};
  int budget = 10;
  std::vector<Method> methods = all_methods();
  int trials = 2000;
  std::uint64_t seed = 0;
  double solver_tol = 1e-8;
  int solver_max_iters = 5000;
};

BenchmarkConfig read_benchmark_config(std::istream& in);
BenchmarkConfig read_benchmark_config_file(const std::string& path);

struct BenchmarkRow {
  double noise_variance = 0.0;
  Method method = Method::Uniform;
  bool mmse = false;  // estimator used for this row
  double objective = 0.0;
  int trials = 0;
  int singular = 0;  // LS trials skipped for rank deficiency
  double nmse_mean = 0.0;
  double nmse_std = 0.0;
};

struct BenchmarkResult {
  BenchmarkConfig config;
  std::vector<BenchmarkRow> rows;
};

Graph load_benchmark_graph(const BenchmarkConfig& config);

// One design per (noise, method) cell, then `trials` Monte Carlo trials.
// Per-trial seeds derive from the master seed and the trial index alone, so
// every cell sees the same truths and coupled noise (scaled by sigma_w) and
// results do not depend on cell order.
BenchmarkResult run_benchmark(const BenchmarkConfig& config);

void write_benchmark_table(std::ostream& out, const BenchmarkResult& result);
void write_benchmark_json(std::ostream& out, const BenchmarkResult& result);

}  // namespace gsd

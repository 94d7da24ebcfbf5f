#include "gsd/benchmark.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "gsd/estimation.hpp"
#include "gsd/rng.hpp"
#include "gsd/serialization.hpp"
#include "gsd/signal_model.hpp"
#include "gsd/spectral.hpp"

namespace gsd {
namespace {

Eigen::VectorXd to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

struct CellDesign {
  Eigen::VectorXd eta;
  double objective = 0.0;
  // Greedy emits integer counts directly; other methods quantize per trial.
  bool fixed_counts = false;
  std::vector<int> counts;
};

CellDesign design_for_cell(const SpectralBasis& basis, const GaussianPrior& prior,
                           const NoiseModel& noise, const BenchmarkConfig& config,
                           Method method) {
  DesignProblem problem{basis, prior, noise, config.budget, DesignObjective::U1, std::nullopt};
  SolverOptions options;
  options.tol = config.solver_tol;
  options.max_iters = config.solver_max_iters;

  CellDesign cell;
  switch (method) {
    case Method::RelaxationU1: {
      const SolverReport report = solve_relaxation(problem, options);
      cell.eta = report.eta;
      cell.objective = report.objective;
      return cell;
    }
    case Method::RelaxationU2: {
      problem.objective = DesignObjective::U2;
      const SolverReport report = solve_relaxation(problem, options);
      cell.eta = report.eta;
      cell.objective = report.objective;
      return cell;
    }
    case Method::BayesCoherence:
      cell.eta = bayesian_coherence_design(basis, prior);
      break;
    case Method::NbCoherence:
      cell.eta = nonbayesian_coherence_design(basis);
      break;
    case Method::Greedy: {
      const SampleSet samples = greedy_design(problem);
      cell.fixed_counts = true;
      cell.counts = samples.counts();
      Eigen::VectorXd eta(basis.size());
      for (int i = 0; i < basis.size(); ++i) eta[i] = cell.counts[i];
      cell.eta = eta / eta.sum();
      break;
    }
    case Method::Uniform:
      cell.eta = uniform_design(basis.size());
      break;
  }
  cell.objective = u1_value(problem, cell.eta);
  return cell;
}

}  // namespace

Method parse_method(const std::string& name) {
  for (Method method : all_methods()) {
    if (to_string(method) == name) return method;
  }
  throw std::invalid_argument("unknown method: " + name);
}

std::string to_string(Method method) {
  switch (method) {
    case Method::RelaxationU1:
      return "relaxation-u1";
    case Method::RelaxationU2:
      return "relaxation-u2";
    case Method::BayesCoherence:
      return "bayes-coherence";
    case Method::NbCoherence:
      return "nb-coherence";
    case Method::Greedy:
      return "greedy";
    case Method::Uniform:
      return "uniform";
  }
  throw std::logic_error("unknown method");
}

bool is_bayesian(Method method) {
  switch (method) {
    case Method::RelaxationU1:
    case Method::RelaxationU2:
    case Method::BayesCoherence:
    case Method::Greedy:
      return true;
    case Method::NbCoherence:
    case Method::Uniform:
      return false;
  }
  throw std::logic_error("unknown method");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {
      Method::RelaxationU1, Method::RelaxationU2, Method::BayesCoherence,
      Method::NbCoherence,  Method::Greedy,       Method::Uniform,
  };
  return methods;
}

BenchmarkConfig read_benchmark_config(std::istream& in) {
  const KeyValues kv = read_key_values(in);
  BenchmarkConfig config;
  config.seed = parse_seed(kv.get_or("seed", "0"));
  config.graph_file = kv.get_or("graph_file", "");
  if (config.graph_file.empty()) {
    if (kv.has("rgg_n")) config.rgg_n = static_cast<int>(parse_integer(kv.get("rgg_n")));
    if (kv.has("rgg_radius")) config.rgg_radius = parse_real(kv.get("rgg_radius"));
    config.rgg_bandwidth = kv.has("rgg_bandwidth") ? parse_real(kv.get("rgg_bandwidth"))
                                                   : config.rgg_radius / 2.0;
    config.rgg_seed = kv.has("rgg_seed") ? parse_seed(kv.get("rgg_seed")) : config.seed;
  }
  config.band = parse_int_list(kv.get("band"));
  config.mean = to_vector(parse_real_list(kv.get("mean")));
  config.variances = to_vector(parse_real_list(kv.get("variances")));
  if (kv.has("noise_grid")) config.noise_grid = parse_real_list(kv.get("noise_grid"));
  if (kv.has("budget")) config.budget = static_cast<int>(parse_integer(kv.get("budget")));
  if (kv.has("methods")) {
    config.methods.clear();
    for (const std::string& name : parse_name_list(kv.get("methods"))) {
      config.methods.push_back(parse_method(name));
    }
  }
  config.trials = static_cast<int>(parse_integer(kv.get_or("trials", "2000")));
  config.solver_tol = parse_real(kv.get_or("solver_tol", "1e-8"));
  config.solver_max_iters =
      static_cast<int>(parse_integer(kv.get_or("solver_max_iters", "5000")));

  if (config.trials < 1) throw std::runtime_error("trials must be at least 1");
  if (config.budget < 1) throw std::runtime_error("budget must be at least 1");
  if (config.methods.empty()) throw std::runtime_error("methods must be nonempty");
  for (double v : config.noise_grid) {
    if (!(v > 0.0)) throw std::runtime_error("noise grid values must be positive");
  }
  return config;
}

BenchmarkConfig read_benchmark_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return read_benchmark_config(in);
}

Graph load_benchmark_graph(const BenchmarkConfig& config) {
  if (!config.graph_file.empty()) return read_graph_file(config.graph_file);
  return generate_rgg(config.rgg_n, config.rgg_radius, config.rgg_bandwidth, config.rgg_seed);
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  const Graph graph = load_benchmark_graph(config);
  const SpectralBasis basis =
      spectral_decompose(build_laplacian(graph)).with_band(config.band);
  const GaussianPrior prior(config.mean, config.variances);

  BenchmarkResult result;
  result.config = config;
  for (double noise_variance : config.noise_grid) {
    const NoiseModel noise(noise_variance);
    for (Method method : config.methods) {
      const CellDesign cell = design_for_cell(basis, prior, noise, config, method);

      std::vector<bool> estimators;  // true = MMSE
      if (method == Method::Uniform) {
        estimators = {true, false};
      } else {
        estimators = {is_bayesian(method)};
      }
      for (bool mmse : estimators) {
        BenchmarkRow row;
        row.noise_variance = noise_variance;
        row.method = method;
        row.mmse = mmse;
        row.objective = cell.objective;
        row.trials = config.trials;

        double sum = 0.0;
        double sum_sq = 0.0;
        int ok = 0;
        for (int trial = 0; trial < config.trials; ++trial) {
          const Eigen::VectorXd coefficients = draw_coefficients(
              prior, derive_seed(config.seed, SeedPurpose::Coefficients, trial));
          const Eigen::VectorXd signal = synthesize(basis, coefficients);
          const SampleSet samples =
              cell.fixed_counts
                  ? SampleSet(cell.counts)
                  : quantize_design(Design(cell.eta, config.budget),
                                    derive_seed(config.seed, SeedPurpose::Instance, trial));
          const Eigen::VectorXd observations = observe(
              signal, samples, noise, derive_seed(config.seed, SeedPurpose::ObservationNoise, trial));

          Eigen::VectorXd estimate;
          if (mmse) {
            estimate = mmse_estimate(basis, prior, noise, samples, observations).estimate;
          } else {
            try {
              estimate = ls_estimate(basis, noise, samples, observations).estimate;
            } catch (const SingularDesignError&) {
              ++row.singular;
              continue;
            }
          }
          const double error = nmse(signal, estimate, basis);
          sum += error;
          sum_sq += error * error;
          ++ok;
        }
        if (ok > 0) {
          row.nmse_mean = sum / ok;
          const double variance =
              ok > 1 ? std::max(0.0, (sum_sq - sum * sum / ok) / (ok - 1)) : 0.0;
          row.nmse_std = std::sqrt(variance);
        } else {
          row.nmse_mean = std::numeric_limits<double>::quiet_NaN();
          row.nmse_std = std::numeric_limits<double>::quiet_NaN();
        }
        result.rows.push_back(row);
      }
    }
  }
  return result;
}

void write_benchmark_table(std::ostream& out, const BenchmarkResult& result) {
  const BenchmarkConfig& config = result.config;
  out << "# gsdesign benchmark\n";
  if (!config.graph_file.empty()) {
    out << "# graph = " << config.graph_file << "\n";
  } else {
    out << "# rgg: n = " << config.rgg_n << ", radius = " << format_real(config.rgg_radius)
        << ", bandwidth = " << format_real(config.rgg_bandwidth) << ", seed = " << config.rgg_seed
        << "\n";
  }
  out << "# band = " << format_int_list(config.band) << "\n";
  out << "# mean = " << format_real_list(config.mean) << "\n";
  out << "# variances = " << format_real_list(config.variances) << "\n";
  out << "# budget = " << config.budget << ", trials = " << config.trials
      << ", seed = " << config.seed << "\n";
  out << "# solver_tol = " << format_real(config.solver_tol)
      << ", solver_max_iters = " << config.solver_max_iters << "\n";
  out << "noise_variance method estimator objective trials singular nmse_mean nmse_std\n";
  for (const BenchmarkRow& row : result.rows) {
    out << format_real(row.noise_variance) << " " << to_string(row.method) << " "
        << (row.mmse ? "mmse" : "ls") << " " << format_real(row.objective) << " " << row.trials
        << " " << row.singular << " " << format_real(row.nmse_mean) << " "
        << format_real(row.nmse_std) << "\n";
  }
}

void write_benchmark_json(std::ostream& out, const BenchmarkResult& result) {
  const BenchmarkConfig& config = result.config;
  nlohmann::json doc;
  nlohmann::json graph;
  if (!config.graph_file.empty()) {
    graph["file"] = config.graph_file;
  } else {
    graph["rgg"] = {{"n", config.rgg_n},
                    {"radius", config.rgg_radius},
                    {"bandwidth", config.rgg_bandwidth},
                    {"seed", config.rgg_seed}};
  }
  doc["graph"] = graph;
  doc["band"] = config.band;
  doc["mean"] = std::vector<double>(config.mean.data(), config.mean.data() + config.mean.size());
  doc["variances"] = std::vector<double>(config.variances.data(),
                                         config.variances.data() + config.variances.size());
  doc["noise_grid"] = config.noise_grid;
  doc["budget"] = config.budget;
  doc["trials"] = config.trials;
  doc["seed"] = config.seed;
  doc["solver_tol"] = config.solver_tol;
  doc["solver_max_iters"] = config.solver_max_iters;
  std::vector<std::string> method_names;
  for (Method method : config.methods) method_names.push_back(to_string(method));
  doc["methods"] = method_names;

  nlohmann::json rows = nlohmann::json::array();
  for (const BenchmarkRow& row : result.rows) {
    rows.push_back({{"noise_variance", row.noise_variance},
                    {"method", to_string(row.method)},
                    {"estimator", row.mmse ? "mmse" : "ls"},
                    {"objective", row.objective},
                    {"trials", row.trials},
                    {"singular", row.singular},
                    {"nmse_mean", row.nmse_mean},
                    {"nmse_std", row.nmse_std}});
  }
  doc["rows"] = rows;
  out << doc.dump(2) << "\n";
}

}  // namespace gsd

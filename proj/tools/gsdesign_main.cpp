#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsd/benchmark.hpp"
#include "gsd/design.hpp"
#include "gsd/estimation.hpp"
#include "gsd/gershgorin.hpp"
#include "gsd/graph.hpp"
#include "gsd/rng.hpp"
#include "gsd/serialization.hpp"
#include "gsd/signal_model.hpp"
#include "gsd/spectral.hpp"

namespace {

struct ModelInputs {
  gsd::SpectralBasis basis;
  gsd::GaussianPrior prior;
  gsd::NoiseModel noise;
};

// Band and noise variance come from the prior file unless overridden.
ModelInputs load_model(const std::string& graph_path, const std::string& prior_path,
                       const std::vector<int>& band_override, double noise_override) {
  const gsd::Graph graph = gsd::read_graph_file(graph_path);
  const gsd::PriorSpec spec = gsd::read_prior_file(prior_path);
  const std::vector<int>& band = band_override.empty() ? spec.band : band_override;
  gsd::SpectralBasis basis =
      gsd::spectral_decompose(gsd::build_laplacian(graph)).with_band(band);
  const double noise_variance = noise_override > 0 ? noise_override : spec.noise_variance;
  return ModelInputs{std::move(basis), gsd::GaussianPrior(spec.mean, spec.variances),
                     gsd::NoiseModel(noise_variance)};
}

void run_gen_graph(int n, double radius, double bandwidth, std::uint64_t seed,
                   const std::string& out) {
  if (bandwidth <= 0) bandwidth = radius / 2.0;
  const gsd::Graph graph = gsd::generate_rgg(n, radius, bandwidth, seed);
  gsd::write_graph_file(out, graph);
  std::cout << "wrote " << out << "\n";
}

void run_design(const std::string& graph_path, const std::string& prior_path,
                const std::vector<int>& band, double noise_override, int budget,
                const std::string& method_name, std::uint64_t seed, double tol, int max_iters,
                const std::string& out) {
  const ModelInputs model = load_model(graph_path, prior_path, band, noise_override);
  const gsd::Method method = gsd::parse_method(method_name);

  gsd::DesignProblem problem{model.basis, model.prior, model.noise, budget,
                             gsd::DesignObjective::U1, std::nullopt};
  gsd::DesignRecord record;
  record.method = method_name;
  record.seed = seed;

  if (method == gsd::Method::RelaxationU1 || method == gsd::Method::RelaxationU2) {
    if (method == gsd::Method::RelaxationU2) problem.objective = gsd::DesignObjective::U2;
    gsd::SolverOptions options;
    options.tol = tol;
    options.max_iters = max_iters;
    const gsd::SolverReport report = gsd::solve_relaxation(problem, options);
    record.eta = report.eta;
    record.objective = report.objective;
    record.gap = report.duality_gap;
    record.counts = gsd::quantize_design(gsd::Design(record.eta, budget), seed).counts();
  } else if (method == gsd::Method::Greedy) {
    const gsd::SampleSet samples = gsd::greedy_design(problem);
    record.counts = samples.counts();
    Eigen::VectorXd eta(model.basis.size());
    for (int i = 0; i < model.basis.size(); ++i) eta[i] = record.counts[i];
    record.eta = eta / eta.sum();
    record.objective = gsd::u1_value(problem, record.eta);
  } else {
    if (method == gsd::Method::BayesCoherence) {
      record.eta = gsd::bayesian_coherence_design(model.basis, model.prior);
    } else if (method == gsd::Method::NbCoherence) {
      record.eta = gsd::nonbayesian_coherence_design(model.basis);
    } else {
      record.eta = gsd::uniform_design(model.basis.size());
    }
    record.objective = gsd::u1_value(problem, record.eta);
    record.counts = gsd::quantize_design(gsd::Design(record.eta, budget), seed).counts();
  }
  gsd::write_design_file(out, record);
  std::cout << "wrote " << out << "\n";
}

void run_estimate(const std::string& graph_path, const std::string& prior_path,
                  const std::string& design_path, const std::vector<int>& band,
                  double noise_override, const std::string& estimator, std::uint64_t seed,
                  const std::string& out) {
  const ModelInputs model = load_model(graph_path, prior_path, band, noise_override);
  const gsd::DesignRecord design = gsd::read_design_file(design_path);
  const gsd::SampleSet samples(design.counts);

  const Eigen::VectorXd truth = gsd::draw_coefficients(
      model.prior, gsd::derive_seed(seed, gsd::SeedPurpose::Coefficients, 0));
  const Eigen::VectorXd signal = gsd::synthesize(model.basis, truth);
  const Eigen::VectorXd observations =
      gsd::observe(signal, samples, model.noise,
                   gsd::derive_seed(seed, gsd::SeedPurpose::ObservationNoise, 0));

  Eigen::VectorXd estimate;
  Eigen::VectorXd covariance_diag;
  if (estimator == "mmse") {
    const gsd::PosteriorSummary posterior =
        gsd::mmse_estimate(model.basis, model.prior, model.noise, samples, observations);
    estimate = posterior.estimate;
    covariance_diag = posterior.covariance.diagonal();
  } else {
    const gsd::LsSummary summary =
        gsd::ls_estimate(model.basis, model.noise, samples, observations);
    estimate = summary.estimate;
    covariance_diag = summary.covariance.diagonal();
  }

  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot open " + out + " for writing");
  file << "method = " << estimator << "\n";
  file << "seed = " << seed << "\n";
  file << "design = " << design.method << "\n";
  file << "truth = " << gsd::format_real_list(truth) << "\n";
  file << "estimate = " << gsd::format_real_list(estimate) << "\n";
  file << "covariance_diag = " << gsd::format_real_list(covariance_diag) << "\n";
  file << "nmse = " << gsd::format_real(gsd::nmse(signal, estimate, model.basis)) << "\n";
  file.flush();
  if (!file) throw std::runtime_error("failed while writing " + out);
  std::cout << "wrote " << out << "\n";
}

void run_discs(const std::string& graph_path, const std::string& prior_path,
               const std::string& design_path, const std::vector<int>& band,
               double noise_override, int budget_override, const std::string& out) {
  const ModelInputs model = load_model(graph_path, prior_path, band, noise_override);
  const gsd::DesignRecord design = gsd::read_design_file(design_path);
  int budget = budget_override;
  if (budget <= 0) {
    budget = 0;
    for (int c : design.counts) budget += c;
  }

  const Eigen::MatrixXd g_nb = gsd::nonbayesian_design_matrix(model.basis, design.eta, budget);
  const Eigen::MatrixXd g_b =
      gsd::bayesian_design_matrix(model.basis, model.prior, model.noise, design.eta, budget);
  const Eigen::MatrixXd& v = model.basis.band_vectors();
  const Eigen::MatrixXd gram = v * v.transpose();
  const Eigen::MatrixXd weighted =
      v * model.prior.variances.asDiagonal() * v.transpose();

  const std::vector<gsd::DiscSet> sets = {
      gsd::gershgorin_discs(g_nb, gsd::DiscLabel::NonBayesianDesign),
      gsd::gershgorin_discs(g_b, gsd::DiscLabel::BayesianDesign),
      gsd::gershgorin_discs(gram, gsd::DiscLabel::BandGram),
      gsd::gershgorin_discs(weighted, gsd::DiscLabel::WeightedBandGram),
  };
  const std::vector<gsd::ContainmentReport> reports = {
      gsd::check_containment(g_nb, sets[0]),
      gsd::check_containment(g_b, sets[1]),
      gsd::check_containment(gram, sets[2]),
      gsd::check_containment(weighted, sets[3]),
  };

  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot open " + out + " for writing");
  gsd::write_disc_table(file, sets, reports);
  file.flush();
  if (!file) throw std::runtime_error("failed while writing " + out);
  std::cout << "wrote " << out << "\n";
}

void run_benchmark_cmd(const std::string& config_path, int trials_override,
                       std::optional<std::uint64_t> seed_override, const std::string& out) {
  gsd::BenchmarkConfig config = gsd::read_benchmark_config_file(config_path);
  if (trials_override > 0) config.trials = trials_override;
  if (seed_override) config.seed = *seed_override;
  const gsd::BenchmarkResult result = gsd::run_benchmark(config);

  std::ofstream table(out);
  if (!table) throw std::runtime_error("cannot open " + out + " for writing");
  gsd::write_benchmark_table(table, result);
  table.flush();
  if (!table) throw std::runtime_error("failed while writing " + out);

  const std::string json_path = out + ".json";
  std::ofstream json(json_path);
  if (!json) throw std::runtime_error("cannot open " + json_path + " for writing");
  gsd::write_benchmark_json(json, result);
  json.flush();
  if (!json) throw std::runtime_error("failed while writing " + json_path);
  std::cout << "wrote " << out << "\n";
  std::cout << "wrote " << json_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-set design for bandlimited graph signals under a Gaussian prior"};
  app.require_subcommand(1);

  const std::vector<std::string> method_names = {"relaxation-u1", "relaxation-u2",
                                                 "bayes-coherence", "nb-coherence",
                                                 "greedy", "uniform"};

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "Generate a random geometric graph");
  int gen_n = 64;
  double gen_radius = 0.6;
  double gen_bandwidth = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required()->check(CLI::Range(2, 100000));
  gen->add_option("--radius", gen_radius, "connection radius")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--bandwidth", gen_bandwidth, "Gaussian kernel bandwidth (default radius/2)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "placement seed");
  gen->add_option("--out", gen_out, "output graph file")->required();

  // common design/estimate/discs inputs
  std::string graph_path, prior_path, design_path, out_path, method_name;
  std::vector<int> band;
  double noise_override = 0.0;
  std::uint64_t seed = 0;

  // design
  auto* design = app.add_subcommand("design", "Compute a sampling design");
  int budget = 10;
  double tol = 1e-8;
  int max_iters = 5000;
  design->add_option("--graph", graph_path, "graph file")->required();
  design->add_option("--prior", prior_path, "prior file")->required();
  design->add_option("--band", band, "band indices (override the prior file)");
  design->add_option("--noise", noise_override, "noise variance override")
      ->check(CLI::PositiveNumber);
  design->add_option("--budget", budget, "sample budget M")
      ->required()
      ->check(CLI::PositiveNumber);
  design->add_option("--method", method_name, "design method")
      ->required()
      ->check(CLI::IsMember(method_names));
  design->add_option("--seed", seed, "quantization seed");
  design->add_option("--tol", tol, "solver duality-gap tolerance")->check(CLI::PositiveNumber);
  design->add_option("--max-iters", max_iters, "solver iteration cap")
      ->check(CLI::PositiveNumber);
  design->add_option("--out", out_path, "output design file")->required();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Run one synthetic estimation trial");
  std::string estimator;
  estimate->add_option("--graph", graph_path, "graph file")->required();
  estimate->add_option("--prior", prior_path, "prior file")->required();
  estimate->add_option("--design", design_path, "design file")->required();
  estimate->add_option("--band", band, "band indices (override the prior file)");
  estimate->add_option("--noise", noise_override, "noise variance override")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--method", estimator, "estimator")
      ->required()
      ->check(CLI::IsMember({"mmse", "ls"}));
  estimate->add_option("--seed", seed, "trial seed");
  estimate->add_option("--out", out_path, "output file")->required();

  // discs
  auto* discs = app.add_subcommand("discs", "Emit Gershgorin disc tables for a design");
  int budget_override = 0;
  discs->add_option("--graph", graph_path, "graph file")->required();
  discs->add_option("--prior", prior_path, "prior file")->required();
  discs->add_option("--design", design_path, "design file")->required();
  discs->add_option("--band", band, "band indices (override the prior file)");
  discs->add_option("--noise", noise_override, "noise variance override")
      ->check(CLI::PositiveNumber);
  discs->add_option("--budget", budget_override, "budget override (default: sum of counts)")
      ->check(CLI::PositiveNumber);
  discs->add_option("--out", out_path, "output table file")->required();

  // benchmark
  auto* benchmark = app.add_subcommand("benchmark", "Run the Monte Carlo NMSE benchmark");
  std::string config_path;
  int trials_override = 0;
  std::uint64_t seed_value = 0;
  benchmark->add_option("--config", config_path, "benchmark config file")->required();
  benchmark->add_option("--trials", trials_override, "override trials per cell")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = benchmark->add_option("--seed", seed_value, "override master seed");
  benchmark->add_option("--out", out_path, "output table file (JSON twin written alongside)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      run_gen_graph(gen_n, gen_radius, gen_bandwidth, gen_seed, gen_out);
    } else if (design->parsed()) {
      run_design(graph_path, prior_path, band, noise_override, budget, method_name, seed, tol,
                 max_iters, out_path);
    } else if (estimate->parsed()) {
      run_estimate(graph_path, prior_path, design_path, band, noise_override, estimator, seed,
                   out_path);
    } else if (discs->parsed()) {
      run_discs(graph_path, prior_path, design_path, band, noise_override, budget_override,
                out_path);
    } else if (benchmark->parsed()) {
      run_benchmark_cmd(config_path, trials_override,
                        seed_opt->count() > 0 ? std::optional<std::uint64_t>(seed_value)
                                              : std::nullopt,
                        out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

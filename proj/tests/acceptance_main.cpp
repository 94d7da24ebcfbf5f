// Acceptance harness: ten end-to-end checks, one printed line each. Meant to
// run under ctest with the CLI binary path as the only argument.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gsd/benchmark.hpp"
#include "gsd/design.hpp"
#include "gsd/estimation.hpp"
#include "gsd/gershgorin.hpp"
#include "gsd/serialization.hpp"

namespace {

// Pinned tolerances and limits, one place to audit.
constexpr double kPosteriorRelTol = 1e-8;        // criterion 1
constexpr double kGradientRelTol = 1e-5;         // criterion 2
constexpr double kGradientStep = 1e-6;           // criterion 2
constexpr double kDualityGapTol = 1e-8;          // criterion 3
constexpr double kIntegerBoundTol = 1e-9;        // criterion 4
constexpr double kContainmentSlack = 1e-9;       // criterion 5
constexpr double kSpectrumTol = 1e-8;            // criterion 5
constexpr double kLogDetTol = 1e-8;              // criterion 5
constexpr double kCoherenceSumTol = 1e-12;       // criterion 6
constexpr double kQuantizeMeanRelTol = 0.01;     // criterion 7
constexpr int kQuantizeSeeds = 100000;           // criterion 7
constexpr double kPooledSeFactor = 2.0;          // criterion 9
constexpr double kLimitPosterior = 10.0;         // seconds, criterion 1
constexpr double kLimitGradient = 30.0;          // seconds, criterion 2
constexpr double kLimitSolver = 60.0;            // seconds, criterion 3
constexpr double kLimitInteger = 60.0;           // seconds, criterion 4
constexpr double kLimitBenchmark = 300.0;        // seconds, criterion 9

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format_seconds(double s) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << s << " s";
  return out.str();
}

std::string sci(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

// ---------------------------------------------------------------- criterion 1

Outcome posterior_oracle() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    fixtures::Instance inst = fixtures::random_instance(t, 12, 4);
    std::mt19937_64 engine(10000 + t);
    const int n = inst.basis.size();
    const std::vector<int> counts = fixtures::random_counts(n, inst.budget, engine);
    gsd::SampleSet samples(counts);

    const Eigen::MatrixXd lib = gsd::posterior_covariance(
        inst.basis, inst.prior, inst.noise,
        gsd::Design(fixtures::counts_to_eta(counts), inst.budget));

    // Joint-covariance block oracle: condition (coefficients, observations)
    // jointly Gaussian on the observations.
    const Eigen::MatrixXd psi = fixtures::sampling_matrix(samples, n);
    const Eigen::MatrixXd b = psi * inst.basis.band_vectors();
    const Eigen::MatrixXd sigma_ff = Eigen::MatrixXd(inst.prior.variances.asDiagonal());
    const Eigen::MatrixXd sigma_fy = sigma_ff * b.transpose();
    const Eigen::MatrixXd sigma_yy =
        b * sigma_ff * b.transpose() +
        inst.noise.variance * Eigen::MatrixXd::Identity(inst.budget, inst.budget);
    const Eigen::MatrixXd oracle =
        sigma_ff - sigma_fy * sigma_yy.inverse() * sigma_fy.transpose();

    const double rel =
        (lib - oracle).cwiseAbs().maxCoeff() / oracle.cwiseAbs().maxCoeff();
    worst = std::max(worst, rel);
  }
  Outcome out;
  out.pass = worst <= kPosteriorRelTol;
  out.detail = "max relative deviation " + sci(worst) + " over 200 instances";
  return out;
}

// ---------------------------------------------------------------- criterion 2

double gradient_deviation(const gsd::DesignProblem& problem, const Eigen::VectorXd& eta) {
  const Eigen::VectorXd analytic = gsd::utility_gradient(problem, eta);
  Eigen::VectorXd fd(eta.size());
  for (int i = 0; i < eta.size(); ++i) {
    Eigen::VectorXd up = eta, down = eta;
    up(i) += kGradientStep;
    down(i) -= kGradientStep;
    fd(i) = (gsd::objective_value(problem, up) - gsd::objective_value(problem, down)) /
            (2.0 * kGradientStep);
  }
  // Relative per coordinate, floored at a fraction of the largest component
  // so negligible entries do not divide by finite-difference noise.
  const double floor = 1e-3 * fd.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int i = 0; i < eta.size(); ++i) {
    worst = std::max(worst,
                     std::abs(analytic(i) - fd(i)) / std::max(std::abs(fd(i)), floor));
  }
  return worst;
}

Outcome gradient_check() {
  double worst = 0.0;
  fixtures::Instance ref = fixtures::reference_instance();
  std::mt19937_64 engine(2026);
  for (gsd::DesignObjective objective :
       {gsd::DesignObjective::U1, gsd::DesignObjective::U2}) {
    gsd::DesignProblem problem = fixtures::reference_problem(ref, objective);
    worst = std::max(worst, gradient_deviation(problem, gsd::uniform_design(64)));
    worst = std::max(worst, gradient_deviation(problem, fixtures::random_simplex(64, engine)));
  }
  for (std::uint64_t t = 0; t < 50; ++t) {
    fixtures::Instance inst = fixtures::random_instance(t + 300);
    gsd::DesignProblem problem{inst.basis, inst.prior, inst.noise};
    problem.budget = inst.budget;
    problem.objective =
        (t % 2 == 0) ? gsd::DesignObjective::U1 : gsd::DesignObjective::U2;
    worst = std::max(worst,
                     gradient_deviation(problem, fixtures::random_simplex(inst.basis.size(), engine)));
  }
  Outcome out;
  out.pass = worst <= kGradientRelTol;
  out.detail = "max per-coordinate deviation " + sci(worst);
  return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome solver_certificate() {
  fixtures::Instance inst = fixtures::reference_instance();
  gsd::DesignProblem problem = fixtures::reference_problem(inst);
  const gsd::SolverReport report = gsd::solve_relaxation(problem);

  Outcome out;
  if (!report.converged || report.duality_gap > kDualityGapTol) {
    out.detail = "duality gap " + sci(report.duality_gap) + ", converged=" +
                 (report.converged ? "true" : "false");
    return out;
  }
  for (std::size_t t = 1; t < report.trace.size(); ++t) {
    if (report.trace[t] < report.trace[t - 1]) {
      out.detail = "objective trace decreases at step " + std::to_string(t);
      return out;
    }
  }

  double worst_margin = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd greedy_eta =
      fixtures::counts_to_eta(gsd::greedy_design(problem).counts());
  for (const Eigen::VectorXd& eta :
       {gsd::bayesian_coherence_design(inst.basis, inst.prior),
        gsd::nonbayesian_coherence_design(inst.basis), gsd::uniform_design(64), greedy_eta}) {
    worst_margin = std::min(worst_margin,
                            report.objective - gsd::objective_value(problem, eta));
  }
  out.pass = worst_margin >= 0.0;
  out.detail = "gap " + sci(report.duality_gap) + ", min heuristic margin " +
               sci(worst_margin);
  return out;
}

// ---------------------------------------------------------------- criterion 4

void enumerate_counts(int n, int budget, Eigen::VectorXd& counts, int vertex,
                      const std::function<void(const Eigen::VectorXd&)>& visit) {
  if (vertex == n - 1) {
    counts(vertex) = budget;
    visit(counts);
    return;
  }
  for (int take = 0; take <= budget; ++take) {
    counts(vertex) = take;
    enumerate_counts(n, budget - take, counts, vertex + 1, visit);
  }
}

Outcome integer_upper_bound() {
  double worst_slack = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < 20; ++t) {
    fixtures::Instance inst = fixtures::random_instance(t + 600, 10, 3);
    const int n = inst.basis.size();
    const int budget = 1 + static_cast<int>(t % 4);

    for (gsd::DesignObjective objective :
         {gsd::DesignObjective::U1, gsd::DesignObjective::U2}) {
      gsd::DesignProblem problem{inst.basis, inst.prior, inst.noise};
      problem.budget = budget;
      problem.objective = objective;

      double best_integer = -std::numeric_limits<double>::infinity();
      Eigen::VectorXd counts(n);
      enumerate_counts(n, budget, counts, 0, [&](const Eigen::VectorXd& m) {
        best_integer =
            std::max(best_integer, gsd::objective_value(problem, m / double(budget)));
      });

      const double relaxed = gsd::solve_relaxation(problem).objective;
      worst_slack = std::min(worst_slack, relaxed - best_integer);
    }
  }
  Outcome out;
  out.pass = worst_slack >= -kIntegerBoundTol;
  out.detail = "min relaxed-minus-integer slack " + sci(worst_slack);
  return out;
}

// ---------------------------------------------------------------- criterion 5

Outcome disc_suite() {
  fixtures::Instance ref = fixtures::reference_instance();
  std::mt19937_64 engine(555);
  std::uniform_real_distribution<double> var_dist(0.1, 2.0);
  std::uniform_real_distribution<double> noise_dist(0.1, 1.0);

  double worst_violation = -std::numeric_limits<double>::infinity();
  double worst_spectrum = 0.0;
  double worst_logdet = 0.0;

  for (int draw = 0; draw < 101; ++draw) {
    Eigen::VectorXd eta = draw == 0 ? gsd::uniform_design(64)
                                    : fixtures::random_simplex(64, engine);
    gsd::GaussianPrior prior = ref.prior;
    gsd::NoiseModel noise = ref.noise;
    if (draw > 0) {
      Eigen::VectorXd variances(3);
      for (int k = 0; k < 3; ++k) variances(k) = var_dist(engine);
      prior = gsd::GaussianPrior(ref.prior.mean, variances);
      noise = gsd::NoiseModel(noise_dist(engine));
    }

    const Eigen::MatrixXd nb_matrix = gsd::nonbayesian_design_matrix(ref.basis, eta, 10);
    const gsd::ContainmentReport nb_contain =
        gsd::check_containment(nb_matrix, gsd::discs_nonbayesian(ref.basis, eta, 10));
    const Eigen::MatrixXd b_matrix =
        gsd::bayesian_design_matrix(ref.basis, prior, noise, eta, 10);
    const gsd::ContainmentReport b_contain = gsd::check_containment(
        b_matrix, gsd::discs_bayesian(ref.basis, prior, noise, eta, 10));
    worst_violation =
        std::max({worst_violation, nb_contain.max_violation, b_contain.max_violation});

    const gsd::EquivalenceReport nb_spec =
        gsd::nonzero_spectrum_equivalence(ref.basis, eta, 10);
    const gsd::EquivalenceReport b_spec =
        gsd::nonzero_spectrum_equivalence(ref.basis, prior, noise, eta, 10);
    worst_spectrum = std::max({worst_spectrum, nb_spec.max_deviation, b_spec.max_deviation});

    const gsd::LogDetReport logdet =
        gsd::logdet_decomposition_check(ref.basis, prior, noise, eta, 10);
    worst_logdet = std::max(worst_logdet, std::abs(logdet.lhs - logdet.rhs));
  }

  Outcome out;
  out.pass = worst_violation <= kContainmentSlack && worst_spectrum <= kSpectrumTol &&
             worst_logdet <= kLogDetTol;
  out.detail = "containment violation " + sci(worst_violation) + ", spectrum dev " +
               sci(worst_spectrum) + ", logdet dev " + sci(worst_logdet);
  return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome coherence_and_greedy() {
  double worst_sum = 0.0;
  double worst_reduction = 0.0;
  int first_pick_mismatches = 0;

  for (std::uint64_t t = 0; t < 100; ++t) {
    fixtures::Instance inst = fixtures::random_instance(t + 900);
    const int k = inst.basis.band_size();

    const Eigen::VectorXd bayes = gsd::bayesian_coherence_design(inst.basis, inst.prior);
    worst_sum = std::max(worst_sum, std::abs(bayes.sum() - 1.0));

    // Equal prior variances collapse the rule to plain coherence.
    gsd::GaussianPrior flat(inst.prior.mean, 0.37 * Eigen::VectorXd::Ones(k));
    const Eigen::VectorXd reduced = gsd::bayesian_coherence_design(inst.basis, flat);
    const Eigen::VectorXd plain = gsd::nonbayesian_coherence_design(inst.basis);
    worst_reduction = std::max(worst_reduction, (reduced - plain).cwiseAbs().maxCoeff());

    gsd::DesignProblem problem{inst.basis, inst.prior, inst.noise};
    problem.budget = 1;
    const gsd::SampleSet first = gsd::greedy_design(problem);
    int coherence_argmax = 0;
    bayes.maxCoeff(&coherence_argmax);
    if (first.counts()[coherence_argmax] != 1) ++first_pick_mismatches;
  }

  Outcome out;
  out.pass = worst_sum <= kCoherenceSumTol && worst_reduction <= kCoherenceSumTol &&
             first_pick_mismatches == 0;
  out.detail = "sum dev " + sci(worst_sum) + ", reduction dev " + sci(worst_reduction) +
               ", first-pick mismatches " + std::to_string(first_pick_mismatches);
  return out;
}

// ---------------------------------------------------------------- criterion 7

Outcome quantization_properties() {
  // Budget conservation across random shapes, budgets, and seeds.
  std::mt19937_64 engine(4040);
  std::uniform_int_distribution<int> n_dist(2, 40);
  std::uniform_int_distribution<int> m_dist(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = n_dist(engine);
    const int m = m_dist(engine);
    const gsd::SampleSet samples =
        gsd::quantize_design(gsd::Design(fixtures::random_simplex(n, engine), m), engine());
    int total = 0;
    for (int c : samples.counts()) total += c;
    if (total != m) {
      Outcome out;
      out.detail = "count sum " + std::to_string(total) + " != budget " + std::to_string(m);
      return out;
    }
  }

  // Unbiasedness on a fixed 3-vertex fixture with fractional expectations.
  Eigen::VectorXd eta(3);
  eta << 0.5, 0.3, 0.2;
  const gsd::Design design(eta, 2);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (int seed = 0; seed < kQuantizeSeeds; ++seed) {
    const gsd::SampleSet samples = gsd::quantize_design(design, seed);
    for (int i = 0; i < 3; ++i) mean(i) += samples.counts()[i];
  }
  mean /= kQuantizeSeeds;

  double worst_rel = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst_rel = std::max(worst_rel, std::abs(mean(i) - 2.0 * eta(i)) / (2.0 * eta(i)));
  }
  Outcome out;
  out.pass = worst_rel <= kQuantizeMeanRelTol;
  out.detail = "max relative mean deviation " + sci(worst_rel) + " over " +
               std::to_string(kQuantizeSeeds) + " seeds";
  return out;
}

// ---------------------------------------------------------------- criterion 8

Outcome prior_washout() {
  fixtures::Instance inst = fixtures::reference_instance();
  gsd::DesignProblem prior_free =
      fixtures::reference_problem(inst, gsd::DesignObjective::NonBayesianDOptimal);
  const Eigen::VectorXd baseline = gsd::solve_relaxation(prior_free).eta;

  gsd::DesignProblem u1 = fixtures::reference_problem(inst);
  u1.budget = 10;
  const double d_small = (gsd::solve_relaxation(u1).eta - baseline).cwiseAbs().maxCoeff();
  u1.budget = 1000;
  const double d_large = (gsd::solve_relaxation(u1).eta - baseline).cwiseAbs().maxCoeff();

  Outcome out;
  out.pass = d_large < d_small;
  out.detail = "linf distance " + sci(d_small) + " at M=10 vs " + sci(d_large) +
               " at M=1000";
  return out;
}

// ---------------------------------------------------------------- criterion 9

const gsd::BenchmarkRow* find_row(const gsd::BenchmarkResult& result, double noise,
                                  gsd::Method method, bool mmse) {
  for (const gsd::BenchmarkRow& row : result.rows) {
    if (row.noise_variance == noise && row.method == method && row.mmse == mmse) return &row;
  }
  return nullptr;
}

double standard_error(const gsd::BenchmarkRow& row) {
  const int effective = row.trials - row.singular;
  return row.nmse_std / std::sqrt(double(effective));
}

Outcome benchmark_orderings() {
  gsd::BenchmarkConfig config;
  config.rgg_seed = fixtures::kReferenceSeed;
  config.band = {9, 19, 29};
  config.mean = Eigen::VectorXd::Ones(3);
  config.variances = Eigen::VectorXd(3);
  config.variances << 1.0, 0.5, 0.1;
  config.seed = fixtures::kReferenceSeed;
  const gsd::BenchmarkResult result = gsd::run_benchmark(config);

  const double top_noise = config.noise_grid.back();

  // (a) Bayesian-designed methods beat the prior-free baselines at the
  // noisiest grid point by more than two pooled standard errors.
  const std::vector<std::pair<gsd::Method, bool>> bayes_rows = {
      {gsd::Method::RelaxationU1, true},
      {gsd::Method::RelaxationU2, true},
      {gsd::Method::BayesCoherence, true},
      {gsd::Method::Greedy, true},
  };
  const std::vector<std::pair<gsd::Method, bool>> plain_rows = {
      {gsd::Method::NbCoherence, false},
      {gsd::Method::Uniform, false},
  };
  double min_separation = std::numeric_limits<double>::infinity();
  for (const auto& [bm, bmmse] : bayes_rows) {
    const gsd::BenchmarkRow* b = find_row(result, top_noise, bm, bmmse);
    if (b == nullptr) return {false, "missing row " + gsd::to_string(bm)};
    for (const auto& [pm, pmmse] : plain_rows) {
      const gsd::BenchmarkRow* p = find_row(result, top_noise, pm, pmmse);
      if (p == nullptr) return {false, "missing row " + gsd::to_string(pm)};
      const double pooled = std::sqrt(standard_error(*b) * standard_error(*b) +
                                      standard_error(*p) * standard_error(*p));
      min_separation =
          std::min(min_separation, (p->nmse_mean - b->nmse_mean) / pooled);
    }
  }
  if (!(min_separation > kPooledSeFactor)) {
    return {false, "min separation " + sci(min_separation) + " pooled SEs"};
  }

  // (b) Mean NMSE is nondecreasing in the noise variance for every row chain.
  for (gsd::Method method : gsd::all_methods()) {
    for (bool mmse : {true, false}) {
      const gsd::BenchmarkRow* prev = nullptr;
      for (double noise : config.noise_grid) {
        const gsd::BenchmarkRow* row = find_row(result, noise, method, mmse);
        if (row == nullptr) continue;
        if (prev != nullptr && row->nmse_mean < prev->nmse_mean) {
          return {false, gsd::to_string(method) + " mean decreases at noise " + sci(noise)};
        }
        prev = row;
      }
    }
  }

  // (c) Relaxed designs beat uniform sampling at noise variance 0.5.
  const gsd::BenchmarkRow* u1_row = find_row(result, 0.5, gsd::Method::RelaxationU1, true);
  const gsd::BenchmarkRow* u2_row = find_row(result, 0.5, gsd::Method::RelaxationU2, true);
  const gsd::BenchmarkRow* uniform_mmse = find_row(result, 0.5, gsd::Method::Uniform, true);
  const gsd::BenchmarkRow* uniform_ls = find_row(result, 0.5, gsd::Method::Uniform, false);
  if (u1_row == nullptr || u2_row == nullptr || uniform_mmse == nullptr ||
      uniform_ls == nullptr) {
    return {false, "missing rows at noise 0.5"};
  }
  const double uniform_best = std::min(uniform_mmse->nmse_mean, uniform_ls->nmse_mean);
  if (!(u1_row->nmse_mean < uniform_best && u2_row->nmse_mean < uniform_best)) {
    return {false, "relaxed designs do not beat uniform at noise 0.5"};
  }

  Outcome out;
  out.pass = true;
  out.detail = "min separation " + sci(min_separation) + " pooled SEs, relaxed vs uniform margin " +
               sci(uniform_best - std::max(u1_row->nmse_mean, u2_row->nmse_mean));
  return out;
}

// --------------------------------------------------------------- criterion 10

int run_command(const std::string& command) {
  const int rc = std::system(command.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Outcome cli_determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  if (cli.empty()) return {false, "CLI binary path not provided"};

  const fs::path dir =
      fs::temp_directory_path() /
      ("gsd_acceptance_" +
       std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(dir);

  const std::string graph = (dir / "graph.txt").string();
  const std::string prior = (dir / "prior.txt").string();
  const std::string config = (dir / "bench.cfg").string();

  gsd::write_graph_file(graph, gsd::generate_rgg(64, 0.6, 0.3, fixtures::kReferenceSeed));

  gsd::PriorSpec spec;
  spec.band = {9, 19, 29};
  spec.mean = Eigen::VectorXd::Ones(3);
  spec.variances = Eigen::VectorXd(3);
  spec.variances << 1.0, 0.5, 0.1;
  spec.noise_variance = 0.5;
  gsd::write_prior_file(prior, spec);

  {
    std::ofstream cfg(config);
    cfg << "graph_file = " << graph << "\n"
        << "band = [9, 19, 29]\n"
        << "mean = [1, 1, 1]\n"
        << "variances = [1, 0.5, 0.1]\n"
        << "noise_grid = [0.5, 2]\n"
        << "methods = [relaxation-u1, nb-coherence, uniform]\n"
        << "trials = 25\n"
        << "budget = 10\n"
        << "seed = 7\n";
  }

  struct Step {
    std::string name;
    std::string command;                 // with %OUT% placeholder
    std::vector<std::string> suffixes;   // output files produced per run
  };
  const std::string quoted = "\"" + cli + "\"";
  std::vector<Step> steps = {
      {"gen-graph",
       quoted + " gen-graph --n 64 --radius 0.6 --bandwidth 0.3 --seed 7 --out %OUT%",
       {""}},
      {"design-relaxation",
       quoted + " design --graph " + graph + " --prior " + prior +
           " --budget 10 --method relaxation-u1 --seed 3 --out %OUT%",
       {""}},
      {"design-greedy",
       quoted + " design --graph " + graph + " --prior " + prior +
           " --budget 10 --method greedy --seed 3 --out %OUT%",
       {""}},
      {"estimate",
       quoted + " estimate --graph " + graph + " --prior " + prior + " --design " +
           (dir / "design-relaxation_a").string() + " --method mmse --seed 9 --out %OUT%",
       {""}},
      {"discs",
       quoted + " discs --graph " + graph + " --prior " + prior + " --design " +
           (dir / "design-relaxation_a").string() + " --out %OUT%",
       {""}},
      {"benchmark", quoted + " benchmark --config " + config + " --out %OUT%",
       {"", ".json"}},
  };

  Outcome out;
  for (const Step& step : steps) {
    std::vector<std::string> digests;
    for (const std::string run : {"_a", "_b"}) {
      const std::string out_path = (dir / (step.name + run)).string();
      std::string command = step.command;
      const std::string placeholder = "%OUT%";
      command.replace(command.find(placeholder), placeholder.size(), out_path);
      command += " > /dev/null 2>&1";
      const int rc = run_command(command);
      if (rc != 0) {
        fs::remove_all(dir);
        return {false, step.name + " exited with code " + std::to_string(rc)};
      }
      for (const std::string& suffix : step.suffixes) {
        digests.push_back(read_bytes(out_path + suffix));
      }
    }
    const std::size_t half = digests.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      if (digests[i].empty() || digests[i] != digests[half + i]) {
        fs::remove_all(dir);
        return {false, step.name + " output differs between identical runs"};
      }
    }
  }
  fs::remove_all(dir);
  out.pass = true;
  out.detail = "all subcommands byte-identical across reruns";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  struct Criterion {
    int id;
    std::string label;
    std::function<Outcome()> run;
    double limit_seconds;  // 0 = no limit stated
  };
  const std::vector<Criterion> criteria = {
      {1, "posterior covariance oracle", posterior_oracle, kLimitPosterior},
      {2, "analytic gradients vs finite differences", gradient_check, kLimitGradient},
      {3, "solver duality-gap certificate", solver_certificate, kLimitSolver},
      {4, "relaxation bounds integer designs", integer_upper_bound, kLimitInteger},
      {5, "disc containment and spectrum identities", disc_suite, 0.0},
      {6, "coherence rules and greedy first pick", coherence_and_greedy, 0.0},
      {7, "quantization conservation and unbiasedness", quantization_properties, 0.0},
      {8, "prior washout with growing budget", prior_washout, 0.0},
      {9, "benchmark NMSE orderings", benchmark_orderings, kLimitBenchmark},
      {10, "CLI determinism", [&cli] { return cli_determinism(cli); }, 0.0},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.limit_seconds > 0.0 && elapsed > criterion.limit_seconds) {
      outcome.pass = false;
      outcome.detail += " [exceeded " + format_seconds(criterion.limit_seconds) + " limit]";
    }
    if (!outcome.pass) ++failures;
    std::cout << "criterion " << criterion.id << " [" << criterion.label
              << "]: " << (outcome.pass ? "PASS" : "FAIL") << " | " << outcome.detail
              << " (" << format_seconds(elapsed) << ")\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size()
            << " criteria passed\n";
  return failures;
}

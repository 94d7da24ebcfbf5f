#include "gsd/design.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "gsd/rng.hpp"

namespace gsd {
namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr double kSupportTol = 1e-12;
constexpr double kQuantSnapTol = 1e-9;

// log det of an SPD matrix via Cholesky; -inf when the factorization fails,
// matching logdet's limit for singular matrices.
double logdet_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    return -std::numeric_limits<double>::infinity();
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd inv =
      m.llt().solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  return ((inv + inv.transpose()) / 2.0).eval();
}

void check_eta(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  if (eta.size() != problem.basis.size()) {
    throw std::invalid_argument("eta length does not match the graph size");
  }
}

Eigen::MatrixXd quadratic_weight_or_identity(const DesignProblem& problem) {
  const int k = static_cast<int>(problem.prior.size());
  if (!problem.quadratic_weight) {
    return Eigen::MatrixXd::Identity(k, k);
  }
  const Eigen::MatrixXd& a = *problem.quadratic_weight;
  if (a.rows() != k || a.cols() != k) {
    throw std::invalid_argument("quadratic weight must be K x K");
  }
  if ((a - a.transpose()).norm() > 1e-10 * std::max(1.0, a.norm())) {
    throw std::invalid_argument("quadratic weight must be symmetric");
  }
  return a;
}

Eigen::MatrixXd information_matrix(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  return bayesian_information_matrix(problem.basis, problem.prior, problem.noise,
                                     problem.budget * eta);
}

// V_K^T diag(eta) V_K, the prior-free information matrix up to M / sigma^2.
Eigen::MatrixXd band_gram(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  const Eigen::MatrixXd& v = problem.basis.band_vectors();
  return v.transpose() * eta.asDiagonal() * v;
}

int argmax_lowest(const Eigen::VectorXd& x) {
  int best = 0;
  for (int i = 1; i < x.size(); ++i) {
    if (x(i) > x(best)) best = i;
  }
  return best;
}

// Lowest-index minimizer of x over {i : eta_i > kSupportTol}; -1 if empty.
int argmin_support(const Eigen::VectorXd& x, const Eigen::VectorXd& eta) {
  int best = -1;
  for (int i = 0; i < x.size(); ++i) {
    if (eta(i) <= kSupportTol) continue;
    if (best < 0 || x(i) < x(best)) best = i;
  }
  return best;
}

Eigen::VectorXd renormalized(Eigen::VectorXd eta) {
  eta = eta.cwiseMax(0.0);
  const double total = eta.sum();
  if (!(total > 0.0)) {
    throw std::logic_error("simplex iterate collapsed to zero");
  }
  return eta / total;
}

struct Move {
  Eigen::VectorXd direction;
  double slope;
  double max_step;
};

struct LineSearchResult {
  double step = 0.0;
  double value = 0.0;
  bool valid = false;
};

// Directional derivative along `direction` at the given step; false when the
// objective is undefined there (rank-deficient prior-free matrix).
bool slope_at(const DesignProblem& problem, const Eigen::VectorXd& eta,
              const Eigen::VectorXd& direction, double step, double* out) {
  try {
    *out = utility_gradient(problem, renormalized(eta + step * direction)).dot(direction);
    return true;
  } catch (const std::runtime_error&) {
    return false;
  }
}

// 1D step selection on (0, max_step]. The objective is concave along the
// segment, so its directional derivative crosses zero once; bisecting on the
// derivative sign localizes the maximizer even when objective differences
// are already below rounding resolution, which is what lets the duality gap
// certify tight tolerances. Armijo backtracking halving is the fallback when
// the refined point's value does not round upward.
LineSearchResult search_step(const DesignProblem& problem, const Eigen::VectorXd& eta,
                             double value, const Move& move) {
  double lo = 0.0;
  double hi = move.max_step;
  double slope = 0.0;
  if (slope_at(problem, eta, move.direction, hi, &slope) && slope >= 0.0) {
    lo = hi;  // still ascending at the boundary: take the full step
  } else {
    const double width_floor = 1e-15 * std::max(1.0, move.max_step);
    for (int i = 0; i < 100 && hi - lo > width_floor; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (slope_at(problem, eta, move.direction, mid, &slope) && slope >= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  if (lo > 0.0) {
    const Eigen::VectorXd candidate = renormalized(eta + lo * move.direction);
    // Ascent toward the 1D maximizer cannot lower the value; equality is
    // accepted so weight polishing continues below value resolution.
    if ((candidate.array() != eta.array()).any()) {
      const double candidate_value = objective_value(problem, candidate);
      if (std::isfinite(candidate_value) && candidate_value >= value) {
        return {lo, candidate_value, true};
      }
    }
  }
  double step = move.max_step;
  for (int halving = 0; halving < 60 && step > 0; ++halving) {
    const double candidate_value =
        objective_value(problem, renormalized(eta + step * move.direction));
    if (std::isfinite(candidate_value) &&
        candidate_value >= value + kArmijoC1 * step * move.slope) {
      return {step, candidate_value, true};
    }
    step /= 2.0;
  }
  return {};
}

}  // namespace

double u1_value(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  check_eta(problem, eta);
  const int k = problem.prior.size();
  const double logdet = logdet_spd(information_matrix(problem, eta));
  return -0.5 * k * std::log(2.0 * M_PI) - 0.5 * k + 0.5 * logdet;
}

double u2_value(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  check_eta(problem, eta);
  const Eigen::MatrixXd a = quadratic_weight_or_identity(problem);
  const Eigen::MatrixXd cov = spd_inverse(information_matrix(problem, eta));
  return -a.cwiseProduct(cov).sum();
}

double objective_value(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  switch (problem.objective) {
    case DesignObjective::U1:
      return u1_value(problem, eta);
    case DesignObjective::U2:
      return u2_value(problem, eta);
    case DesignObjective::NonBayesianDOptimal: {
      check_eta(problem, eta);
      const int k = problem.prior.size();
      const double scale = problem.budget / problem.noise.variance;
      const double logdet = logdet_spd(band_gram(problem, eta));
      return 0.5 * (k * std::log(scale) + logdet);
    }
  }
  throw std::logic_error("unknown design objective");
}

Eigen::VectorXd utility_gradient(const DesignProblem& problem, const Eigen::VectorXd& eta) {
  check_eta(problem, eta);
  const Eigen::MatrixXd& v = problem.basis.band_vectors();
  switch (problem.objective) {
    case DesignObjective::U1: {
      const Eigen::MatrixXd cov = spd_inverse(information_matrix(problem, eta));
      const double scale = problem.budget / (2.0 * problem.noise.variance);
      return scale * (v.cwiseProduct(v * cov)).rowwise().sum();
    }
    case DesignObjective::U2: {
      const Eigen::MatrixXd a = quadratic_weight_or_identity(problem);
      const Eigen::MatrixXd cov = spd_inverse(information_matrix(problem, eta));
      Eigen::MatrixXd inner = cov * a * cov;
      inner = ((inner + inner.transpose()) / 2.0).eval();
      const double scale = problem.budget / problem.noise.variance;
      return scale * (v.cwiseProduct(v * inner)).rowwise().sum();
    }
    case DesignObjective::NonBayesianDOptimal: {
      const Eigen::MatrixXd gram = band_gram(problem, eta);
      Eigen::LLT<Eigen::MatrixXd> llt(gram);
      if (llt.info() != Eigen::Success) {
        throw std::runtime_error("band information matrix is singular at eta");
      }
      const Eigen::MatrixXd inv = spd_inverse(gram);
      return 0.5 * (v.cwiseProduct(v * inv)).rowwise().sum();
    }
  }
  throw std::logic_error("unknown design objective");
}

SolverReport solve_relaxation(const DesignProblem& problem, const SolverOptions& options) {
  const int n = problem.basis.size();
  if (problem.budget < 1) {
    throw std::invalid_argument("relaxation requires a positive sample budget");
  }
  if (options.tol <= 0 || options.max_iters < 1) {
    throw std::invalid_argument("solver tolerance and iteration cap must be positive");
  }

  Eigen::VectorXd eta = Eigen::VectorXd::Constant(n, 1.0 / n);
  double value = objective_value(problem, eta);
  if (!std::isfinite(value)) {
    throw std::runtime_error("objective is not finite at the uniform design");
  }

  SolverReport report;
  report.trace.push_back(value);

  for (int iter = 0; iter < options.max_iters; ++iter) {
    const Eigen::VectorXd grad = utility_gradient(problem, eta);
    const int fw_vertex = argmax_lowest(grad);
    const double grad_dot_eta = grad.dot(eta);
    const double gap = grad(fw_vertex) - grad_dot_eta;
    if (gap <= options.tol) break;

    // Candidate directions: toward the best vertex, and (optionally) away
    // from the worst support atom, whichever has the larger ascent slope.
    std::vector<Move> moves;
    if (options.away_steps) {
      const int away_vertex = argmin_support(grad, eta);
      if (away_vertex >= 0 && eta(away_vertex) < 1.0 - kSupportTol) {
        const double away_slope = grad_dot_eta - grad(away_vertex);
        if (away_slope > gap) {
          Eigen::VectorXd d = eta;
          d(away_vertex) -= 1.0;
          moves.push_back({d, away_slope, eta(away_vertex) / (1.0 - eta(away_vertex))});
        }
      }
    }
    {
      Eigen::VectorXd d = -eta;
      d(fw_vertex) += 1.0;
      moves.push_back({d, gap, 1.0});
    }

    bool accepted = false;
    for (const Move& move : moves) {
      const LineSearchResult found = search_step(problem, eta, value, move);
      if (found.valid) {
        eta = renormalized(eta + found.step * move.direction);
        value = found.value;
        report.trace.push_back(value);
        ++report.iterations;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // no representable ascent step left
  }

  const Eigen::VectorXd grad = utility_gradient(problem, eta);
  report.eta = eta;
  report.objective = value;
  report.duality_gap = grad(argmax_lowest(grad)) - grad.dot(eta);
  report.converged = report.duality_gap <= options.tol;
  return report;
}

SolverReport solve_relaxation(const DesignProblem& problem, double tol, int max_iters) {
  SolverOptions options;
  options.tol = tol;
  options.max_iters = max_iters;
  return solve_relaxation(problem, options);
}

Eigen::VectorXd bayesian_coherence_design(const SpectralBasis& basis,
                                          const GaussianPrior& prior) {
  const Eigen::MatrixXd& v = basis.band_vectors();
  if (prior.size() != v.cols()) {
    throw std::invalid_argument("prior size does not match the band size");
  }
  const Eigen::VectorXd energy =
      (v.array().square().matrix() * prior.variances).eval();
  return energy / energy.sum();
}

Eigen::VectorXd nonbayesian_coherence_design(const SpectralBasis& basis) {
  const Eigen::MatrixXd& v = basis.band_vectors();
  const Eigen::VectorXd energy = v.array().square().rowwise().sum().matrix();
  return energy / energy.sum();
}

Eigen::VectorXd uniform_design(int n) {
  if (n < 1) throw std::invalid_argument("uniform design needs at least one vertex");
  return Eigen::VectorXd::Constant(n, 1.0 / n);
}

SampleSet greedy_design(const DesignProblem& problem) {
  if (problem.budget < 1) {
    throw std::invalid_argument("greedy design requires a positive sample budget");
  }
  const Eigen::MatrixXd& v = problem.basis.band_vectors();
  const int n = problem.basis.size();
  const double sigma2 = problem.noise.variance;

  Eigen::MatrixXd cov = problem.prior.variances.asDiagonal();
  std::vector<int> counts(n, 0);
  for (int pick = 0; pick < problem.budget; ++pick) {
    // q_i = u_i^T cov u_i; the log(1 + q_i / sigma^2) gain is monotone in q.
    const Eigen::VectorXd q = (v.cwiseProduct(v * cov)).rowwise().sum();
    const int best = argmax_lowest(q);
    ++counts[best];
    const Eigen::VectorXd s = cov * v.row(best).transpose();
    cov -= s * s.transpose() / (sigma2 + q(best));
    cov = ((cov + cov.transpose()) / 2.0).eval();
  }
  return SampleSet(counts);
}

SampleSet quantize_design(const Design& design, std::uint64_t seed) {
  const int n = static_cast<int>(design.eta.size());
  const int m = design.budget;

  std::vector<int> counts(n, 0);
  Eigen::VectorXd frac(n);
  int base_total = 0;
  for (int i = 0; i < n; ++i) {
    double scaled = m * design.eta(i);
    const double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) <= kQuantSnapTol) scaled = nearest;
    const double base = std::floor(scaled);
    counts[i] = static_cast<int>(base);
    frac(i) = scaled - base;
    base_total += counts[i];
  }

  const int residual = m - base_total;
  if (residual < 0 || residual > n) {
    throw std::logic_error("quantization residual out of range");
  }
  if (residual > 0) {
    // Systematic sampling: residual equally spaced points on [0, total)
    // with a single uniform offset; vertex i is hit floor-or-ceil of
    // frac_i * residual / total times, and every fraction is below the
    // stride, so each vertex gains at most one extra sample.
    const double total = frac.sum();
    auto engine = make_engine(derive_seed(seed, SeedPurpose::Quantization, 0));
    const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(engine);
    const double stride = total / residual;
    int vertex = 0;
    double cumulative = frac(0);
    for (int k = 0; k < residual; ++k) {
      const double position = (offset + k) * stride;
      while (position >= cumulative && vertex + 1 < n) {
        ++vertex;
        cumulative += frac(vertex);
      }
      ++counts[vertex];
    }
  }
  return SampleSet(counts);
}

}  // namespace gsd

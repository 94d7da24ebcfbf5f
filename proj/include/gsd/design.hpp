#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gsd/estimation.hpp"

namespace gsd {

// U1: expected information gain (Bayesian D-optimality),
//     -(K/2) log(2 pi) - K/2 + (1/2) log det of the information matrix.
// U2: negative expected quadratic loss -tr(A Sigma_B), A symmetric PSD.
// NonBayesianDOptimal: log-det of the prior-free information matrix, the
//     criterion the least-squares design maximizes; used for comparing
//     designs with and without the prior term.
enum class DesignObjective { U1, U2, NonBayesianDOptimal };

struct DesignProblem {
  SpectralBasis basis;
  GaussianPrior prior;
  NoiseModel noise;
  int budget = 0;
  DesignObjective objective = DesignObjective::U1;
  // Quadratic weight A for U2; identity when absent.
  std::optional<Eigen::MatrixXd> quadratic_weight;
};

double u1_value(const DesignProblem& problem, const Eigen::VectorXd& eta);
double u2_value(const DesignProblem& problem, const Eigen::VectorXd& eta);
double objective_value(const DesignProblem& problem, const Eigen::VectorXd& eta);

// Analytic gradient of the selected utility:
//   dU1/deta_i = (M / (2 sigma^2)) u_i^T Sigma_B u_i
//   dU2/deta_i = (M / sigma^2)     u_i^T Sigma_B A Sigma_B u_i
Eigen::VectorXd utility_gradient(const DesignProblem& problem, const Eigen::VectorXd& eta);

struct SolverOptions {
  double tol = 1e-8;
  int max_iters = 5000;
  // Plain conditional-gradient steps zigzag near a face of the simplex and
  // stall above tight gap targets; away steps restore fast convergence while
  // keeping the same duality-gap certificate.
  bool away_steps = true;
};

struct SolverReport {
  Eigen::VectorXd eta;
  double objective = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // accepted objective values, nondecreasing

  Design design(int budget) const { return Design(eta, budget); }
};

// Maximizes the concave relaxed objective over the simplex with Frank-Wolfe
// (argmax-gradient vertex selection; exact line search by bisection on the
// directional derivative, with Armijo backtracking as fallback). The returned
// duality gap max_s <grad, s - eta> certifies distance to the optimum.
SolverReport solve_relaxation(const DesignProblem& problem, const SolverOptions& options);
SolverReport solve_relaxation(const DesignProblem& problem, double tol = 1e-8,
                              int max_iters = 5000);

// Heuristic sampling proportions. Bayesian: eta_i proportional to the
// prior-weighted band energy sum_k var_k u_{ik}^2; non-Bayesian: proportional
// to the band energy u_i^T u_i. Both sum to one.
Eigen::VectorXd bayesian_coherence_design(const SpectralBasis& basis, const GaussianPrior& prior);
Eigen::VectorXd nonbayesian_coherence_design(const SpectralBasis& basis);
Eigen::VectorXd uniform_design(int n);

// Sequential Bayesian pick: each of the M picks takes the vertex with the
// largest posterior log-det gain log(1 + u_i^T Sigma u_i / sigma^2); the
// posterior is updated by the rank-one (Sherman-Morrison) identity. Ties go
// to the lowest vertex index; repeats are allowed.
SampleSet greedy_design(const DesignProblem& problem);

// Integer counts from fractional proportions: m_i >= floor(M eta_i), with the
// leftover budget assigned by systematic sampling over the fractional parts
// in vertex order, so E[m_i] = M eta_i and sum m_i = M always. Deterministic
// given seed.
SampleSet quantize_design(const Design& design, std::uint64_t seed);

}  // namespace gsd

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "gk/instance.hpp"

namespace gk {

struct SolverConfig {
  static constexpr int kAutoWidth = 0;

  // Columns of the factor X; kAutoWidth picks min(n, max_rank_bound(n) + 1).
  int factor_width = kAutoWidth;
  // Stop when one full sweep improves the objective by less than
  // tol_obj * max(1, |objective|).
  double tol_obj = 1e-9;
  int max_sweeps = 10000;
  std::uint64_t seed = 0;
};

struct SolveStats {
  int sweeps = 0;
  bool converged = true;
  std::uint64_t seed = 0;
  // Objective at initialization and after each sweep. Not serialized.
  std::vector<double> objective_trace;
};

// Row-factored feasible point of the relaxation: the rows of x are the
// relaxed unit vectors and S = x x^T. In the subunit state (produced by the
// low-rank-A reduction) rows may have norm anywhere in [0, 1].
struct FactoredSolution {
  Eigen::MatrixXd x;
  double objective = std::numeric_limits<double>::quiet_NaN();
  bool subunit = false;
  SolveStats stats;

  int n() const { return static_cast<int>(x.rows()); }
  int k() const { return static_cast<int>(x.cols()); }
};

// Block-coordinate ascent on the factor: each sweep rotates every row, in
// order, onto the direction that maximizes the objective with the other rows
// held fixed. Monotone in exact arithmetic; deterministic for a fixed
// (instance, config). Non-convergence within max_sweeps is reported through
// stats.converged, not an exception.
FactoredSolution solve_relaxation(const ProblemInstance& inst, const SolverConfig& cfg = {});

// tr(A X X^T), accumulated as sum_ij A_ij (X_i . X_j).
double objective(const ProblemInstance& inst, const FactoredSolution& sol);

// max_i | ||X_i||^2 - 1 |
double feasibility_residual(const FactoredSolution& sol);

// Eigendecomposes a PSD Gram matrix and keeps directions whose eigenvalue
// exceeds tau_rank times the top eigenvalue, largest first. The returned
// objective is NaN; evaluate it against an instance with objective().
FactoredSolution gram_to_factor(const Eigen::MatrixXd& s, double tau_rank = kDefaultRankTol);

}  // namespace gk

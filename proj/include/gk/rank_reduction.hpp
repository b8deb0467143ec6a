#pragma once

#include <utility>

#include <Eigen/Core>

#include "gk/instance.hpp"
#include "gk/solver.hpp"

namespace gk {

struct RankReductionReport {
  int rank_before = 0;
  int rank_after = 0;
  int steps = 0;
  double objective_before = 0.0;
  double objective_after = 0.0;
  // |objective_after - objective_before| / max(1, |objective_before|),
  // measured before any cosmetic row renormalization.
  double objective_drift = 0.0;
  // max_i |S'_ii - S_ii| between input and output Gram diagonals, also
  // measured before renormalization.
  double diag_drift = 0.0;
  bool subunit = false;
  // Set when an eigenvalue of X^T A X lands within a factor 10 of the
  // numerical-zero cutoff, making the zero/nonzero split debatable.
  bool rank_detection_ambiguous = false;
};

// k(k+1)/2, the dimension of the space of symmetric k-by-k matrices.
long long triangular(int k);

// Largest k whose triangular number is at most n + 1. A diagonal-constrained
// relaxation always has an optimum of at most this rank.
int max_rank_bound(int n);

// One rank-reduction move: find a nonzero symmetric Y that is orthogonal (in
// the trace inner product) to every row Gram X_i^T X_i and to X^T A X, scale
// its top eigenvalue to 1, and pass to the factor of X (I - Y) X^T. The
// objective and diagonal are untouched and the rank drops by at least one.
// Requires triangular(k) > n + 1 so the linear system is underdetermined.
FactoredSolution reduce_rank_step(const FactoredSolution& sol, const ProblemInstance& inst,
                                  double tau_rank = kDefaultRankTol);

// Iterates reduce_rank_step until triangular(k) <= n + 1, then renormalizes
// rows to exactly unit norm. Zero steps leave the solution untouched.
std::pair<FactoredSolution, RankReductionReport> reduce_rank(
    const FactoredSolution& sol, const ProblemInstance& inst, double tau_rank = kDefaultRankTol);

// Low-rank-instance variant: projects the factor onto the eigenvectors of
// X^T A X with nonzero eigenvalue, dropping the rank to at most rank(A) while
// preserving the objective exactly. Output rows have norm in [0, 1] (the
// subunit state); they are only renormalized under the experimental flag,
// in which case the report keeps both objectives visible.
std::pair<FactoredSolution, RankReductionReport> reduce_to_rank_of_A(
    const FactoredSolution& sol, const ProblemInstance& inst,
    double tau_rank = kDefaultRankTol, bool renormalize = false);

namespace detail {

// Symmetric vectorization with sqrt(2)-scaled off-diagonals, so that
// dot(svec(A), svec(B)) = tr(A B).
Eigen::VectorXd svec(const Eigen::MatrixXd& m);
Eigen::MatrixXd unsvec(const Eigen::VectorXd& v, int k);

// Unit right-singular vector of least singular value, plus the residual
// ||M y|| / max(sigma_max, tiny) it attains.
std::pair<Eigen::VectorXd, double> least_singular_direction(const Eigen::MatrixXd& m);

// Count of eigenvalues above tau_rank times the largest absolute eigenvalue.
int numerical_rank(const Eigen::MatrixXd& sym, double tau_rank);

}  // namespace detail

}  // namespace gk

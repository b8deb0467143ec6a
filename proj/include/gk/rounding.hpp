#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "gk/instance.hpp"
#include "gk/solver.hpp"

namespace gk {

class Rng;

// Entries are exactly +1 or -1.
using Signs = Eigen::VectorXi;

struct SignVector {
  Signs x;
  double value = 0.0;  // x^T A x
};

struct RoundingSummary {
  long long trials = 0;
  double mean_value = 0.0;
  double std_error = 0.0;
  SignVector best;
  double guaranteed_ratio = 0.0;
  double achieved_ratio = 0.0;  // mean_value / relaxation objective
  // The 2/(pi*gamma(k)) guarantee assumes unit rows; false in the subunit
  // state, where achieved_ratio is still reported as an empirical quantity.
  bool bound_applicable = true;
};

// x^T A x for a +-1 vector.
double iqp_value(const ProblemInstance& inst, const Signs& x);

// sign(X g) for a given direction, with sign(0) = +1.
Signs round_with_direction(const FactoredSolution& sol, const Eigen::VectorXd& g);

// Draws g uniformly on the sphere from the caller's generator, then rounds.
Signs round_once(const FactoredSolution& sol, Rng& rng);

// Exact E_g[x^T A x] for hyperplane rounding, via Grothendieck's identity
// E[sgn(u.g) sgn(v.g)] = (2/pi) asin(u.v). Requires unit rows; inner products
// are clamped to [-1, 1] before asin.
double expected_value_exact(const FactoredSolution& sol, const ProblemInstance& inst);

// Repeated rounding with mean/stderr tracking and best-of-trials selection.
// Worker w draws from substream mix_seed(seed, w); partial results merge in
// worker order, so output depends only on (seed, workers), not scheduling.
RoundingSummary monte_carlo_round(const FactoredSolution& sol, const ProblemInstance& inst,
                                  long long trials, std::uint64_t seed, int workers = 1);

// gamma(k) = (2/k) * (Gamma((k+1)/2) / Gamma(k/2))^2, in (2/pi, 1).
double gamma(int k);

// 2 / (pi * gamma(k)): the rounding guarantee. 1 at k = 1, decreasing to 2/pi.
double guaranteed_ratio(int k);

// Entrywise f(X_i . X_j) with f(t) = (2/pi)(asin(t) - t/gamma(k)); PSD for
// unit-row X, which is the heart of the ratio lemma.
Eigen::MatrixXd positive_type_matrix(const FactoredSolution& sol);

}  // namespace gk

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "gk/instance.hpp"
#include "gk/oracle.hpp"
#include "gk/rounding.hpp"
#include "gk/solver.hpp"

namespace gk {

inline constexpr int kAutoInstanceSize = 0;  // resolves to n = p^3
inline constexpr int kDefaultDirections = 256;

struct GapRecord {
  int p = 0;
  int n = 0;
  std::uint64_t seed = 0;
  double sdp_value = 0.0;
  double discrete_value = 0.0;
  double ratio = 0.0;
  std::string method;  // "oracle" or "heuristic"
};

struct GapInstance {
  ProblemInstance instance;
  Eigen::MatrixXd vectors;  // n rows, unit vectors in R^p
};

// A_ij = (1/n) v_i . v_j for v_i uniform on the sphere; the diagonal is set
// to exactly 1/n. PSD of rank <= p by construction (still validated).
GapInstance gen_gap_instance(int p, int n, std::uint64_t seed);

// Best cut found from `directions` sampled directions, each refined by
// alternating c <- normalize(sum_i x_i v_i), x <- sign(V c) to a fixed point
// (at most 100 rounds; both half-steps are exact maximizations, so the value
// never decreases). A lower bound on the true discrete optimum.
SignVector heuristic_best_cut(const Eigen::MatrixXd& vectors, const ProblemInstance& inst,
                              int directions, std::uint64_t seed);

// E|v^T c| for fixed unit c and uniform v on the sphere in R^p:
// Gamma(p/2) / (sqrt(pi) Gamma((p+1)/2)), i.e. sqrt(2/(pi p gamma(p))).
double expected_abs_projection(int p);

// One experiment cell: generate, solve the relaxation (its value is floored
// by the explicit feasible point S = VV^T), then take the exact optimum when
// n fits the oracle and the direction heuristic otherwise.
GapRecord empirical_gap(int p, int n, std::uint64_t seed, const SolverConfig& cfg = {},
                        int directions = kDefaultDirections,
                        int oracle_limit = kDefaultOracleLimit);

}  // namespace gk

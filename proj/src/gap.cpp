#include "gk/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gk/errors.hpp"
#include "gk/rng.hpp"

namespace gk {

namespace {

Signs project_signs(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& c) {
  const Eigen::VectorXd proj = vectors * c;
  Signs x(vectors.rows());
  for (int i = 0; i < proj.size(); ++i) x(i) = proj(i) >= 0.0 ? 1 : -1;
  return x;
}

}  // namespace

GapInstance gen_gap_instance(int p, int n, std::uint64_t seed) {
  if (p < 1) throw BadPError("p must be at least 1");
  if (n < 1) throw ConfigError("n must be at least 1");

  Rng rng(seed);
  Eigen::MatrixXd vectors(n, p);
  for (int i = 0; i < n; ++i) vectors.row(i) = rng.unit_vector(p).transpose();

  Eigen::MatrixXd a = (vectors * vectors.transpose()) / static_cast<double>(n);
  a.diagonal().setConstant(1.0 / n);
  return {validate(a), std::move(vectors)};
}

SignVector heuristic_best_cut(const Eigen::MatrixXd& vectors, const ProblemInstance& inst,
                              int directions, std::uint64_t seed) {
  if (directions < 1) throw ConfigError("directions must be at least 1");
  if (vectors.rows() != inst.n()) {
    std::ostringstream msg;
    msg << "vectors have " << vectors.rows() << " rows against " << inst.n() << "-dim instance";
    throw DimensionMismatchError(msg.str());
  }
  const int p = static_cast<int>(vectors.cols());

  Rng rng(seed);
  SignVector best;
  for (int d = 0; d < directions; ++d) {
    Signs x = project_signs(vectors, rng.unit_vector(p));
    for (int round = 0; round < 100; ++round) {
      Eigen::VectorXd m = vectors.transpose() * x.cast<double>();
      const double norm = m.norm();
      if (norm == 0.0) break;
      Signs next = project_signs(vectors, m / norm);
      if (next == x) break;
      x = std::move(next);
    }
    const double value = iqp_value(inst, x);
    if (d == 0 || value > best.value) best = {std::move(x), value};
  }
  return best;
}

double expected_abs_projection(int p) {
  if (p < 1) throw BadPError("p must be at least 1");
  const double half = 0.5 * p;
  return std::exp(std::lgamma(half) - std::lgamma(half + 0.5)) / std::sqrt(std::numbers::pi);
}

GapRecord empirical_gap(int p, int n, std::uint64_t seed, const SolverConfig& cfg, int directions,
                        int oracle_limit) {
  if (p < 1) throw BadPError("p must be at least 1");
  if (n == kAutoInstanceSize) {
    const long long cube = static_cast<long long>(p) * p * p;
    if (cube > std::numeric_limits<int>::max())
      throw TooLargeError("n = p^3 overflows the instance size");
    n = static_cast<int>(cube);
  }

  const GapInstance gen = gen_gap_instance(p, n, seed);

  SolverConfig solver_cfg = cfg;
  solver_cfg.seed = mix_seed(seed, 1);
  const FactoredSolution sol = solve_relaxation(gen.instance, solver_cfg);

  // S = VV^T is feasible (unit diagonal), so its value floors the SDP value;
  // this also catches the coordinate-ascent solver stalling below it.
  const double feasible_point =
      gen.instance.a().cwiseProduct(gen.vectors * gen.vectors.transpose()).sum();
  const double sdp_value = std::max(sol.objective, feasible_point);

  GapRecord rec;
  rec.p = p;
  rec.n = n;
  rec.seed = seed;
  rec.sdp_value = sdp_value;
  if (n <= oracle_limit) {
    rec.discrete_value = brute_force_max(gen.instance, oracle_limit).value;
    rec.method = "oracle";
  } else {
    rec.discrete_value =
        heuristic_best_cut(gen.vectors, gen.instance, directions, mix_seed(seed, 2)).value;
    rec.method = "heuristic";
  }
  rec.ratio = rec.discrete_value / rec.sdp_value;
  return rec;
}

}  // namespace gk

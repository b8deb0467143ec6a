#include "gk/rounding.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "gk/errors.hpp"
#include "gk/rng.hpp"

namespace gk {

namespace {

constexpr double kPi = std::numbers::pi;

struct WorkerResult {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double best_value = 0.0;
  Signs best_x;
};

WorkerResult run_trials(const FactoredSolution& sol, const Eigen::MatrixXd& a, long long trials,
                        std::uint64_t worker_seed) {
  Rng rng(worker_seed);
  WorkerResult out;
  Eigen::VectorXd xd(sol.n());
  for (long long t = 0; t < trials; ++t) {
    const Signs x = round_once(sol, rng);
    xd = x.cast<double>();
    const double value = (a * xd).dot(xd);

    ++out.count;
    const double delta = value - out.mean;
    out.mean += delta / static_cast<double>(out.count);
    out.m2 += delta * (value - out.mean);

    if (out.count == 1 || value > out.best_value) {
      out.best_value = value;
      out.best_x = x;
    }
  }
  return out;
}

}  // namespace

double iqp_value(const ProblemInstance& inst, const Signs& x) {
  if (x.size() != inst.n()) {
    std::ostringstream msg;
    msg << "sign vector of length " << x.size() << " against " << inst.n() << "-dim instance";
    throw DimensionMismatchError(msg.str());
  }
  for (int i = 0; i < x.size(); ++i)
    if (x(i) != 1 && x(i) != -1) {
      std::ostringstream msg;
      msg << "entry " << i << " is " << x(i) << ", expected +1 or -1";
      throw BadEntriesError(msg.str());
    }
  const Eigen::VectorXd xd = x.cast<double>();
  return (inst.a() * xd).dot(xd);
}

Signs round_with_direction(const FactoredSolution& sol, const Eigen::VectorXd& g) {
  if (g.size() != sol.k()) {
    std::ostringstream msg;
    msg << "direction of length " << g.size() << " against factor width " << sol.k();
    throw DimensionMismatchError(msg.str());
  }
  const Eigen::VectorXd proj = sol.x * g;
  Signs x(sol.n());
  for (int i = 0; i < sol.n(); ++i) x(i) = proj(i) >= 0.0 ? 1 : -1;  // sign(0) = +1
  return x;
}

Signs round_once(const FactoredSolution& sol, Rng& rng) {
  return round_with_direction(sol, rng.unit_vector(sol.k()));
}

double expected_value_exact(const FactoredSolution& sol, const ProblemInstance& inst) {
  if (inst.n() != sol.n()) {
    std::ostringstream msg;
    msg << "instance is " << inst.n() << "-dimensional but solution has " << sol.n() << " rows";
    throw DimensionMismatchError(msg.str());
  }
  const double residual = feasibility_residual(sol);
  if (residual > kDefaultFeasTol) {
    std::ostringstream msg;
    msg << "rows are not unit (residual " << residual
        << "); the arcsin closed form requires unit rows";
    throw SubunitStateError(msg.str());
  }
  Eigen::MatrixXd gram = (sol.x * sol.x.transpose()).cwiseMin(1.0).cwiseMax(-1.0);
  // E[x_i x_i] = 1 exactly; asin's infinite slope at 1 would otherwise turn
  // the ~1e-16 row-norm noise into ~1e-8 of error per diagonal entry.
  gram.diagonal().setOnes();
  return (2.0 / kPi) * (inst.a().array() * gram.array().asin()).sum();
}

RoundingSummary monte_carlo_round(const FactoredSolution& sol, const ProblemInstance& inst,
                                  long long trials, std::uint64_t seed, int workers) {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (inst.n() != sol.n()) {
    std::ostringstream msg;
    msg << "instance is " << inst.n() << "-dimensional but solution has " << sol.n() << " rows";
    throw DimensionMismatchError(msg.str());
  }
  if (static_cast<long long>(workers) > trials) workers = static_cast<int>(trials);

  // Trials are split as evenly as possible; worker w always gets the same
  // chunk and substream, so the summary is a pure function of (seed, workers).
  std::vector<WorkerResult> parts(workers);
  const long long base = trials / workers;
  const long long extra = trials % workers;
  const Eigen::MatrixXd& a = inst.a();

  if (workers == 1) {
    parts[0] = run_trials(sol, a, trials, mix_seed(seed, 0));
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const long long chunk = base + (w < extra ? 1 : 0);
      pool.emplace_back([&, w, chunk] { parts[w] = run_trials(sol, a, chunk, mix_seed(seed, w)); });
    }
    for (auto& th : pool) th.join();
  }

  WorkerResult total;
  for (const WorkerResult& part : parts) {
    if (part.count == 0) continue;
    if (total.count == 0) {
      total = part;
      continue;
    }
    const double delta = part.mean - total.mean;
    const long long n = total.count + part.count;
    total.mean += delta * static_cast<double>(part.count) / static_cast<double>(n);
    total.m2 += part.m2 + delta * delta * static_cast<double>(total.count) *
                              static_cast<double>(part.count) / static_cast<double>(n);
    total.count = n;
    if (part.best_value > total.best_value) {
      total.best_value = part.best_value;
      total.best_x = part.best_x;
    }
  }

  RoundingSummary summary;
  summary.trials = trials;
  summary.mean_value = total.mean;
  summary.std_error =
      trials > 1 ? std::sqrt(total.m2 / static_cast<double>(trials - 1) /
                             static_cast<double>(trials))
                 : 0.0;
  summary.best.x = total.best_x;
  summary.best.value = total.best_value;
  summary.guaranteed_ratio = guaranteed_ratio(sol.k());
  const double obj = std::isfinite(sol.objective) ? sol.objective : objective(inst, sol);
  summary.achieved_ratio = summary.mean_value / obj;
  summary.bound_applicable = feasibility_residual(sol) <= kDefaultFeasTol;
  return summary;
}

double gamma(int k) {
  if (k < 1) throw BadKError("k must be at least 1");
  const double half = 0.5 * k;
  return (2.0 / k) * std::exp(2.0 * (std::lgamma(half + 0.5) - std::lgamma(half)));
}

double guaranteed_ratio(int k) { return 2.0 / (kPi * gamma(k)); }

Eigen::MatrixXd positive_type_matrix(const FactoredSolution& sol) {
  const double residual = feasibility_residual(sol);
  if (residual > kDefaultFeasTol) {
    std::ostringstream msg;
    msg << "rows are not unit (residual " << residual
        << "); f is of positive type on the sphere only";
    throw SubunitStateError(msg.str());
  }
  const double g = gamma(sol.k());
  const Eigen::MatrixXd gram =
      (sol.x * sol.x.transpose()).cwiseMin(1.0).cwiseMax(-1.0);
  Eigen::MatrixXd f =
      (2.0 / kPi) * (gram.array().asin() - gram.array() / g).matrix();
  return 0.5 * (f + f.transpose());
}

}  // namespace gk

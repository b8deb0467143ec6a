#include "gk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gk/errors.hpp"
#include "gk/rank_reduction.hpp"
#include "gk/rng.hpp"

namespace gk {

namespace {

void check_config(const SolverConfig& cfg, int n) {
  if (cfg.tol_obj <= 0) throw ConfigError("tol_obj must be positive");
  if (cfg.max_sweeps < 1) throw ConfigError("max_sweeps must be at least 1");
  if (cfg.factor_width != SolverConfig::kAutoWidth &&
      (cfg.factor_width < 1 || cfg.factor_width > n)) {
    std::ostringstream msg;
    msg << "factor_width " << cfg.factor_width << " out of range [1, " << n << "]";
    throw ConfigError(msg.str());
  }
}

}  // namespace

FactoredSolution solve_relaxation(const ProblemInstance& inst, const SolverConfig& cfg) {
  const int n = inst.n();
  check_config(cfg, n);
  const int k = cfg.factor_width == SolverConfig::kAutoWidth
                    ? std::min(n, max_rank_bound(n) + 1)
                    : cfg.factor_width;
  const Eigen::MatrixXd& a = inst.a();

  Rng rng(cfg.seed);
  Eigen::MatrixXd x(n, k);
  for (int i = 0; i < n; ++i) x.row(i) = rng.unit_vector(k).transpose();

  FactoredSolution sol;
  sol.stats.seed = cfg.seed;
  sol.stats.converged = false;

  double obj = (a * x).cwiseProduct(x).sum();
  sol.stats.objective_trace.push_back(obj);

  Eigen::VectorXd g(k);
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      g.noalias() = (a.row(i) * x).transpose();
      g -= a(i, i) * x.row(i).transpose();
      const double norm = g.norm();
      if (norm > 0) x.row(i) = g.transpose() / norm;
    }
    const double prev = obj;
    obj = (a * x).cwiseProduct(x).sum();
    sol.stats.sweeps = sweep;
    sol.stats.objective_trace.push_back(obj);
    if (obj - prev < cfg.tol_obj * std::max(1.0, std::abs(prev))) {
      sol.stats.converged = true;
      break;
    }
  }

  sol.x = std::move(x);
  sol.objective = objective(inst, sol);
  return sol;
}

double objective(const ProblemInstance& inst, const FactoredSolution& sol) {
  if (inst.n() != sol.n()) {
    std::ostringstream msg;
    msg << "instance is " << inst.n() << "-dimensional but solution has " << sol.n() << " rows";
    throw DimensionMismatchError(msg.str());
  }
  return (inst.a() * sol.x).cwiseProduct(sol.x).sum();
}

double feasibility_residual(const FactoredSolution& sol) {
  return (sol.x.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff();
}

FactoredSolution gram_to_factor(const Eigen::MatrixXd& s, double tau_rank) {
  if (s.rows() == 0 || s.rows() != s.cols()) {
    std::ostringstream msg;
    msg << "expected a nonempty square matrix, got " << s.rows() << "x" << s.cols();
    throw NotSquareError(msg.str());
  }
  const int n = static_cast<int>(s.rows());
  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = lambda(n - 1);
  const double lambda_abs_max = lambda.cwiseAbs().maxCoeff();
  if (lambda(0) < -kDefaultPsdTol * lambda_abs_max) {
    std::ostringstream msg;
    msg << "Gram matrix is not PSD: most negative eigenvalue " << lambda(0);
    throw NotPsdError(msg.str(), lambda(0));
  }

  int kept = 0;
  for (int i = 0; i < n; ++i)
    if (lambda(i) > tau_rank * lambda_max) ++kept;

  FactoredSolution sol;
  if (kept == 0) {
    sol.x = Eigen::MatrixXd::Zero(n, 1);
  } else {
    sol.x.resize(n, kept);
    for (int c = 0; c < kept; ++c) {
      const int src = n - 1 - c;  // descending eigenvalue order
      sol.x.col(c) = eig.eigenvectors().col(src) * std::sqrt(lambda(src));
    }
  }
  sol.subunit = feasibility_residual(sol) > kDefaultFeasTol;
  return sol;
}

}  // namespace gk

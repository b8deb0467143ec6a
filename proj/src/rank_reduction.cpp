#include "gk/rank_reduction.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gk/errors.hpp"

namespace gk {

long long triangular(int k) {
  if (k < 0) return 0;
  return static_cast<long long>(k) * (k + 1) / 2;
}

int max_rank_bound(int n) {
  if (n < 1) return 0;
  int k = static_cast<int>(std::floor((std::sqrt(8.0 * n + 9.0) - 1.0) / 2.0));
  while (triangular(k + 1) <= n + 1) ++k;
  while (k > 0 && triangular(k) > n + 1) --k;
  return k;
}

FactoredSolution reduce_rank_step(const FactoredSolution& sol, const ProblemInstance& inst,
                                  double tau_rank) {
  const int n = sol.n();
  const int k = sol.k();
  if (inst.n() != n) {
    std::ostringstream msg;
    msg << "instance is " << inst.n() << "-dimensional but solution has " << n << " rows";
    throw DimensionMismatchError(msg.str());
  }
  if (triangular(k) <= n + 1) {
    std::ostringstream msg;
    msg << "factor width " << k << " already satisfies k(k+1)/2 <= n+1 at n = " << n
        << "; nothing to reduce";
    throw PreconditionError(msg.str());
  }

  const Eigen::MatrixXd& x = sol.x;

  // One linear constraint per diagonal entry plus one for the objective. With
  // triangular(k) unknowns and only n+1 rows the system is underdetermined, so
  // an exact nullspace direction exists.
  Eigen::MatrixXd constraints(n + 1, triangular(k));
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd outer = x.row(i).transpose() * x.row(i);
    constraints.row(i) = detail::svec(outer).transpose();
  }
  Eigen::MatrixXd b = x.transpose() * inst.a() * x;
  b = 0.5 * (b + b.transpose());
  constraints.row(n) = detail::svec(b).transpose();

  auto [y_vec, residual] = detail::least_singular_direction(constraints);
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "nullspace direction residual " << residual << " exceeds 1e-8";
    throw NullspaceError(msg.str());
  }
  Eigen::MatrixXd y = detail::unsvec(y_vec, k);

  // Orient Y so its dominant eigenvalue is positive, then scale that
  // eigenvalue to 1. I - Y is then PSD with spectrum in [0, 2] and at least
  // one exact zero, so the updated Gram matrix loses a rank.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(y);
  const Eigen::VectorXd& mu = eig.eigenvalues();  // ascending
  if (std::abs(mu(0)) > mu(k - 1)) y = -y;
  const double top = std::max(std::abs(mu(0)), mu(k - 1));
  y /= top;

  Eigen::MatrixXd gram = x * (Eigen::MatrixXd::Identity(k, k) - y) * x.transpose();
  gram = 0.5 * (gram + gram.transpose());

  FactoredSolution next = gram_to_factor(gram, tau_rank);
  next.stats = sol.stats;
  next.objective = objective(inst, next);
  return next;
}

std::pair<FactoredSolution, RankReductionReport> reduce_rank(const FactoredSolution& sol,
                                                             const ProblemInstance& inst,
                                                             double tau_rank) {
  if (sol.subunit)
    throw SubunitStateError("rank reduction expects unit-norm rows; renormalize first");
  if (inst.n() != sol.n()) {
    std::ostringstream msg;
    msg << "instance is " << inst.n() << "-dimensional but solution has " << sol.n() << " rows";
    throw DimensionMismatchError(msg.str());
  }

  RankReductionReport report;
  report.rank_before = sol.k();
  report.objective_before = objective(inst, sol);

  const Eigen::VectorXd diag0 = sol.x.rowwise().squaredNorm();
  FactoredSolution cur = sol;

  while (triangular(cur.k()) > sol.n() + 1) {
    const int prev_width = cur.k();
    cur = reduce_rank_step(cur, inst, tau_rank);
    ++report.steps;
    if (cur.k() >= prev_width)
      throw RankDetectionError("rank reduction step failed to decrease the factor width");
  }

  // Drift is measured before the cosmetic renormalization so it reflects the
  // reduction itself.
  const double obj_pre = objective(inst, cur);
  report.objective_drift = std::abs(obj_pre - report.objective_before) /
                           std::max(1.0, std::abs(report.objective_before));
  report.diag_drift = (cur.x.rowwise().squaredNorm() - diag0).cwiseAbs().maxCoeff();

  if (report.steps > 0) {
    for (int i = 0; i < cur.n(); ++i) {
      const double norm = cur.x.row(i).norm();
      if (norm > 0) cur.x.row(i) /= norm;
    }
    cur.subunit = false;
    cur.objective = objective(inst, cur);
  } else if (!std::isfinite(cur.objective)) {
    cur.objective = report.objective_before;
  }

  report.rank_after = cur.k();
  report.objective_after = cur.objective;
  report.subunit = cur.subunit;
  return {std::move(cur), report};
}

std::pair<FactoredSolution, RankReductionReport> reduce_to_rank_of_A(const FactoredSolution& sol,
                                                                     const ProblemInstance& inst,
                                                                     double tau_rank,
                                                                     bool renormalize) {
  if (inst.n() != sol.n()) {
    std::ostringstream msg;
    msg << "instance is " << inst.n() << "-dimensional but solution has " << sol.n() << " rows";
    throw DimensionMismatchError(msg.str());
  }
  const int k = sol.k();
  const int rank_a = detail::numerical_rank(inst.a(), tau_rank);
  if (k <= rank_a) {
    std::ostringstream msg;
    msg << "factor width " << k << " does not exceed rank(A) = " << rank_a
        << "; nothing to project away";
    throw PreconditionError(msg.str());
  }

  RankReductionReport report;
  report.rank_before = k;
  report.objective_before = objective(inst, sol);
  report.steps = 1;

  Eigen::MatrixXd b = sol.x.transpose() * inst.a() * sol.x;
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  const double cutoff = tau_rank * scale;

  std::vector<int> keep;
  for (int i = k - 1; i >= 0; --i) {  // descending, largest eigenvalue first
    if (std::abs(lambda(i)) > cutoff) keep.push_back(i);
    if (scale > 0 && std::abs(lambda(i)) > cutoff / 10 && std::abs(lambda(i)) < cutoff * 10)
      report.rank_detection_ambiguous = true;
  }

  // Projecting the factor onto the kept eigenvectors of X^T A X keeps the
  // objective (the dropped eigenvalues are numerically zero) while row norms
  // can only shrink, hence the subunit state.
  FactoredSolution out;
  out.stats = sol.stats;
  if (keep.empty()) {
    out.x = Eigen::MatrixXd::Zero(sol.n(), 1);
  } else {
    Eigen::MatrixXd basis(k, static_cast<int>(keep.size()));
    for (int c = 0; c < static_cast<int>(keep.size()); ++c)
      basis.col(c) = eig.eigenvectors().col(keep[c]);
    out.x = sol.x * basis;
  }
  out.subunit = true;
  out.objective = objective(inst, out);

  report.diag_drift =
      (out.x.rowwise().squaredNorm() - sol.x.rowwise().squaredNorm()).cwiseAbs().maxCoeff();
  report.objective_drift = std::abs(out.objective - report.objective_before) /
                           std::max(1.0, std::abs(report.objective_before));

  if (renormalize) {
    for (int i = 0; i < out.n(); ++i) {
      const double norm = out.x.row(i).norm();
      if (norm > 0) out.x.row(i) /= norm;
    }
    out.subunit = feasibility_residual(out) > kDefaultFeasTol;
    out.objective = objective(inst, out);
  }

  report.rank_after = out.k();
  report.objective_after = out.objective;
  report.subunit = out.subunit;
  return {std::move(out), report};
}

namespace detail {

Eigen::VectorXd svec(const Eigen::MatrixXd& m) {
  const int k = static_cast<int>(m.rows());
  const double r2 = std::sqrt(2.0);
  Eigen::VectorXd v(triangular(k));
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    v(idx++) = m(j, j);
    for (int i = j + 1; i < k; ++i) v(idx++) = r2 * m(i, j);
  }
  return v;
}

Eigen::MatrixXd unsvec(const Eigen::VectorXd& v, int k) {
  if (v.size() != triangular(k)) {
    std::ostringstream msg;
    msg << "svec vector of length " << v.size() << " does not match order " << k;
    throw DimensionMismatchError(msg.str());
  }
  const double inv_r2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd m(k, k);
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    m(j, j) = v(idx++);
    for (int i = j + 1; i < k; ++i) {
      const double val = inv_r2 * v(idx++);
      m(i, j) = val;
      m(j, i) = val;
    }
  }
  return m;
}

std::pair<Eigen::VectorXd, double> least_singular_direction(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  Eigen::VectorXd y = svd.matrixV().col(m.cols() - 1);
  const double sigma_max = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  const double denom = std::max(sigma_max, std::numeric_limits<double>::min());
  const double residual = (m * y).norm() / denom;
  return {std::move(y), residual};
}

int numerical_rank(const Eigen::MatrixXd& sym, double tau_rank) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (sym + sym.transpose()),
                                                     Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  if (scale == 0) return 0;
  int r = 0;
  for (int i = 0; i < lambda.size(); ++i)
    if (std::abs(lambda(i)) > tau_rank * scale) ++r;
  return r;
}

}  // namespace detail

}  // namespace gk

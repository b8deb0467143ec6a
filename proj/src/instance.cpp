#include "gk/instance.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gk/errors.hpp"
#include "gk/rng.hpp"

namespace gk {

ProblemInstance validate(const Eigen::MatrixXd& raw, double tau_psd) {
  if (raw.rows() == 0 || raw.rows() != raw.cols()) {
    std::ostringstream msg;
    msg << "expected a nonempty square matrix, got " << raw.rows() << "x" << raw.cols();
    throw NotSquareError(msg.str());
  }
  if (!raw.allFinite()) throw NotFiniteError("matrix has non-finite entries");

  Eigen::MatrixXd a = 0.5 * (raw + raw.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues().minCoeff();
  const double lambda_abs_max = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (lambda_min < -tau_psd * lambda_abs_max) {
    std::ostringstream msg;
    msg << "matrix is not PSD: most negative eigenvalue " << lambda_min
        << " exceeds tolerance " << -tau_psd * lambda_abs_max;
    throw NotPsdError(msg.str(), lambda_min);
  }
  return ProblemInstance(std::move(a));
}

ProblemInstance gen_laplacian(const std::vector<WeightedEdge>& edges, int n) {
  if (n < 1) throw NotSquareError("laplacian needs n >= 1");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.i == e.j) {
      std::ostringstream msg;
      msg << "edge (" << e.i << ", " << e.j << ") out of range for n=" << n;
      throw IndexOutOfRangeError(msg.str());
    }
    if (e.weight < 0 || !std::isfinite(e.weight)) {
      std::ostringstream msg;
      msg << "edge (" << e.i << ", " << e.j << ") has invalid weight " << e.weight;
      throw NegativeWeightError(msg.str());
    }
    l(e.i, e.j) -= e.weight;
    l(e.j, e.i) -= e.weight;
    l(e.i, e.i) += e.weight;
    l(e.j, e.j) += e.weight;
  }
  return ProblemInstance(std::move(l));
}

ProblemInstance gen_random_gram(int n, int r, std::uint64_t seed) {
  if (n < 1) throw NotSquareError("gram generator needs n >= 1");
  if (r < 1 || r > n) {
    std::ostringstream msg;
    msg << "rank " << r << " out of range [1, " << n << "]";
    throw BadRankError(msg.str());
  }
  Rng rng(seed);
  const Eigen::MatrixXd b = rng.normal_matrix(n, r);
  Eigen::MatrixXd raw = b * b.transpose();
  Eigen::MatrixXd a = 0.5 * (raw + raw.transpose());
  return ProblemInstance(std::move(a));
}

}  // namespace gk

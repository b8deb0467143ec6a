#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace gk {

// Relative tolerance for accepting a matrix as PSD: the smallest eigenvalue
// must be >= -kDefaultPsdTol times the largest absolute eigenvalue.
inline constexpr double kDefaultPsdTol = 1e-8;
// Relative cutoff below which an eigenvalue counts as numerically zero.
inline constexpr double kDefaultRankTol = 1e-10;
// Slack on | ||row||^2 - 1 | for a row to count as unit.
inline constexpr double kDefaultFeasTol = 1e-8;

struct WeightedEdge {
  int i;
  int j;
  double weight;
};

class ProblemInstance;

ProblemInstance validate(const Eigen::MatrixXd& raw, double tau_psd);
ProblemInstance gen_laplacian(const std::vector<WeightedEdge>& edges, int n);
ProblemInstance gen_random_gram(int n, int r, std::uint64_t seed);

// Symmetric PSD weight matrix. Immutable once constructed; construct through
// validate() or one of the generators, all of which enforce the PSD check.
class ProblemInstance {
 public:
  int n() const { return static_cast<int>(a_.rows()); }
  const Eigen::MatrixXd& a() const { return a_; }

 private:
  explicit ProblemInstance(Eigen::MatrixXd a) : a_(std::move(a)) {}
  Eigen::MatrixXd a_;

  friend ProblemInstance validate(const Eigen::MatrixXd&, double);
  friend ProblemInstance gen_laplacian(const std::vector<WeightedEdge>&, int);
  friend ProblemInstance gen_random_gram(int, int, std::uint64_t);
};

// Symmetrizes the input as (M + M^T)/2, then accepts iff PSD within tau_psd.
// Throws NotSquareError, NotFiniteError, or NotPsdError (which carries the
// most negative eigenvalue).
ProblemInstance validate(const Eigen::MatrixXd& raw, double tau_psd = kDefaultPsdTol);

// Graph Laplacian: L_ii = sum_j w_ij, L_ij = -w_ij. PSD by construction.
ProblemInstance gen_laplacian(const std::vector<WeightedEdge>& edges, int n);

// A = B B^T with B n-by-r filled with seeded standard normals; the result
// has numerical rank r almost surely and is bit-identical for a fixed seed.
ProblemInstance gen_random_gram(int n, int r, std::uint64_t seed);

}  // namespace gk

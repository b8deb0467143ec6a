#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace gk {

// Mixes a base seed with a stream index into a decorrelated 64-bit seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic random source. Every random choice in the library flows
// through this class so that a run is reproducible from a single integer
// seed. Matrix fills are row-major; that order is part of the contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double normal();
  double uniform01();

  Eigen::VectorXd normal_vector(int dim);
  Eigen::MatrixXd normal_matrix(int rows, int cols);

  // Uniform direction on the unit sphere (normalized Gaussian vector).
  Eigen::VectorXd unit_vector(int dim);

  // Independent stream for a worker or sub-task. Derivation depends only on
  // the construction seed, not on how much this Rng has already consumed.
  Rng substream(std::uint64_t index) const { return Rng(mix_seed(seed_, index)); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace gk

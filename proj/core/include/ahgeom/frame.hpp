#pragma once

// Orthonormal frames at a point, with respect to an arbitrary metric.
//
// Random vectors come from a FrameSampler: std::mt19937_64 (an algorithm
// pinned by the C++ standard) whose raw 64-bit output is mapped to a double
// in [-1, 1) as (x >> 11) * 2^-52 - 1. Standard distributions are not used
// because their algorithms are implementation-defined. Same seed, same
// dimension, same call sequence: bit-identical samples on every platform.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace ahg {

class FrameSampler {
 public:
  FrameSampler(std::uint64_t seed, std::size_t dim);

  /// Independent stream for parallel worker `worker`, derived from
  /// (base_seed, worker) with a splitmix64 step.
  static FrameSampler for_worker(std::uint64_t base_seed, std::size_t worker, std::size_t dim);

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Uniform in [-1, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// dim() components, each uniform in [-1, 1).
  Eigen::VectorXd vector();

 private:
  std::uint64_t seed_;
  std::size_t dim_;
  std::mt19937_64 engine_;
};

double inner(const Eigen::MatrixXd& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& x);

/// Modified Gram-Schmidt in the metric g with one reorthogonalization pass.
/// Throws RankError when a vector's residual drops below 1e-10 of its
/// original length.
std::vector<Eigen::VectorXd> gram_schmidt(std::span<const Eigen::VectorXd> vectors,
                                          const Eigen::MatrixXd& g);

/// Max-norm residuals of J^2 + I and of J^T g J - g (the latter relative to
/// max |g|).
std::pair<double, double> hermitian_residuals(const Eigen::MatrixXd& g, const Eigen::MatrixXd& j);

/// J-adapted orthonormal frame (e1, Je1, ..., em, Jem) built from the
/// coordinate basis. Throws StructureError if (g, J) is not almost
/// Hermitian to `tol`.
std::vector<Eigen::VectorXd> adapted_hermitian_frame(const Eigen::MatrixXd& g,
                                                     const Eigen::MatrixXd& j, double tol = 1e-9);

/// Same with e1, e2, ... drawn at random.
std::vector<Eigen::VectorXd> adapted_hermitian_frame(const Eigen::MatrixXd& g,
                                                     const Eigen::MatrixXd& j,
                                                     FrameSampler& sampler, double tol = 1e-9);

/// k random g-orthonormal vectors, each g-orthogonal to every constraint.
/// Throws DimensionError if k + rank(constraints) exceeds the dimension.
std::vector<Eigen::VectorXd> sample_orthonormal_set(const Eigen::MatrixXd& g, std::size_t k,
                                                    FrameSampler& sampler,
                                                    std::span<const Eigen::VectorXd> constraints = {});

}  // namespace ahg

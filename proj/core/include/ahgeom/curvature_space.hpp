#pragma once

// The vector space of algebraic curvature tensors in dimension n.
//
// A tensor is stored through the symmetric matrix M over index pairs
// A = (a < b): R(a, b, c, d) = M_AB. Coordinates are the entries of M with
// off-diagonal ones scaled by sqrt(2), so the Euclidean norm of the
// coordinate vector equals the Frobenius norm of M (and half the Frobenius
// norm of the full n^4 tensor). The first Bianchi identity cuts out one
// direction per 4-subset {a < b < c < d}; the remaining n^2 (n^2 - 1) / 12
// directions are spanned by an explicit orthonormal basis.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "ahgeom/tensor.hpp"

namespace ahg {

class CurvatureSpace {
 public:
  explicit CurvatureSpace(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  std::size_t coordinate_count() const noexcept { return coord_count_; }
  /// n^2 (n^2 - 1) / 12.
  std::size_t dim() const noexcept { return static_cast<std::size_t>(basis_.cols()); }

  /// coordinate_count() x dim(), orthonormal columns.
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }

  /// Pair-matrix coordinates of r; only the (a < b, c < d) components are read.
  Eigen::VectorXd coordinates(const PointTensor& r) const;
  /// Coefficients of r in the basis (orthogonal projection).
  Eigen::VectorXd coefficients(const PointTensor& r) const;

  PointTensor tensor_from_coordinates(const Eigen::VectorXd& coords) const;
  PointTensor tensor_from_coefficients(const Eigen::VectorXd& coeffs) const;

  /// The linear functional c -> R_c(x, y, z, u) as a row over coefficients.
  Eigen::RowVectorXd functional(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z, const Eigen::VectorXd& u) const;

 private:
  std::size_t pair_index(std::size_t a, std::size_t b) const { return pair_lookup_[a * n_ + b]; }
  std::size_t coord_index(std::size_t A, std::size_t B) const;
  Eigen::VectorXd wedge(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> pair_lookup_;
  std::size_t coord_count_;
  Eigen::MatrixXd basis_;
};

/// Linear constraints on a fixed number of unknowns. Rows are folded into a
/// compressed factor diag(sigma) V^T after every batch, so memory stays
/// bounded by the column count. Rank uses the cutoff
/// relative_cutoff * largest singular value.
class ConstraintSystem {
 public:
  explicit ConstraintSystem(std::size_t columns, double relative_cutoff = 1e-9);

  void add_rows(const Eigen::MatrixXd& rows);

  std::size_t columns() const noexcept { return columns_; }
  std::size_t row_count() const noexcept { return row_count_; }
  double relative_cutoff() const noexcept { return cutoff_; }
  std::size_t rank() const noexcept { return rank_; }
  const Eigen::VectorXd& singular_values() const noexcept { return sigma_; }

  /// columns() x (columns() - rank()), orthonormal.
  Eigen::MatrixXd null_space() const;

 private:
  std::size_t columns_;
  double cutoff_;
  std::size_t row_count_ = 0;
  std::size_t rank_ = 0;
  Eigen::MatrixXd factor_;  // compressed rows
  Eigen::VectorXd sigma_;
  Eigen::MatrixXd v_;
};

/// A rank-4 covariant tensor with the algebraic curvature symmetries
/// (both antisymmetries, pair exchange, first Bianchi) checked to 1e-10
/// relative on construction; throws StructureError otherwise.
class AlgebraicCurvatureTensor {
 public:
  explicit AlgebraicCurvatureTensor(PointTensor r);

  std::size_t dim() const noexcept { return r_.dim(); }
  const PointTensor& tensor() const noexcept { return r_; }
  double symmetry_residual() const noexcept { return residual_; }

 private:
  PointTensor r_;
  double residual_;
};

}  // namespace ahg

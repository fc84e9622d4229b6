#include "ahgeom/curvature_space.hpp"

#include <algorithm>
#include <cmath>

#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"

namespace ahg {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

CurvatureSpace::CurvatureSpace(std::size_t n) : n_(n), pair_lookup_(n * n, 0) {
  if (n < 2) throw DimensionError("curvature space needs dimension >= 2");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      pair_lookup_[a * n + b] = pairs_.size();
      pairs_.emplace_back(a, b);
    }
  const std::size_t p = pairs_.size();
  coord_count_ = p * (p + 1) / 2;

  // Coordinates touched by a Bianchi direction get a 2-dimensional
  // orthonormal complement inside their 3-dimensional block; every other
  // coordinate is a basis vector on its own.
  std::vector<bool> in_block(coord_count_, false);
  std::vector<Eigen::VectorXd> cols;
  auto unit = [&](std::initializer_list<std::pair<std::size_t, double>> entries) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(coord_count_));
    for (const auto& [i, x] : entries) v[static_cast<Eigen::Index>(i)] = x;
    return v;
  };
  std::vector<Eigen::VectorXd> block_cols;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          // Bianchi: M_{ab,cd} - M_{ac,bd} + M_{ad,bc} = 0.
          const std::size_t i1 = coord_index(pair_index(a, b), pair_index(c, d));
          const std::size_t i2 = coord_index(pair_index(a, c), pair_index(b, d));
          const std::size_t i3 = coord_index(pair_index(a, d), pair_index(b, c));
          in_block[i1] = in_block[i2] = in_block[i3] = true;
          const double s2 = 1.0 / kSqrt2;
          const double s6 = 1.0 / std::sqrt(6.0);
          block_cols.push_back(unit({{i1, s2}, {i2, s2}}));
          block_cols.push_back(unit({{i1, s6}, {i2, -s6}, {i3, -2.0 * s6}}));
        }
  for (std::size_t i = 0; i < coord_count_; ++i) {
    if (!in_block[i]) cols.push_back(unit({{i, 1.0}}));
  }
  cols.insert(cols.end(), block_cols.begin(), block_cols.end());
  basis_.resize(static_cast<Eigen::Index>(coord_count_), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) basis_.col(static_cast<Eigen::Index>(k)) = cols[k];
}

std::size_t CurvatureSpace::coord_index(std::size_t A, std::size_t B) const {
  if (A > B) std::swap(A, B);
  const std::size_t p = pairs_.size();
  // Row-major upper triangle.
  return A * p - A * (A - 1) / 2 + (B - A);
}

Eigen::VectorXd CurvatureSpace::coordinates(const PointTensor& r) const {
  if (r.dim() != n_ || r.rank() != 4) throw DimensionError("tensor does not match curvature space");
  Eigen::VectorXd out(static_cast<Eigen::Index>(coord_count_));
  const std::size_t p = pairs_.size();
  for (std::size_t A = 0; A < p; ++A)
    for (std::size_t B = A; B < p; ++B) {
      const auto [a, b] = pairs_[A];
      const auto [c, d] = pairs_[B];
      const double m = 0.5 * (r(a, b, c, d) + r(c, d, a, b));
      out[static_cast<Eigen::Index>(coord_index(A, B))] = A == B ? m : kSqrt2 * m;
    }
  return out;
}

Eigen::VectorXd CurvatureSpace::coefficients(const PointTensor& r) const {
  return basis_.transpose() * coordinates(r);
}

PointTensor CurvatureSpace::tensor_from_coordinates(const Eigen::VectorXd& coords) const {
  if (static_cast<std::size_t>(coords.size()) != coord_count_) {
    throw DimensionError("coordinate vector has wrong length");
  }
  PointTensor r = PointTensor::covariant4(n_);
  const std::size_t p = pairs_.size();
  for (std::size_t A = 0; A < p; ++A)
    for (std::size_t B = A; B < p; ++B) {
      const double s = coords[static_cast<Eigen::Index>(coord_index(A, B))];
      const double m = A == B ? s : s / kSqrt2;
      for (int swap_pairs = 0; swap_pairs < 2; ++swap_pairs) {
        const auto [i, j] = swap_pairs ? pairs_[B] : pairs_[A];
        const auto [k, l] = swap_pairs ? pairs_[A] : pairs_[B];
        r(i, j, k, l) = m;
        r(j, i, k, l) = -m;
        r(i, j, l, k) = -m;
        r(j, i, l, k) = m;
      }
    }
  return r;
}

PointTensor CurvatureSpace::tensor_from_coefficients(const Eigen::VectorXd& coeffs) const {
  if (static_cast<std::size_t>(coeffs.size()) != dim()) {
    throw DimensionError("coefficient vector has wrong length");
  }
  return tensor_from_coordinates(basis_ * coeffs);
}

Eigen::VectorXd CurvatureSpace::wedge(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd w(static_cast<Eigen::Index>(pairs_.size()));
  for (std::size_t A = 0; A < pairs_.size(); ++A) {
    const auto [a, b] = pairs_[A];
    w[static_cast<Eigen::Index>(A)] = x[static_cast<Eigen::Index>(a)] * y[static_cast<Eigen::Index>(b)] -
                                      x[static_cast<Eigen::Index>(b)] * y[static_cast<Eigen::Index>(a)];
  }
  return w;
}

Eigen::RowVectorXd CurvatureSpace::functional(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                              const Eigen::VectorXd& z,
                                              const Eigen::VectorXd& u) const {
  const auto len = static_cast<Eigen::Index>(n_);
  if (x.size() != len || y.size() != len || z.size() != len || u.size() != len) {
    throw DimensionError("functional arguments have wrong dimension");
  }
  const Eigen::VectorXd w = wedge(x, y);
  const Eigen::VectorXd v = wedge(z, u);
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(coord_count_));
  const std::size_t p = pairs_.size();
  for (std::size_t A = 0; A < p; ++A) {
    const auto iA = static_cast<Eigen::Index>(A);
    row[static_cast<Eigen::Index>(coord_index(A, A))] = w[iA] * v[iA];
    for (std::size_t B = A + 1; B < p; ++B) {
      const auto iB = static_cast<Eigen::Index>(B);
      row[static_cast<Eigen::Index>(coord_index(A, B))] = (w[iA] * v[iB] + w[iB] * v[iA]) / kSqrt2;
    }
  }
  return row * basis_;
}

ConstraintSystem::ConstraintSystem(std::size_t columns, double relative_cutoff)
    : columns_(columns), cutoff_(relative_cutoff), factor_(0, static_cast<Eigen::Index>(columns)) {
  if (columns == 0) throw DimensionError("constraint system needs at least one column");
}

void ConstraintSystem::add_rows(const Eigen::MatrixXd& rows) {
  if (static_cast<std::size_t>(rows.cols()) != columns_) {
    throw DimensionError("constraint rows have wrong width");
  }
  if (rows.rows() == 0) return;
  row_count_ += static_cast<std::size_t>(rows.rows());
  Eigen::MatrixXd stacked(factor_.rows() + rows.rows(), rows.cols());
  stacked << factor_, rows;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  sigma_ = svd.singularValues();
  v_ = svd.matrixV();
  const Eigen::Index keep = sigma_.size();
  factor_ = sigma_.head(keep).asDiagonal() * v_.leftCols(keep).transpose();
  rank_ = 0;
  if (keep > 0 && sigma_[0] > 0.0) {
    const double threshold = cutoff_ * sigma_[0];
    for (Eigen::Index i = 0; i < keep; ++i)
      if (sigma_[i] > threshold) ++rank_;
  }
}

Eigen::MatrixXd ConstraintSystem::null_space() const {
  const auto c = static_cast<Eigen::Index>(columns_);
  if (v_.size() == 0) return Eigen::MatrixXd::Identity(c, c);
  return v_.rightCols(c - static_cast<Eigen::Index>(rank_));
}

AlgebraicCurvatureTensor::AlgebraicCurvatureTensor(PointTensor r) : r_(std::move(r)) {
  if (r_.rank() != 4) throw DimensionError("curvature tensor must have rank 4");
  residual_ = curvature_symmetry_residual(r_);
  if (!(residual_ <= 1e-10)) {
    throw StructureError("tensor violates curvature symmetries (relative residual " +
                         std::to_string(residual_) + ")");
  }
}

}  // namespace ahg

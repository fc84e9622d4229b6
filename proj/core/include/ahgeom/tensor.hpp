#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ahg {

enum class Variance { Upper, Lower };

/// Dense tensor at a single chart point. Every index runs over the chart
/// dimension; components are stored row-major (last index fastest).
class PointTensor {
 public:
  PointTensor() = default;
  PointTensor(std::size_t dim, std::vector<Variance> variance);

  /// Rank-4 all-lower tensor, the layout used for R and C.
  static PointTensor covariant4(std::size_t dim);
  static PointTensor from_matrix(const Eigen::MatrixXd& m, Variance first, Variance second);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return variance_.size(); }
  Variance variance(std::size_t slot) const { return variance_.at(slot); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  template <class... I>
  double& operator()(I... idx) noexcept {
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const noexcept {
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }

  /// Raises a lower slot with g^{-1}.
  PointTensor raised(std::size_t slot, const Eigen::MatrixXd& g_inverse) const;
  /// Lowers an upper slot with g.
  PointTensor lowered(std::size_t slot, const Eigen::MatrixXd& g) const;

  /// Contracts a rank-2 tensor into a matrix (rank must be 2).
  Eigen::MatrixXd matrix() const;

  double max_abs() const noexcept;
  double frobenius() const noexcept;

  PointTensor& operator+=(const PointTensor& other);
  PointTensor& operator-=(const PointTensor& other);
  PointTensor& operator*=(double s);

 private:
  std::size_t flat(std::initializer_list<std::size_t> idx) const noexcept {
    std::size_t f = 0;
    for (std::size_t i : idx) f = f * dim_ + i;
    return f;
  }
  PointTensor moved_slot(std::size_t slot, const Eigen::MatrixXd& m, Variance to) const;

  std::size_t dim_ = 0;
  std::vector<Variance> variance_;
  std::vector<double> data_;
};

PointTensor operator-(PointTensor a, const PointTensor& b);
PointTensor operator+(PointTensor a, const PointTensor& b);
PointTensor operator*(double s, PointTensor a);

/// R(X, Y, Z, U) for an all-lower rank-4 tensor.
double contract4(const PointTensor& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& z, const Eigen::VectorXd& u);

/// The vector V with g(V, U) = R(X, Y, Z, U), i.e. R(X,Y)Z.
Eigen::VectorXd curvature_operator(const PointTensor& r, const Eigen::MatrixXd& g_inverse,
                                   const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& z);

}  // namespace ahg

#pragma once

// Levi-Civita connection and curvature of a chart at a point.
//
// Conventions:
//   R(X, Y) Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   R(X, Y, Z, U) = g(R(X, Y) Z, U)          stored as r(a, b, c, d)
//   S(Y, Z) = trace(X -> R(X, Y) Z)          so the unit n-sphere has S = (n-1) g
//   K(X, Y) = R(X, Y, Y, X) / (|X|^2 |Y|^2 - g(X, Y)^2)   (round sphere: +1)
// With this pair the Weyl combination below is totally trace-free.

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "ahgeom/chart.hpp"
#include "ahgeom/tensor.hpp"

namespace ahg {

/// Gamma^k_ij, symmetric in (i, j).
class Christoffel {
 public:
  explicit Christoffel(std::size_t dim) : dim_(dim), data_(dim * dim * dim, 0.0) {}
  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t k, std::size_t i, std::size_t j) noexcept {
    return data_[(k * dim_ + i) * dim_ + j];
  }
  double operator()(std::size_t k, std::size_t i, std::size_t j) const noexcept {
    return data_[(k * dim_ + i) * dim_ + j];
  }
  double max_abs() const noexcept;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

struct RicciScalar {
  Eigen::MatrixXd ricci;
  double scalar = 0.0;
};

/// Everything computed at one chart point.
struct PointData {
  std::vector<double> point;
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inverse;
  std::optional<Eigen::MatrixXd> j;
  Christoffel christoffel{0};
  PointTensor riemann;
  Eigen::MatrixXd ricci;
  double scalar = 0.0;
  std::optional<PointTensor> weyl;
};

Christoffel christoffel(const ManifoldChart& chart, std::span<const double> p);

/// All-lower curvature tensor, from exact second derivatives of the metric.
PointTensor riemann(const ManifoldChart& chart, std::span<const double> p);

RicciScalar ricci_scalar(const PointTensor& r, const Eigen::MatrixXd& g);

/// C = R - 1/(n-2) {g(X,U)S(Y,Z) - g(X,Z)S(Y,U) + g(Y,Z)S(X,U) - g(Y,U)S(X,Z)}
///       + s/((n-1)(n-2)) {g(X,U)g(Y,Z) - g(X,Z)g(Y,U)}.
/// Throws DimensionError for n < 4.
PointTensor weyl(const PointTensor& r, const Eigen::MatrixXd& ricci, double scalar,
                 const Eigen::MatrixXd& g);

/// Bundles the above. Weyl is computed when requested (needs dim >= 4).
PointData point_data(const ManifoldChart& chart, std::span<const double> p, bool with_weyl);

double sectional(const PointTensor& r, const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y);

/// H(X) = R(X, JX, JX, X) / g(X, X)^2.
double holomorphic_sectional(const PointTensor& r, const Eigen::MatrixXd& g,
                             const Eigen::MatrixXd& j, const Eigen::VectorXd& x);

/// lambda(X, Y) = R(X, Y, Y, X) - R(X, Y, JY, JX), with X and Y scaled to
/// unit length first.
double lambda_type(const PointTensor& r, const Eigen::MatrixXd& g, const Eigen::MatrixXd& j,
                   const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Largest violation of R(X,Y)=-R(Y,X), R(X,Y,Z,U)=-R(X,Y,U,Z), pair
/// exchange and the first Bianchi identity, relative to max |R|.
double curvature_symmetry_residual(const PointTensor& r);

/// Largest single metric contraction of c, relative to max |c| (absolute
/// when c vanishes).
double trace_residual(const PointTensor& c, const Eigen::MatrixXd& g_inverse);

/// Norm of an all-lower rank-4 tensor measured with g: sqrt(T_abcd T^abcd).
double invariant_norm(const PointTensor& t, const Eigen::MatrixXd& g);

/// Kulkarni-Nomizu product: (h o g)(X,Y,Z,U) = h(X,U)g(Y,Z) + h(Y,Z)g(X,U)
///                                           - h(X,Z)g(Y,U) - h(Y,U)g(X,Z).
PointTensor kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g);

/// K (g(X,U)g(Y,Z) - g(X,Z)g(Y,U)): constant sectional curvature K.
PointTensor constant_curvature_tensor(const Eigen::MatrixXd& g, double k);

}  // namespace ahg

#pragma once

// Immersed submanifolds f: U -> M of a chart M.
//
// The second fundamental form is carried as ambient coordinate vectors:
//   alpha(d_i, d_j) = normal part of (d_i d_j f + Gamma~(d_i f, d_j f)).
// With this sign a radius-r sphere in flat space has
//   alpha(X, Y) = -(1/r) g(X, Y) n_out.
// The normal frame is the Gram-Schmidt completion of the tangent frame by
// the ambient coordinate basis; each normal is flipped so its first
// non-negligible component is positive.

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahgeom/chart.hpp"

namespace ahg {

class Immersion {
 public:
  /// `map` holds target.dim() expressions in the sub-coordinates. Throws
  /// DimensionError unless target.dim() > sub_coordinates.size().
  Immersion(std::vector<std::string> sub_coordinates, ManifoldChart target, std::vector<Expr> map);

  static Immersion from_text(std::vector<std::string> sub_coordinates, ManifoldChart target,
                             const std::vector<std::string>& map);

  std::size_t dim() const noexcept { return sub_coordinates_.size(); }
  std::size_t ambient_dim() const noexcept { return target_.dim(); }
  const std::vector<std::string>& sub_coordinates() const noexcept { return sub_coordinates_; }
  const ManifoldChart& target() const noexcept { return target_; }
  const std::vector<Expr>& map() const noexcept { return map_; }

  /// Chart of the sub-coordinates carrying the pulled-back metric (exact
  /// expressions), used for the induced Levi-Civita connection.
  const ManifoldChart& induced_chart() const noexcept { return induced_; }

  Eigen::VectorXd position(std::span<const double> u) const;
  /// N x k matrix of pushforwards d_i f. Throws RankError when the
  /// smallest singular value is below 1e-8 of the largest.
  Eigen::MatrixXd tangent(std::span<const double> u) const;
  /// d_i d_j f as ambient vectors, index i * k + j.
  std::vector<Eigen::VectorXd> second_derivatives(std::span<const double> u) const;

 private:
  std::vector<std::string> sub_coordinates_;
  ManifoldChart target_;
  std::vector<Expr> map_;
  std::vector<Expr> d1_;  // a * k + i
  std::vector<Expr> d2_;  // (a * k + i) * k + j
  ManifoldChart induced_;
};

struct SecondFundamentalData {
  std::vector<double> u;
  Eigen::VectorXd position;
  Eigen::MatrixXd ambient_metric;
  Eigen::MatrixXd tangent;         // N x k
  Eigen::MatrixXd normal;          // N x (N - k), g-orthonormal columns
  Eigen::MatrixXd induced_metric;  // k x k
  std::vector<Eigen::VectorXd> alpha;  // i * k + j, ambient vectors
  Eigen::VectorXd mean_curvature;
  double umbilicity_residual = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(tangent.cols()); }
  const Eigen::VectorXd& alpha_at(std::size_t i, std::size_t j) const { return alpha[i * dim() + j]; }
  /// Component of alpha(d_i, d_j) along the r-th normal.
  double alpha_component(std::size_t i, std::size_t j, std::size_t r) const;
};

Eigen::MatrixXd induced_metric(const Immersion& imm, std::span<const double> u);

SecondFundamentalData second_fundamental_form(const Immersion& imm, std::span<const double> u);

/// H = (1/k) trace_h(alpha).
Eigen::VectorXd mean_curvature(const SecondFundamentalData& data);

/// max |alpha_ij - h_ij H| / max(|alpha_ij|, |h_ij| |H|), norms in g; 0 when alpha
/// vanishes to 1e-12 of the induced metric scale (totally geodesic).
double umbilicity_residual(const SecondFundamentalData& data);

/// D_X H: normal part of the ambient covariant derivative of the mean
/// curvature field along X = X^i d_i. The field is differentiated by central
/// differences (step 1e-5) with one Richardson extrapolation.
Eigen::VectorXd normal_connection_dh(const Immersion& imm, std::span<const double> u,
                                     const Eigen::VectorXd& x);

using TangentTriple = std::array<Eigen::VectorXd, 3>;

struct CodazziResiduals {
  /// |(R~(X,Y)Z)^perp - [(nabla_X alpha)(Y,Z) - (nabla_Y alpha)(X,Z)]|
  double general = 0.0;
  /// |(R~(X,Y)Z)^perp - [g(Y,Z) D_X H - g(X,Z) D_Y H]|; only when umbilical.
  std::optional<double> umbilical;
  /// max |(R~(X,Y)Z)^perp| over the triples, reported raw.
  double normal_curvature = 0.0;
  double umbilicity_residual = 0.0;
};

/// Maxima over `triples` (every coordinate triple when empty). The umbilical
/// form is evaluated only when the umbilicity residual is <= umbilic_tol.
CodazziResiduals codazzi_residuals(const Immersion& imm, std::span<const double> u,
                                   std::span<const TangentTriple> triples = {},
                                   double umbilic_tol = 1e-8);

}  // namespace ahg

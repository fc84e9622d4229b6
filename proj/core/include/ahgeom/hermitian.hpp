#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahgeom/chart.hpp"
#include "ahgeom/frame.hpp"
#include "ahgeom/tensor.hpp"

namespace ahg {

struct StructureResiduals {
  double j_squared = 0.0;      // max |J^2 + I|
  double compatibility = 0.0;  // max |g(J., J.) - g| / max |g|
  bool accepted(double tol) const noexcept { return j_squared <= tol && compatibility <= tol; }
};

/// Throws StructureError when the chart has no J.
StructureResiduals validate_structure(const ManifoldChart& chart, std::span<const double> p);

/// (nabla_k J)^i_j = d_k J^i_j + Gamma^i_kl J^l_j - Gamma^l_kj J^i_l, as [k](i, j).
std::vector<Eigen::MatrixXd> nabla_j(const ManifoldChart& chart, std::span<const double> p);

struct NablaJResiduals {
  double kahler = 0.0;         // max |(nabla J)^i_jk|
  double nearly_kahler = 0.0;  // max over sampled unit X of |(nabla_X J) X|
};

NablaJResiduals nabla_j_residuals(const ManifoldChart& chart, std::span<const double> p,
                                  FrameSampler& sampler, std::size_t samples = 32);

/// max |R(X,Y,Z,U) - R(JX,JY,JZ,JU)| over coordinate basis vectors.
double rk_residual(const PointTensor& r, const Eigen::MatrixXd& j);

enum class PlaneKind { Holomorphic, Antiholomorphic, Coholomorphic, None };

struct PlaneType {
  PlaneKind kind = PlaneKind::None;
  std::size_t n = 0;  // for Coholomorphic: the span has dimension 2n + 1
  friend bool operator==(const PlaneType&, const PlaneType&) = default;
};

std::string to_string(const PlaneType& t);

/// Classifies span(vectors) against J span(vectors) by principal angles
/// (threshold 1e-8). Throws RankError for dependent vectors.
PlaneType plane_type(std::span<const Eigen::VectorXd> vectors, const Eigen::MatrixXd& g,
                     const Eigen::MatrixXd& j);

struct ClassificationEntry {
  std::string name;
  double residual = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> value;  // the constant, when the check reports one
};

struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;
};

struct PointConstancy {
  std::vector<double> point;
  SampleStats holomorphic;      // H(X)
  SampleStats antiholomorphic;  // K on planes span{X, Y}, Y _|_ X, JX
  SampleStats constant_type;    // lambda(X, Y) on the same pairs
};

struct ClassificationReport {
  std::vector<ClassificationEntry> entries;
  std::vector<PointConstancy> points;
  const ClassificationEntry* find(std::string_view name) const;
};

/// Samples H, antiholomorphic K and lambda at each point. Entries, in order:
///   holomorphic_sectional.pointwise / .global
///   antiholomorphic_sectional.pointwise / .global
///   constant_type.pointwise / .global
/// Pointwise residual: largest per-point standard deviation. Global
/// residual: largest deviation of a per-point mean from the overall mean.
/// Throws DimensionError below dimension 4.
ClassificationReport constancy_report(const ManifoldChart& chart,
                                      std::span<const std::vector<double>> points,
                                      FrameSampler& sampler, std::size_t samples, double tol);

}  // namespace ahg

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahgeom/expr.hpp"

namespace ahg {

class FrameSampler;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using ExprMatrix = std::vector<std::vector<Expr>>;

/// Pointwise rule that defines J from an embedding into flat ambient space.
enum class AmbientJRule {
  None,
  /// J_p X = p_hat x X with the octonion cross product of Im(O) = R^7. The
  /// chart must embed a round 6-sphere centred at the ambient origin.
  OctonionCross,
};

std::string_view to_string(AmbientJRule rule) noexcept;
AmbientJRule ambient_j_rule_from_string(std::string_view text);

/// Embedding of the chart into flat R^N.
struct Embedding {
  std::size_t ambient_dim = 0;
  std::vector<Expr> map;
  AmbientJRule j_rule = AmbientJRule::None;
};

/// A coordinate chart of an (almost Hermitian) manifold. Metric and J
/// components are closed-form expressions in the coordinates; all metric
/// derivatives are taken exactly. J^i_j is stored with i the row.
class ManifoldChart {
 public:
  ManifoldChart(std::string name, std::vector<std::string> coordinates, ExprMatrix metric,
                std::optional<ExprMatrix> complex_structure = std::nullopt,
                std::optional<Embedding> embedding = std::nullopt,
                std::vector<Interval> domain_hint = {});

  /// Parses every component with the chart's coordinates as symbols.
  static ManifoldChart from_text(std::string name, std::vector<std::string> coordinates,
                                 const std::vector<std::vector<std::string>>& metric,
                                 const std::optional<std::vector<std::vector<std::string>>>& j = {},
                                 std::vector<Interval> domain_hint = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const noexcept { return coordinates_; }
  const ExprMatrix& metric_expressions() const noexcept { return metric_; }
  const std::optional<ExprMatrix>& complex_structure_expressions() const noexcept { return j_; }
  const std::optional<Embedding>& embedding() const noexcept { return embedding_; }
  const std::vector<Interval>& domain_hint() const noexcept { return domain_hint_; }

  bool has_complex_structure() const noexcept;
  /// True when J comes from expressions (exact derivatives); false for an
  /// ambient pointwise rule.
  bool complex_structure_is_symbolic() const noexcept { return j_.has_value(); }

  /// g_ij at p. Throws DomainError if g is not symmetric positive definite
  /// (min eigenvalue <= 1e-10 max eigenvalue) or an expression is undefined.
  Eigen::MatrixXd metric(std::span<const double> p) const;
  /// [k](i, j) = d_k g_ij.
  std::vector<Eigen::MatrixXd> metric_first_derivatives(std::span<const double> p) const;
  /// [k * dim + l](i, j) = d_k d_l g_ij.
  std::vector<Eigen::MatrixXd> metric_second_derivatives(std::span<const double> p) const;

  /// J^i_j at p. Throws StructureError when the chart has no J.
  Eigen::MatrixXd complex_structure(std::span<const double> p) const;
  /// [k](i, j) = d_k J^i_j. Exact for symbolic J; for an ambient rule,
  /// Richardson-extrapolated central differences with step 1e-3.
  std::vector<Eigen::MatrixXd> complex_structure_derivatives(std::span<const double> p) const;

  /// Ambient position and Jacobian (N x dim) of the embedding.
  Eigen::VectorXd embedding_position(std::span<const double> p) const;
  Eigen::MatrixXd embedding_jacobian(std::span<const double> p) const;

  /// The origin when every hint interval contains 0, else the midpoints.
  std::vector<double> default_point() const;
  /// Uniform sample inside the domain hint ([-0.5, 0.5] where absent).
  std::vector<double> sample_point(FrameSampler& sampler) const;

 private:
  Eigen::MatrixXd ambient_rule_j(std::span<const double> p) const;

  std::string name_;
  std::vector<std::string> coordinates_;
  ExprMatrix metric_;
  std::optional<ExprMatrix> j_;
  std::optional<Embedding> embedding_;
  std::vector<Interval> domain_hint_;

  std::vector<Expr> dg_;   // (k * n + i) * n + j
  std::vector<Expr> ddg_;  // ((k * n + l) * n + i) * n + j
  std::vector<Expr> dj_;   // (k * n + i) * n + j
  std::vector<Expr> demb_; // a * n + k
};

/// Octonion (G2) cross product on R^7.
Eigen::VectorXd cross7(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Riemannian product a x b: block-diagonal metric and J. Coordinates of b
/// that clash with a's get a "_2" suffix. Charts with an ambient J rule are
/// not supported.
ManifoldChart product_chart(const ManifoldChart& a, const ManifoldChart& b, std::string name);

}  // namespace ahg

#include "ahgeom/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ahgeom/errors.hpp"
#include "ahgeom/frame.hpp"

namespace ahg {

namespace {

constexpr double kJStep = 1e-3;

// Fano-plane triples (1-based): e_a x e_b = e_c for each cyclic order.
constexpr std::array<std::array<int, 3>, 7> kFano{{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5},
}};

void require_square(const ExprMatrix& m, std::size_t n, const char* what) {
  if (m.size() != n) throw DimensionError(std::string(what) + " must have one row per coordinate");
  for (const auto& row : m) {
    if (row.size() != n) throw DimensionError(std::string(what) + " must be square");
  }
}

}  // namespace

std::string_view to_string(AmbientJRule rule) noexcept {
  switch (rule) {
    case AmbientJRule::None: return "none";
    case AmbientJRule::OctonionCross: return "octonion_cross";
  }
  return "none";
}

AmbientJRule ambient_j_rule_from_string(std::string_view text) {
  if (text == "none" || text.empty()) return AmbientJRule::None;
  if (text == "octonion_cross") return AmbientJRule::OctonionCross;
  throw ParseError("unknown complex structure rule '" + std::string(text) + "'");
}

Eigen::VectorXd cross7(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != 7 || b.size() != 7) throw DimensionError("cross7 needs 7-vectors");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(7);
  for (const auto& t : kFano) {
    // Each triple contributes its three cyclic rotations.
    for (int r = 0; r < 3; ++r) {
      const int i = t[r] - 1;
      const int j = t[(r + 1) % 3] - 1;
      const int k = t[(r + 2) % 3] - 1;
      c[k] += a[i] * b[j] - a[j] * b[i];
    }
  }
  return c;
}

ManifoldChart::ManifoldChart(std::string name, std::vector<std::string> coordinates,
                             ExprMatrix metric, std::optional<ExprMatrix> complex_structure,
                             std::optional<Embedding> embedding, std::vector<Interval> domain_hint)
    : name_(std::move(name)),
      coordinates_(std::move(coordinates)),
      metric_(std::move(metric)),
      j_(std::move(complex_structure)),
      embedding_(std::move(embedding)),
      domain_hint_(std::move(domain_hint)) {
  const std::size_t n = dim();
  if (n == 0) throw DimensionError("chart needs at least one coordinate");
  require_square(metric_, n, "metric");
  if (j_) require_square(*j_, n, "complex structure");
  if (!domain_hint_.empty() && domain_hint_.size() != n) {
    throw DimensionError("domain hint needs one interval per coordinate");
  }
  for (const auto& iv : domain_hint_) {
    if (!(iv.lo < iv.hi)) throw UsageError("domain hint intervals need lo < hi");
  }

  // Symmetry: textually identical, or value-equal at 5 sample points.
  FrameSampler sampler(0, n);
  std::vector<std::vector<double>> probes;
  for (int s = 0; s < 5; ++s) probes.push_back(sample_point(sampler));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (metric_[i][j].same_as(metric_[j][i])) continue;
      for (const auto& p : probes) {
        double a = 0.0;
        double b = 0.0;
        try {
          a = metric_[i][j].evaluate(p);
          b = metric_[j][i].evaluate(p);
        } catch (const DomainError&) {
          continue;
        }
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
          throw UsageError("metric is not symmetric in entries (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
        }
      }
    }
  }

  dg_.resize(n * n * n);
  ddg_.resize(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Expr d = differentiate(metric_[i][j], k);
        dg_[(k * n + i) * n + j] = d;
        dg_[(k * n + j) * n + i] = d;
        for (std::size_t l = k; l < n; ++l) {
          const Expr dd = differentiate(d, l);
          for (auto [a, b] : {std::pair{k, l}, std::pair{l, k}}) {
            ddg_[((a * n + b) * n + i) * n + j] = dd;
            ddg_[((a * n + b) * n + j) * n + i] = dd;
          }
        }
      }
    }
  }
  if (j_) {
    dj_.resize(n * n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dj_[(k * n + i) * n + j] = differentiate((*j_)[i][j], k);
  }
  if (embedding_) {
    if (embedding_->map.size() != embedding_->ambient_dim || embedding_->ambient_dim < n) {
      throw DimensionError("embedding map needs ambient_dim >= dim components");
    }
    if (embedding_->j_rule == AmbientJRule::OctonionCross &&
        (embedding_->ambient_dim != 7 || n != 6)) {
      throw DimensionError("octonion_cross J needs a 6-dimensional chart embedded in R^7");
    }
    demb_.resize(embedding_->ambient_dim * n);
    for (std::size_t a = 0; a < embedding_->ambient_dim; ++a)
      for (std::size_t k = 0; k < n; ++k) demb_[a * n + k] = differentiate(embedding_->map[a], k);
  }
}

ManifoldChart ManifoldChart::from_text(std::string name, std::vector<std::string> coordinates,
                                       const std::vector<std::vector<std::string>>& metric,
                                       const std::optional<std::vector<std::vector<std::string>>>& j,
                                       std::vector<Interval> domain_hint) {
  auto parse_matrix = [&](const std::vector<std::vector<std::string>>& text) {
    ExprMatrix m;
    for (const auto& row : text) {
      auto& out = m.emplace_back();
      for (const auto& cell : row) out.push_back(parse(cell, coordinates));
    }
    return m;
  };
  ExprMatrix g = parse_matrix(metric);
  std::optional<ExprMatrix> jm;
  if (j) jm = parse_matrix(*j);
  return ManifoldChart(std::move(name), std::move(coordinates), std::move(g), std::move(jm),
                       std::nullopt, std::move(domain_hint));
}

bool ManifoldChart::has_complex_structure() const noexcept {
  return j_.has_value() || (embedding_ && embedding_->j_rule != AmbientJRule::None);
}

Eigen::MatrixXd ManifoldChart::metric(std::span<const double> p) const {
  const std::size_t n = dim();
  if (p.size() != n) throw DimensionError("point has wrong number of coordinates");
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = metric_[i][j].evaluate(p);
      g(j, i) = g(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || lo <= 1e-10 * hi) {
    throw DomainError("metric is not positive definite at the requested point");
  }
  return g;
}

std::vector<Eigen::MatrixXd> ManifoldChart::metric_first_derivatives(std::span<const double> p) const {
  const std::size_t n = dim();
  std::vector<Eigen::MatrixXd> out(n, Eigen::MatrixXd(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        out[k](i, j) = dg_[(k * n + i) * n + j].evaluate(p);
        out[k](j, i) = out[k](i, j);
      }
  return out;
}

std::vector<Eigen::MatrixXd> ManifoldChart::metric_second_derivatives(std::span<const double> p) const {
  const std::size_t n = dim();
  std::vector<Eigen::MatrixXd> out(n * n, Eigen::MatrixXd(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l) {
      auto& m = out[k * n + l];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          m(i, j) = ddg_[((k * n + l) * n + i) * n + j].evaluate(p);
          m(j, i) = m(i, j);
        }
      out[l * n + k] = m;
    }
  return out;
}

Eigen::MatrixXd ManifoldChart::complex_structure(std::span<const double> p) const {
  const std::size_t n = dim();
  if (p.size() != n) throw DimensionError("point has wrong number of coordinates");
  if (j_) {
    Eigen::MatrixXd j(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) j(r, c) = (*j_)[r][c].evaluate(p);
    return j;
  }
  if (embedding_ && embedding_->j_rule != AmbientJRule::None) return ambient_rule_j(p);
  throw StructureError("chart '" + name_ + "' has no almost complex structure");
}

Eigen::MatrixXd ManifoldChart::ambient_rule_j(std::span<const double> p) const {
  const Eigen::VectorXd pos = embedding_position(p);
  const Eigen::MatrixXd t = embedding_jacobian(p);
  const double radius = pos.norm();
  if (radius == 0.0) throw DomainError("embedding passes through the ambient origin");
  const Eigen::VectorXd unit = pos / radius;
  Eigen::MatrixXd images(t.rows(), t.cols());
  for (Eigen::Index c = 0; c < t.cols(); ++c) images.col(c) = cross7(unit, t.col(c));
  // Pull the ambient images back through the tangent frame.
  const Eigen::MatrixXd h = t.transpose() * t;
  return h.ldlt().solve(t.transpose() * images);
}

std::vector<Eigen::MatrixXd> ManifoldChart::complex_structure_derivatives(std::span<const double> p) const {
  const std::size_t n = dim();
  std::vector<Eigen::MatrixXd> out(n, Eigen::MatrixXd::Zero(n, n));
  if (j_) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[k](i, j) = dj_[(k * n + i) * n + j].evaluate(p);
    return out;
  }
  std::vector<double> q(p.begin(), p.end());
  auto central = [&](std::size_t k, double h) {
    q[k] = p[k] + h;
    const Eigen::MatrixXd plus = complex_structure(q);
    q[k] = p[k] - h;
    const Eigen::MatrixXd minus = complex_structure(q);
    q[k] = p[k];
    return Eigen::MatrixXd((plus - minus) / (2.0 * h));
  };
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::MatrixXd coarse = central(k, kJStep);
    const Eigen::MatrixXd fine = central(k, 0.5 * kJStep);
    out[k] = (4.0 * fine - coarse) / 3.0;
  }
  return out;
}

Eigen::VectorXd ManifoldChart::embedding_position(std::span<const double> p) const {
  if (!embedding_) throw UsageError("chart '" + name_ + "' has no embedding");
  Eigen::VectorXd x(embedding_->ambient_dim);
  for (std::size_t a = 0; a < embedding_->ambient_dim; ++a) x[a] = embedding_->map[a].evaluate(p);
  return x;
}

Eigen::MatrixXd ManifoldChart::embedding_jacobian(std::span<const double> p) const {
  if (!embedding_) throw UsageError("chart '" + name_ + "' has no embedding");
  const std::size_t n = dim();
  Eigen::MatrixXd t(embedding_->ambient_dim, n);
  for (std::size_t a = 0; a < embedding_->ambient_dim; ++a)
    for (std::size_t k = 0; k < n; ++k) t(a, k) = demb_[a * n + k].evaluate(p);
  return t;
}

std::vector<double> ManifoldChart::default_point() const {
  std::vector<double> p(dim(), 0.0);
  if (domain_hint_.empty()) return p;
  const bool origin_inside = std::all_of(domain_hint_.begin(), domain_hint_.end(),
                                         [](const Interval& iv) { return iv.lo < 0.0 && 0.0 < iv.hi; });
  if (origin_inside) return p;
  for (std::size_t i = 0; i < dim(); ++i) p[i] = 0.5 * (domain_hint_[i].lo + domain_hint_[i].hi);
  return p;
}

std::vector<double> ManifoldChart::sample_point(FrameSampler& sampler) const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (domain_hint_.empty()) {
      p[i] = 0.5 * sampler.uniform();
    } else {
      p[i] = sampler.uniform(domain_hint_[i].lo, domain_hint_[i].hi);
    }
  }
  return p;
}

ManifoldChart product_chart(const ManifoldChart& a, const ManifoldChart& b, std::string name) {
  if ((a.embedding() && a.embedding()->j_rule != AmbientJRule::None) ||
      (b.embedding() && b.embedding()->j_rule != AmbientJRule::None)) {
    throw UsageError("product_chart does not support pointwise J rules");
  }
  if (a.complex_structure_is_symbolic() != b.complex_structure_is_symbolic()) {
    throw UsageError("product_chart needs J on both factors or on neither");
  }
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na + nb;

  std::vector<std::string> coords = a.coordinates();
  for (const auto& c : b.coordinates()) {
    std::string renamed = c;
    while (std::find(coords.begin(), coords.end(), renamed) != coords.end()) renamed += "_2";
    coords.push_back(renamed);
  }
  std::vector<Expr> shift_a;
  std::vector<Expr> shift_b;
  for (std::size_t i = 0; i < na; ++i) shift_a.push_back(Expr::symbol(i, coords[i]));
  for (std::size_t i = 0; i < nb; ++i) shift_b.push_back(Expr::symbol(na + i, coords[na + i]));

  auto block = [&](const ExprMatrix& ma, const ExprMatrix& mb) {
    ExprMatrix m(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j) m[i][j] = substitute(ma[i][j], shift_a);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) m[na + i][na + j] = substitute(mb[i][j], shift_b);
    return m;
  };

  std::optional<ExprMatrix> j;
  if (a.complex_structure_is_symbolic()) {
    j = block(*a.complex_structure_expressions(), *b.complex_structure_expressions());
  }
  std::vector<Interval> hint;
  if (!a.domain_hint().empty() || !b.domain_hint().empty()) {
    for (std::size_t i = 0; i < na; ++i) {
      hint.push_back(a.domain_hint().empty() ? Interval{-0.5, 0.5} : a.domain_hint()[i]);
    }
    for (std::size_t i = 0; i < nb; ++i) {
      hint.push_back(b.domain_hint().empty() ? Interval{-0.5, 0.5} : b.domain_hint()[i]);
    }
  }
  return ManifoldChart(std::move(name), std::move(coords),
                       block(a.metric_expressions(), b.metric_expressions()), std::move(j),
                       std::nullopt, std::move(hint));
}

}  // namespace ahg

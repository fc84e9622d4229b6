#include "ahgeom/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ahgeom/errors.hpp"

namespace ahg {

namespace {

using Strings = std::vector<std::string>;
using StringMatrix = std::vector<Strings>;

std::string num(double v) { return format_number(v); }

Strings coordinate_names(std::string_view prefix, std::size_t n, std::size_t first = 1) {
  Strings out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(first + i));
  return out;
}

/// x1, y1, x2, y2, ...
Strings complex_coordinates(std::size_t m) {
  Strings out;
  for (std::size_t k = 1; k <= m; ++k) {
    out.push_back("x" + std::to_string(k));
    out.push_back("y" + std::to_string(k));
  }
  return out;
}

std::string squared_norm(const Strings& coords) {
  std::string s;
  for (const auto& c : coords) s += (s.empty() ? "" : " + ") + c + "^2";
  return s;
}

StringMatrix diagonal(std::size_t n, const std::string& factor) {
  StringMatrix g(n, Strings(n, "0"));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = factor;
  return g;
}

StringMatrix canonical_j(std::size_t m) {
  StringMatrix j(2 * m, Strings(2 * m, "0"));
  for (std::size_t k = 0; k < m; ++k) {
    j[2 * k + 1][2 * k] = "1";
    j[2 * k][2 * k + 1] = "-1";
  }
  return j;
}

std::vector<Interval> uniform_hint(std::size_t n, double half_width) {
  return std::vector<Interval>(n, Interval{-half_width, half_width});
}

/// 4 / (1 + s K |x|^2)^2 with s = +1 (sphere) or -1 (ball).
std::string conformal_factor(const Strings& coords, double k, double sign) {
  const std::string kk = num(k);
  return "4/(1 " + std::string(sign > 0 ? "+ " : "- ") + kk + "*(" + squared_norm(coords) + "))^2";
}

ManifoldChart flat_kahler(const ModelParameters& p) {
  const auto m = static_cast<std::size_t>(p.at("m"));
  return ManifoldChart::from_text("flat_kahler", complex_coordinates(m), diagonal(2 * m, "1"),
                                  canonical_j(m), uniform_hint(2 * m, 1.0));
}

ManifoldChart round_sphere(const ModelParameters& p) {
  const auto n = static_cast<std::size_t>(p.at("n"));
  const double r = p.at("r");
  const Strings coords = coordinate_names("x", n);
  const std::string r2 = num(r * r);
  const std::string factor = num(4.0 * r * r * r * r) + "/(" + r2 + " + " + squared_norm(coords) + ")^2";
  return ManifoldChart::from_text("round_sphere", coords, diagonal(n, factor), std::nullopt,
                                  uniform_hint(n, r));
}

ManifoldChart hyperbolic(const ModelParameters& p) {
  const auto n = static_cast<std::size_t>(p.at("n"));
  const double k = p.at("K");
  const Strings coords = coordinate_names("x", n);
  return ManifoldChart::from_text("hyperbolic", coords, diagonal(n, conformal_factor(coords, k, -1.0)),
                                  std::nullopt, uniform_hint(n, 0.9 / std::sqrt(static_cast<double>(n) * k)));
}

ManifoldChart product_k(const ModelParameters& p) {
  const double k = p.at("K");
  const Strings first{"x1", "y1"};
  const Strings second{"x2", "y2"};
  const ManifoldChart sphere = ManifoldChart::from_text(
      "sphere", first, diagonal(2, conformal_factor(first, k, 1.0)), canonical_j(1), uniform_hint(2, 1.0));
  const ManifoldChart ball = ManifoldChart::from_text(
      "ball", second, diagonal(2, conformal_factor(second, k, -1.0)), canonical_j(1),
      uniform_hint(2, 0.9 / std::sqrt(2.0 * k)));
  return product_chart(sphere, ball, "product_K");
}

ManifoldChart fubini_study(const ModelParameters& p) {
  const auto m = static_cast<std::size_t>(p.at("m"));
  const Strings coords = complex_coordinates(m);
  const std::string rho = "(1 + " + squared_norm(coords) + ")";
  const std::string rho2 = rho + "^2";
  auto x = [](std::size_t a) { return "x" + std::to_string(a + 1); };
  auto y = [](std::size_t a) { return "y" + std::to_string(a + 1); };
  StringMatrix g(2 * m, Strings(2 * m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      // g(d_xa, d_xb) = g(d_ya, d_yb) = delta_ab / rho - (xa xb + ya yb) / rho^2
      // g(d_xa, d_yb) = -(xa yb - ya xb) / rho^2
      const std::string real = "(" + x(a) + "*" + x(b) + " + " + y(a) + "*" + y(b) + ")/" + rho2;
      const std::string diag = a == b ? "1/" + rho + " - " + real : "-" + real;
      g[2 * a][2 * b] = diag;
      g[2 * a + 1][2 * b + 1] = diag;
      if (a == b) {
        g[2 * a][2 * b + 1] = "0";
      } else {
        g[2 * a][2 * b + 1] = "-(" + x(a) + "*" + y(b) + " - " + y(a) + "*" + x(b) + ")/" + rho2;
      }
    }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g[2 * b + 1][2 * a] = g[2 * a][2 * b + 1];
  return ManifoldChart::from_text("fubini_study", coords, g, canonical_j(m), uniform_hint(2 * m, 1.0));
}

ManifoldChart s6_nearly_kahler(const ModelParameters& p) {
  const double r = p.at("r");
  const Strings coords = coordinate_names("x", 6);
  const std::string r2 = num(r * r);
  const std::string q = "(" + squared_norm(coords) + ")";
  const std::string factor = num(4.0 * r * r * r * r) + "/(" + r2 + " + " + q + ")^2";
  std::vector<std::vector<Expr>> g(6, std::vector<Expr>(6));
  const Expr one = parse(factor, coords);
  const Expr zero = Expr::constant(0.0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) g[i][j] = i == j ? one : zero;
  Embedding emb;
  emb.ambient_dim = 7;
  emb.j_rule = AmbientJRule::OctonionCross;
  const std::string denom = "(" + q + " + " + r2 + ")";
  for (const auto& c : coords) emb.map.push_back(parse(num(2.0 * r * r) + "*" + c + "/" + denom, coords));
  emb.map.push_back(parse(num(r) + "*(" + q + " - " + r2 + ")/" + denom, coords));
  return ManifoldChart("s6_nearly_kahler", coords, std::move(g), std::nullopt, std::move(emb),
                       uniform_hint(6, r));
}

struct Entry {
  std::string name;
  std::string summary;
  std::vector<ModelParameter> parameters;
  std::function<std::vector<ExpectedInvariant>(const ModelParameters&)> expected;
  std::function<ManifoldChart(const ModelParameters&)> build;
};

ExpectedInvariant value(std::string name, double v, double tol) { return {std::move(name), v, std::nullopt, tol}; }
ExpectedInvariant flag(std::string name, bool f) { return {std::move(name), std::nullopt, f, 0.0}; }

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"flat_kahler",
       "flat C^m",
       {{"m", 2, true, 1, "complex dimension"}},
       [](const ModelParameters&) {
         return std::vector<ExpectedInvariant>{
             value("scalar_curvature", 0.0, 1e-12), value("sectional_curvature", 0.0, 1e-12),
             value("holomorphic_sectional", 0.0, 1e-12), flag("kahler", true), flag("rk", true),
             flag("conformally_flat", true)};
       },
       flat_kahler},
      {"round_sphere",
       "round sphere S^n(r), stereographic chart",
       {{"n", 4, true, 2, "dimension"}, {"r", 1.0, false, 0.0, "radius"}},
       [](const ModelParameters& p) {
         const double n = p.at("n");
         const double k = 1.0 / (p.at("r") * p.at("r"));
         return std::vector<ExpectedInvariant>{value("scalar_curvature", n * (n - 1.0) * k, 1e-8),
                                               value("sectional_curvature", k, 1e-8),
                                               flag("conformally_flat", true)};
       },
       round_sphere},
      {"hyperbolic",
       "hyperbolic space of curvature -K, Poincare ball",
       {{"n", 4, true, 2, "dimension"}, {"K", 1.0, false, 0.0, "curvature magnitude"}},
       [](const ModelParameters& p) {
         const double n = p.at("n");
         const double k = p.at("K");
         return std::vector<ExpectedInvariant>{value("scalar_curvature", -n * (n - 1.0) * k, 1e-8),
                                               value("sectional_curvature", -k, 1e-8),
                                               flag("conformally_flat", true)};
       },
       hyperbolic},
      {"product_K",
       "S^2(K) x H^2(-K), Kaehler",
       {{"K", 1.0, false, 0.0, "curvature of the sphere factor"}},
       [](const ModelParameters&) {
         return std::vector<ExpectedInvariant>{value("scalar_curvature", 0.0, 1e-9), flag("kahler", true),
                                               flag("rk", true), flag("conformally_flat", true)};
       },
       product_k},
      {"fubini_study",
       "complex projective space, potential log(1 + |z|^2)",
       {{"m", 2, true, 1, "complex dimension"}},
       [](const ModelParameters& p) {
         const double m = p.at("m");
         std::vector<ExpectedInvariant> out{value("scalar_curvature", 4.0 * m * (m + 1.0), 1e-8),
                                            value("holomorphic_sectional", 4.0, 1e-8),
                                            value("constant_type", 0.0, 1e-8), flag("kahler", true),
                                            flag("rk", true)};
         if (m >= 2) out.push_back(flag("conformally_flat", false));
         return out;
       },
       fubini_study},
      {"s6_nearly_kahler",
       "S^6(r) with the octonion almost complex structure",
       {{"r", 1.0, false, 0.0, "radius"}},
       [](const ModelParameters& p) {
         const double k = 1.0 / (p.at("r") * p.at("r"));
         return std::vector<ExpectedInvariant>{
             value("scalar_curvature", 30.0 * k, 1e-6), value("sectional_curvature", k, 1e-6),
             value("holomorphic_sectional", k, 1e-6), value("constant_type", k, 1e-6),
             flag("kahler", false), flag("nearly_kahler", true), flag("rk", true),
             flag("conformally_flat", true)};
       },
       s6_nearly_kahler},
  };
  return entries;
}

const Entry& lookup(std::string_view name) {
  for (const auto& e : registry())
    if (e.name == name) return e;
  throw UsageError("unknown model '" + std::string(name) + "'");
}

ModelParameters resolve(const Entry& e, const ModelParameters& params) {
  ModelParameters values;
  for (const auto& p : e.parameters) values[p.name] = p.default_value;
  for (const auto& [key, v] : params) {
    const auto it = std::find_if(e.parameters.begin(), e.parameters.end(),
                                 [&](const ModelParameter& p) { return p.name == key; });
    if (it == e.parameters.end()) {
      throw UsageError("model '" + e.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(v)) throw UsageError("parameter '" + key + "' must be finite");
    if (it->integer) {
      if (v != std::floor(v) || v < it->minimum) {
        throw UsageError("parameter '" + key + "' must be an integer >= " + num(it->minimum));
      }
    } else if (!(v > it->minimum)) {
      throw UsageError("parameter '" + key + "' must be > " + num(it->minimum));
    }
    values[key] = v;
  }
  return values;
}

}  // namespace

const ExpectedInvariant* ModelDescriptor::find(std::string_view invariant) const {
  for (const auto& e : expected)
    if (e.name == invariant) return &e;
  return nullptr;
}

ModelDescriptor describe_model(std::string_view name, const ModelParameters& params) {
  const Entry& e = lookup(name);
  ModelDescriptor d;
  d.name = e.name;
  d.summary = e.summary;
  d.parameters = e.parameters;
  d.values = resolve(e, params);
  d.expected = e.expected(d.values);
  return d;
}

std::vector<ModelDescriptor> list_models() {
  std::vector<ModelDescriptor> out;
  for (const auto& e : registry()) out.push_back(describe_model(e.name));
  return out;
}

ManifoldChart instantiate(std::string_view name, const ModelParameters& params) {
  const Entry& e = lookup(name);
  return e.build(resolve(e, params));
}

}  // namespace ahg

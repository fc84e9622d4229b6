#include "ahgeom/report.hpp"

#include <algorithm>
#include <cmath>

#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"
#include "ahgeom/frame.hpp"

namespace ahg {

namespace {

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Stats summarize(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  for (double x : v) s.stddev += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(s.stddev / static_cast<double>(v.size()));
  return s;
}

Report stats_json(const Stats& s) {
  Report out;
  out["mean"] = s.mean;
  out["std"] = s.stddev;
  out["min"] = s.min;
  out["max"] = s.max;
  return out;
}

Report vector_json(const Eigen::VectorXd& v) {
  Report out = Report::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Report matrix_json(const Eigen::MatrixXd& m) {
  Report out = Report::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::optional<double> value;
  bool pass() const { return residual <= tolerance; }
};

void emit_checks(Report& out, const std::vector<Check>& checks, std::uint64_t seed, bool with_seed) {
  Report list = Report::array();
  Report flags = Report::object();
  for (const auto& c : checks) {
    Report e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass();
    e["samples"] = c.samples;
    if (with_seed) e["seed"] = seed;
    if (c.value) e["value"] = *c.value;
    list.push_back(std::move(e));
    flags[c.name] = c.pass();
  }
  out["classification"] = std::move(list);
  out["flags"] = std::move(flags);
}

std::vector<std::vector<double>> resolve_points(const std::vector<std::vector<double>>& given,
                                                std::vector<double> fallback, std::size_t dim) {
  std::vector<std::vector<double>> points = given;
  if (points.empty()) points.push_back(std::move(fallback));
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw UsageError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                       std::to_string(dim));
    }
  }
  return points;
}

double j_tolerance(const ManifoldChart& chart, double tol) {
  // Pointwise J rules are differentiated numerically.
  return chart.complex_structure_is_symbolic() ? tol : std::max(tol, 1e-6);
}

}  // namespace

std::vector<double> hint_default_point(const std::vector<Interval>& hint, std::size_t dim) {
  if (hint.empty()) return std::vector<double>(dim, 0.0);
  const bool origin = std::all_of(hint.begin(), hint.end(), [](const Interval& iv) { return iv.lo <= 0.0 && 0.0 <= iv.hi; });
  std::vector<double> p;
  for (const auto& iv : hint) p.push_back(origin ? 0.0 : 0.5 * (iv.lo + iv.hi));
  return p;
}

std::string dump_report(const Report& report) { return report.dump(2) + "\n"; }

Report analyze_report(const ManifoldChart& chart, const AnalyzeOptions& options) {
  const std::size_t n = chart.dim();
  if (options.require_weyl && n < 4) {
    throw DimensionError("Weyl tensor needs dimension >= 4 (chart '" + chart.name() + "' has dimension " +
                         std::to_string(n) + ")");
  }
  const auto points = resolve_points(options.points, chart.default_point(), n);
  const bool with_weyl = n >= 4;
  const bool with_j = chart.has_complex_structure();
  FrameSampler sampler(options.seed, n);

  Report out;
  out["command"] = "analyze";
  out["manifold"] = chart.name();
  out["dim"] = n;
  out["coordinates"] = chart.coordinates();
  out["seed"] = options.seed;
  out["tolerance"] = options.tolerance;
  out["samples"] = options.samples;

  double worst_r = 0.0, worst_w = 0.0, worst_sym = 0.0, worst_trace = 0.0;
  double worst_struct = 0.0, worst_kahler = 0.0, worst_nk = 0.0, worst_rk = 0.0;
  Report pts = Report::array();
  for (const auto& p : points) {
    const PointData pd = point_data(chart, p, with_weyl);
    Report e;
    e["point"] = p;
    e["scalar_curvature"] = pd.scalar;
    const double rnorm = invariant_norm(pd.riemann, pd.g);
    e["curvature_norm"] = rnorm;
    const double sym = curvature_symmetry_residual(pd.riemann);
    e["symmetry_residual"] = sym;
    worst_r = std::max(worst_r, rnorm);
    worst_sym = std::max(worst_sym, sym);
    if (n >= 2) {
      std::vector<double> ks;
      for (std::size_t s = 0; s < options.samples; ++s) {
        const auto xy = sample_orthonormal_set(pd.g, 2, sampler);
        ks.push_back(sectional(pd.riemann, pd.g, xy[0], xy[1]));
      }
      e["sectional_curvature"] = stats_json(summarize(ks));
    }
    if (with_weyl) {
      const double w = invariant_norm(*pd.weyl, pd.g);
      const double tr = trace_residual(*pd.weyl, pd.g_inverse);
      e["weyl_norm"] = w;
      e["weyl_trace_residual"] = tr;
      worst_w = std::max(worst_w, w);
      worst_trace = std::max(worst_trace, tr);
    }
    if (with_j) {
      const StructureResiduals sr = validate_structure(chart, p);
      Report st;
      st["j_squared"] = sr.j_squared;
      st["compatibility"] = sr.compatibility;
      e["structure"] = std::move(st);
      worst_struct = std::max({worst_struct, sr.j_squared, sr.compatibility});
      const NablaJResiduals nj = nabla_j_residuals(chart, p, sampler, options.samples);
      const double rk = rk_residual(pd.riemann, *pd.j);
      e["kahler_residual"] = nj.kahler;
      e["nearly_kahler_residual"] = nj.nearly_kahler;
      e["rk_residual"] = rk;
      worst_kahler = std::max(worst_kahler, nj.kahler);
      worst_nk = std::max(worst_nk, nj.nearly_kahler);
      worst_rk = std::max(worst_rk, rk);
      std::vector<double> hs, ks, ls;
      for (std::size_t s = 0; s < options.samples; ++s) {
        const auto xs = sample_orthonormal_set(pd.g, 1, sampler);
        const Eigen::VectorXd& x = xs[0];
        hs.push_back(holomorphic_sectional(pd.riemann, pd.g, *pd.j, x));
        if (n >= 4) {
          const std::vector<Eigen::VectorXd> cons{x, *pd.j * x};
          const auto ys = sample_orthonormal_set(pd.g, 1, sampler, cons);
          ks.push_back(sectional(pd.riemann, pd.g, x, ys[0]));
          ls.push_back(lambda_type(pd.riemann, pd.g, *pd.j, x, ys[0]));
        }
      }
      e["holomorphic_sectional"] = stats_json(summarize(hs));
      if (n >= 4) {
        e["antiholomorphic_sectional"] = stats_json(summarize(ks));
        e["constant_type"] = stats_json(summarize(ls));
      }
    }
    pts.push_back(std::move(e));
  }
  out["points"] = std::move(pts);

  const double tol = options.tolerance;
  const std::size_t np = points.size();
  std::vector<Check> checks{{"curvature_symmetry", worst_sym, std::max(tol, 1e-9), np, std::nullopt},
                            {"flat", worst_r, tol, np, std::nullopt}};
  if (with_weyl) {
    checks.push_back({"weyl_trace_free", worst_trace, std::max(tol, 1e-9), np, std::nullopt});
    checks.push_back({"conformally_flat", worst_w, tol, np, std::nullopt});
  }
  if (with_j) {
    const double jt = j_tolerance(chart, tol);
    checks.push_back({"almost_hermitian", worst_struct, tol, np, std::nullopt});
    checks.push_back({"kahler", worst_kahler, jt, np, std::nullopt});
    checks.push_back({"nearly_kahler", worst_nk, jt, np * options.samples, std::nullopt});
    checks.push_back({"rk", worst_rk, tol, np, std::nullopt});
  }
  emit_checks(out, checks, options.seed, true);
  return out;
}

Report classify_report(const ManifoldChart& chart, const ClassifyOptions& options) {
  const std::size_t n = chart.dim();
  if (!chart.has_complex_structure()) {
    throw StructureError("chart '" + chart.name() + "' has no almost complex structure");
  }
  std::vector<std::vector<double>> points = options.points;
  if (points.empty()) {
    FrameSampler point_sampler = FrameSampler::for_worker(options.seed, 1, n);
    for (std::size_t i = 0; i < options.point_count; ++i) points.push_back(chart.sample_point(point_sampler));
  }
  points = resolve_points(points, {}, n);
  FrameSampler sampler(options.seed, n);

  Report out;
  out["command"] = "classify";
  out["manifold"] = chart.name();
  out["dim"] = n;
  out["seed"] = options.seed;
  out["tolerance"] = options.tolerance;
  out["samples"] = options.samples;

  double worst_struct = 0.0, worst_kahler = 0.0, worst_nk = 0.0, worst_rk = 0.0;
  std::vector<Report> per_point;
  for (const auto& p : points) {
    const StructureResiduals sr = validate_structure(chart, p);
    const NablaJResiduals nj = nabla_j_residuals(chart, p, sampler, options.samples);
    const PointData pd = point_data(chart, p, false);
    const double rk = rk_residual(pd.riemann, *pd.j);
    worst_struct = std::max({worst_struct, sr.j_squared, sr.compatibility});
    worst_kahler = std::max(worst_kahler, nj.kahler);
    worst_nk = std::max(worst_nk, nj.nearly_kahler);
    worst_rk = std::max(worst_rk, rk);
    Report e;
    e["point"] = p;
    e["j_squared"] = sr.j_squared;
    e["compatibility"] = sr.compatibility;
    e["kahler_residual"] = nj.kahler;
    e["nearly_kahler_residual"] = nj.nearly_kahler;
    e["rk_residual"] = rk;
    per_point.push_back(std::move(e));
  }

  const ClassificationReport constancy = constancy_report(chart, points, sampler, options.samples, options.tolerance);
  for (std::size_t i = 0; i < per_point.size(); ++i) {
    const PointConstancy& pc = constancy.points[i];
    auto ms = [](const SampleStats& s) {
      Report r;
      r["mean"] = s.mean;
      r["std"] = s.stddev;
      return r;
    };
    per_point[i]["holomorphic_sectional"] = ms(pc.holomorphic);
    per_point[i]["antiholomorphic_sectional"] = ms(pc.antiholomorphic);
    per_point[i]["constant_type"] = ms(pc.constant_type);
  }
  out["points"] = per_point;

  const double tol = options.tolerance;
  const double jt = j_tolerance(chart, tol);
  const std::size_t np = points.size();
  std::vector<Check> checks{{"almost_hermitian", worst_struct, tol, np, std::nullopt},
                            {"kahler", worst_kahler, jt, np, std::nullopt},
                            {"nearly_kahler", worst_nk, jt, np * options.samples, std::nullopt},
                            {"rk", worst_rk, tol, np, std::nullopt}};
  for (const auto& e : constancy.entries) checks.push_back({e.name, e.residual, e.tolerance, e.samples, e.value});
  emit_checks(out, checks, options.seed, true);
  return out;
}

Report submanifold_report(const Immersion& imm, const SubmanifoldOptions& options) {
  const std::size_t k = imm.dim();
  const std::size_t big_n = imm.ambient_dim();
  const auto points = resolve_points(options.points, hint_default_point(options.domain_hint, k), k);

  Report out;
  out["command"] = "submanifold";
  out["manifold"] = imm.target().name();
  out["dim"] = k;
  out["ambient_dim"] = big_n;
  out["coordinates"] = imm.sub_coordinates();
  out["tolerance"] = options.tolerance;
  out["derivative_tolerance"] = options.derivative_tolerance;

  double worst_alpha = 0.0, worst_umb = 0.0, worst_dh = 0.0, worst_general = 0.0;
  double worst_umbilical = 0.0;
  bool umbilical_everywhere = true;
  Report pts = Report::array();
  for (const auto& u : points) {
    const SecondFundamentalData d = second_fundamental_form(imm, u);
    const CodazziResiduals cz = codazzi_residuals(imm, u, {}, options.tolerance);
    Report e;
    e["u"] = u;
    e["position"] = vector_json(d.position);
    e["induced_metric"] = matrix_json(d.induced_metric);
    Report alpha = Report::array();
    double alpha_norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      Report row = Report::array();
      for (std::size_t j = 0; j < k; ++j) {
        Report comps = Report::array();
        for (std::size_t r = 0; r < big_n - k; ++r) comps.push_back(d.alpha_component(i, j, r));
        row.push_back(std::move(comps));
        alpha_norm = std::max(alpha_norm, norm(d.ambient_metric, d.alpha_at(i, j)));
      }
      alpha.push_back(std::move(row));
    }
    e["second_fundamental_form"] = std::move(alpha);
    e["mean_curvature"] = vector_json(d.mean_curvature);
    e["mean_curvature_norm"] = norm(d.ambient_metric, d.mean_curvature);
    e["umbilicity_residual"] = d.umbilicity_residual;
    double dh = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      Eigen::VectorXd x = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
      x /= std::sqrt(d.induced_metric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
      dh = std::max(dh, norm(d.ambient_metric, normal_connection_dh(imm, u, x)));
    }
    e["dh_norm"] = dh;
    Report c;
    c["general"] = cz.general;
    c["umbilical"] = cz.umbilical ? Report(*cz.umbilical) : Report(nullptr);
    c["normal_curvature"] = cz.normal_curvature;
    e["codazzi"] = std::move(c);
    pts.push_back(std::move(e));

    worst_alpha = std::max(worst_alpha, alpha_norm);
    worst_umb = std::max(worst_umb, d.umbilicity_residual);
    worst_dh = std::max(worst_dh, dh);
    worst_general = std::max(worst_general, cz.general);
    if (cz.umbilical) worst_umbilical = std::max(worst_umbilical, *cz.umbilical);
    else umbilical_everywhere = false;
  }
  out["points"] = std::move(pts);

  const std::size_t np = points.size();
  const double dtol = options.derivative_tolerance;
  std::vector<Check> checks{{"totally_geodesic", worst_alpha, options.tolerance, np, std::nullopt},
                            {"totally_umbilical", worst_umb, options.tolerance, np, std::nullopt},
                            {"parallel_mean_curvature", worst_dh, dtol, np, std::nullopt},
                            {"codazzi_general", worst_general, 10.0 * dtol, np, std::nullopt}};
  if (umbilical_everywhere) checks.push_back({"codazzi_umbilical", worst_umbilical, 10.0 * dtol, np, std::nullopt});
  emit_checks(out, checks, 0, false);
  return out;
}

namespace {

Report identities_json(const IdentityResiduals& ids, const std::vector<Identity>& constraints) {
  Report out = Report::array();
  for (const auto& item : ids.items) {
    Report e;
    e["name"] = identity_name(item.id);
    e["formula"] = identity_formula(item.id);
    const bool constraint = std::find(constraints.begin(), constraints.end(), item.id) != constraints.end();
    e["role"] = constraint ? "constraint" : (item.applicable ? "derived" : "skipped");
    e["applicable"] = item.applicable;
    if (item.applicable) e["residual"] = item.residual;
    else e["residual"] = nullptr;
    out.push_back(std::move(e));
  }
  return out;
}

Report schouten_json(const SchoutenReport& s) {
  Report out;
  out["n"] = s.n;
  out["frames_used"] = s.frames_used;
  out["rows"] = s.rows;
  out["space_dim"] = s.space_dim;
  out["rank"] = s.rank;
  out["nullspace_dim"] = s.nullspace_dim;
  out["expected_dim"] = s.expected_dim;
  out["max_weyl"] = s.max_weyl;
  out["max_symmetry_residual"] = s.max_symmetry_residual;
  out["kulkarni_nomizu_in_nullspace"] = s.kn_in_nullspace;
  out["nullspace_in_kulkarni_nomizu"] = s.nullspace_in_kn;
  out["kulkarni_nomizu_quadruple_residual"] = s.kn_quadruple_residual;
  out["pass"] = s.pass();
  return out;
}

}  // namespace

TheoremRun verify_theorem_report(const TheoremOptions& options) {
  if (options.m < 2 || options.m > 6) {
    throw UsageError("--m must be between 2 and 6 (got " + std::to_string(options.m) + ")");
  }
  if (options.frames == 0) throw UsageError("--frames must be positive");
  FrameSampler sampler(options.seed, 2 * options.m);
  NullSpaceOptions ns;
  ns.tolerance = options.tolerance;
  ns.frame_budget = options.frames;
  const TheoremReport t = theorem_nullspace_verify(options.m, sampler, ns);

  Report out;
  out["command"] = "verify-theorem";
  out["m"] = t.m;
  out["n"] = t.n;
  out["seed"] = options.seed;
  out["tolerance"] = options.tolerance;
  out["frame_budget"] = options.frames;
  Report th;
  th["frames_used"] = t.frames_used;
  th["rows"] = t.rows;
  th["space_dim"] = t.space_dim;
  th["rank"] = t.rank;
  th["nullspace_dim"] = t.nullspace_dim;
  Report cons = Report::array();
  for (Identity id : t.constraints) cons.push_back(identity_name(id));
  th["constraints"] = std::move(cons);
  th["identities"] = identities_json(t.identity_residuals, t.constraints);
  th["quadruple_residual"] = t.quadruple_residual;
  th["max_weyl"] = t.max_weyl;
  th["max_symmetry_residual"] = t.max_symmetry_residual;
  th["schouten_containment"] = t.schouten_containment;
  out["theorem"] = std::move(th);
  out["schouten"] = schouten_json(t.schouten);
  out["pass"] = t.pass();
  return {out, t.pass()};
}

Report models_list_report() {
  Report list = Report::array();
  for (const auto& d : list_models()) {
    Report m;
    m["name"] = d.name;
    m["summary"] = d.summary;
    Report params = Report::array();
    for (const auto& p : d.parameters) {
      Report e;
      e["name"] = p.name;
      e["default"] = p.default_value;
      e["integer"] = p.integer;
      e["minimum"] = p.minimum;
      e["description"] = p.description;
      params.push_back(std::move(e));
    }
    m["parameters"] = std::move(params);
    Report expected = Report::array();
    for (const auto& x : d.expected) {
      Report e;
      e["name"] = x.name;
      if (x.value) {
        e["value"] = *x.value;
        e["tolerance"] = x.tolerance;
      }
      if (x.flag) e["flag"] = *x.flag;
      expected.push_back(std::move(e));
    }
    m["expected"] = std::move(expected);
    list.push_back(std::move(m));
  }
  Report out;
  out["command"] = "models list";
  out["models"] = std::move(list);
  return out;
}

}  // namespace ahg

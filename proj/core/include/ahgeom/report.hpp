#pragma once

// Machine-readable reports. Keys keep insertion order and every run with
// the same inputs, options and seed produces the same bytes.

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ahgeom/axiom.hpp"
#include "ahgeom/chart.hpp"
#include "ahgeom/hermitian.hpp"
#include "ahgeom/manifold_file.hpp"
#include "ahgeom/models.hpp"
#include "ahgeom/submanifold.hpp"

namespace ahg {

using Report = nlohmann::ordered_json;

struct AnalyzeOptions {
  std::vector<std::vector<double>> points;  // empty: the chart's default point
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  std::size_t samples = 32;
  /// Demand the Weyl tensor even where it is undefined (dimension < 4).
  bool require_weyl = false;
};

/// Per-point invariants plus classification entries and flags.
Report analyze_report(const ManifoldChart& chart, const AnalyzeOptions& options);

struct ClassifyOptions {
  std::vector<std::vector<double>> points;  // empty: `point_count` sampled points
  std::size_t point_count = 5;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  std::size_t samples = 32;
};

/// Structure checks and constancy of holomorphic / antiholomorphic
/// sectional curvature and of the type lambda.
Report classify_report(const ManifoldChart& chart, const ClassifyOptions& options);

struct SubmanifoldOptions {
  std::vector<std::vector<double>> points;  // empty: default point of the immersion hint
  std::vector<Interval> domain_hint;
  double tolerance = 1e-8;
  /// Tolerance for quantities that go through numeric differentiation.
  double derivative_tolerance = 1e-6;
};

Report submanifold_report(const Immersion& immersion, const SubmanifoldOptions& options);

struct TheoremOptions {
  std::size_t m = 2;
  std::size_t frames = 64;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

struct TheoremRun {
  Report report;
  bool pass = false;
};

TheoremRun verify_theorem_report(const TheoremOptions& options);

Report models_list_report();

/// Default point of a hint: the origin when every interval contains 0, else
/// the interval midpoints. An empty hint gives the origin of `dim` coordinates.
std::vector<double> hint_default_point(const std::vector<Interval>& hint, std::size_t dim);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump_report(const Report& report);

}  // namespace ahg

#pragma once

// Manifold definition files (JSON):
//
//   {
//     "name": "product_K",
//     "dim": 4,
//     "coordinates": ["x1", "y1", "x2", "y2"],
//     "metric": [["4/(1 + x1^2 + y1^2)^2", "0", ...], ...],
//     "complex_structure": [["0", "-1", ...], ...],          optional, J^i_j by row i
//     "domain_hint": [[-1, 1], ...],                           optional
//     "embedding": {                                           optional
//       "ambient_dim": 7, "map": ["...", ...],
//       "complex_structure_rule": "octonion_cross"
//     },
//     "immersion": {                                           optional
//       "coordinates": ["u", "v"], "map": ["...", ...],        map gives this chart's coordinates
//       "domain_hint": [[0.5, 1.5], ...]
//     }
//   }

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ahgeom/chart.hpp"
#include "ahgeom/submanifold.hpp"

namespace ahg {

struct EmbeddingSpec {
  std::size_t ambient_dim = 0;
  std::vector<std::string> map;
  std::string complex_structure_rule = "none";
};

struct ImmersionSpec {
  std::vector<std::string> coordinates;
  std::vector<std::string> map;
  std::vector<Interval> domain_hint;
};

struct ManifoldFile {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::vector<std::string>> metric;
  std::optional<std::vector<std::vector<std::string>>> complex_structure;
  std::vector<Interval> domain_hint;
  std::optional<EmbeddingSpec> embedding;
  std::optional<ImmersionSpec> immersion;

  std::size_t dim() const noexcept { return coordinates.size(); }
};

/// Throws ParseError for malformed JSON, missing or mistyped fields, and
/// shape mismatches.
ManifoldFile parse_manifold_file(std::string_view text);
ManifoldFile read_manifold_file(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const ManifoldFile& file);
std::string dump_manifold_file(const ManifoldFile& file);

/// Builds the chart; expression errors surface as ParseError, metric
/// asymmetry as UsageError.
ManifoldChart to_chart(const ManifoldFile& file);
/// Throws UsageError when the file has no immersion block.
Immersion to_immersion(const ManifoldFile& file);

ManifoldFile from_chart(const ManifoldChart& chart);

}  // namespace ahg

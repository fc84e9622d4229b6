#include "ahgeom/manifold_file.hpp"

#include <fstream>
#include <sstream>

#include "ahgeom/errors.hpp"

namespace ahg {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ParseError("manifold file: " + what, 0); }

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<std::string>> square_matrix(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) bad(where + " must be a " + std::to_string(n) + "x" + std::to_string(n) + " array");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = string_list(j[i], where + "[" + std::to_string(i) + "]");
    if (row.size() != n) bad(where + " must be a " + std::to_string(n) + "x" + std::to_string(n) + " array");
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Interval> intervals(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) bad(where + " needs one [lo, hi] pair per coordinate");
  std::vector<Interval> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      bad(where + " entries must be [lo, hi] number pairs");
    }
    const Interval iv{pair[0].get<double>(), pair[1].get<double>()};
    if (!(iv.lo <= iv.hi)) bad(where + " interval has lo > hi");
    out.push_back(iv);
  }
  return out;
}

json interval_json(const std::vector<Interval>& hint) {
  json out = json::array();
  for (const auto& iv : hint) out.push_back({iv.lo, iv.hi});
  return out;
}

std::vector<Expr> parse_all(const std::vector<std::string>& texts, const std::vector<std::string>& coords) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(parse(t, coords));
  return out;
}

}  // namespace

ManifoldFile parse_manifold_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifold file is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) bad("top level must be an object");

  ManifoldFile f;
  f.name = as_string(require(doc, "name"), "name");
  f.coordinates = string_list(require(doc, "coordinates"), "coordinates");
  const std::size_t n = f.coordinates.size();
  if (n == 0) bad("coordinates must not be empty");
  if (const auto it = doc.find("dim"); it != doc.end()) {
    if (!it->is_number_unsigned() || it->get<std::size_t>() != n) {
      bad("dim does not match the number of coordinates");
    }
  }
  f.metric = square_matrix(require(doc, "metric"), n, "metric");
  if (const auto it = doc.find("complex_structure"); it != doc.end() && !it->is_null()) {
    f.complex_structure = square_matrix(*it, n, "complex_structure");
  }
  if (const auto it = doc.find("domain_hint"); it != doc.end() && !it->is_null()) {
    f.domain_hint = intervals(*it, n, "domain_hint");
  }
  if (const auto it = doc.find("embedding"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) bad("embedding must be an object");
    EmbeddingSpec e;
    const json& dim = require(*it, "ambient_dim");
    if (!dim.is_number_unsigned()) bad("embedding.ambient_dim must be a positive integer");
    e.ambient_dim = dim.get<std::size_t>();
    e.map = string_list(require(*it, "map"), "embedding.map");
    if (e.map.size() != e.ambient_dim) bad("embedding.map needs ambient_dim expressions");
    if (const auto r = it->find("complex_structure_rule"); r != it->end()) {
      e.complex_structure_rule = as_string(*r, "embedding.complex_structure_rule");
      ambient_j_rule_from_string(e.complex_structure_rule);
    }
    f.embedding = std::move(e);
  }
  if (const auto it = doc.find("immersion"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) bad("immersion must be an object");
    ImmersionSpec s;
    s.coordinates = string_list(require(*it, "coordinates"), "immersion.coordinates");
    s.map = string_list(require(*it, "map"), "immersion.map");
    if (s.coordinates.empty()) bad("immersion.coordinates must not be empty");
    if (s.map.size() != n) bad("immersion.map needs one expression per chart coordinate");
    if (const auto h = it->find("domain_hint"); h != it->end() && !h->is_null()) {
      s.domain_hint = intervals(*h, s.coordinates.size(), "immersion.domain_hint");
    }
    f.immersion = std::move(s);
  }
  return f;
}

ManifoldFile read_manifold_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open manifold file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifold_file(ss.str());
}

nlohmann::ordered_json to_json(const ManifoldFile& f) {
  nlohmann::ordered_json out;
  out["name"] = f.name;
  out["dim"] = f.dim();
  out["coordinates"] = f.coordinates;
  out["metric"] = f.metric;
  if (f.complex_structure) out["complex_structure"] = *f.complex_structure;
  if (!f.domain_hint.empty()) out["domain_hint"] = interval_json(f.domain_hint);
  if (f.embedding) {
    nlohmann::ordered_json e;
    e["ambient_dim"] = f.embedding->ambient_dim;
    e["map"] = f.embedding->map;
    e["complex_structure_rule"] = f.embedding->complex_structure_rule;
    out["embedding"] = std::move(e);
  }
  if (f.immersion) {
    nlohmann::ordered_json s;
    s["coordinates"] = f.immersion->coordinates;
    s["map"] = f.immersion->map;
    if (!f.immersion->domain_hint.empty()) s["domain_hint"] = interval_json(f.immersion->domain_hint);
    out["immersion"] = std::move(s);
  }
  return out;
}

std::string dump_manifold_file(const ManifoldFile& file) { return to_json(file).dump(2) + "\n"; }

ManifoldChart to_chart(const ManifoldFile& f) {
  ExprMatrix metric;
  for (const auto& row : f.metric) metric.push_back(parse_all(row, f.coordinates));
  std::optional<ExprMatrix> j;
  if (f.complex_structure) {
    j.emplace();
    for (const auto& row : *f.complex_structure) j->push_back(parse_all(row, f.coordinates));
  }
  std::optional<Embedding> emb;
  if (f.embedding) {
    emb.emplace();
    emb->ambient_dim = f.embedding->ambient_dim;
    emb->map = parse_all(f.embedding->map, f.coordinates);
    emb->j_rule = ambient_j_rule_from_string(f.embedding->complex_structure_rule);
  }
  return ManifoldChart(f.name, f.coordinates, std::move(metric), std::move(j), std::move(emb), f.domain_hint);
}

Immersion to_immersion(const ManifoldFile& f) {
  if (!f.immersion) throw UsageError("manifold file '" + f.name + "' has no immersion block");
  return Immersion::from_text(f.immersion->coordinates, to_chart(f), f.immersion->map);
}

ManifoldFile from_chart(const ManifoldChart& chart) {
  ManifoldFile f;
  f.name = chart.name();
  f.coordinates = chart.coordinates();
  for (const auto& row : chart.metric_expressions()) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.to_string());
    f.metric.push_back(std::move(r));
  }
  if (chart.complex_structure_expressions()) {
    f.complex_structure.emplace();
    for (const auto& row : *chart.complex_structure_expressions()) {
      std::vector<std::string> r;
      for (const auto& e : row) r.push_back(e.to_string());
      f.complex_structure->push_back(std::move(r));
    }
  }
  f.domain_hint = chart.domain_hint();
  if (chart.embedding()) {
    EmbeddingSpec e;
    e.ambient_dim = chart.embedding()->ambient_dim;
    for (const auto& m : chart.embedding()->map) e.map.push_back(m.to_string());
    e.complex_structure_rule = std::string(to_string(chart.embedding()->j_rule));
    f.embedding = std::move(e);
  }
  return f;
}

}  // namespace ahg

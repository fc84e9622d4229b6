#pragma once

// Built-in manifolds with known invariants.
//
//   flat_kahler(m)        C^m with the flat metric
//   round_sphere(n, r)    S^n(r), stereographic chart, sectional 1/r^2
//   hyperbolic(n, K)      Poincare ball, sectional -K
//   product_K(K)          S^2(K) x H^2(-K), Kaehler and conformally flat
//   fubini_study(m)       CP^m, potential log(1 + |z|^2), holomorphic sectional 4
//   s6_nearly_kahler(r)   S^6(r) with J from the octonion cross product

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahgeom/chart.hpp"

namespace ahg {

using ModelParameters = std::map<std::string, double, std::less<>>;

struct ModelParameter {
  std::string name;
  double default_value = 0.0;
  bool integer = false;
  double minimum = 0.0;  // inclusive for integers, exclusive otherwise
  std::string description;
};

/// A value (or flag) the model must reproduce, at the given tolerance.
struct ExpectedInvariant {
  std::string name;
  std::optional<double> value;
  std::optional<bool> flag;
  double tolerance = 0.0;
};

struct ModelDescriptor {
  std::string name;
  std::string summary;
  std::vector<ModelParameter> parameters;
  ModelParameters values;  // resolved parameter values
  std::vector<ExpectedInvariant> expected;

  const ExpectedInvariant* find(std::string_view invariant) const;
};

/// All models with default parameters, in a fixed order.
std::vector<ModelDescriptor> list_models();

/// Descriptor with `params` applied over the defaults. Throws UsageError for
/// an unknown model, an unknown parameter, or a value out of range.
ModelDescriptor describe_model(std::string_view name, const ModelParameters& params = {});

ManifoldChart instantiate(std::string_view name, const ModelParameters& params = {});

}  // namespace ahg

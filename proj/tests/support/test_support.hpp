#pragma once

// Helpers shared by the unit and acceptance tests: fixture paths, CLI
// invocation, random polynomial metrics and finite-difference oracles.

#include <sys/wait.h>
#include <unistd.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ahgeom/chart.hpp"
#include "ahgeom/curvature.hpp"
#include "ahgeom/expr.hpp"
#include "ahgeom/frame.hpp"

namespace ahg::testing {

inline std::string fixture(const std::string& name) {
  return (std::filesystem::path(AHGEOM_FIXTURE_DIR) / name).string();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the CLI with `args`, capturing stdout; stderr is discarded.
inline CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto out_path = std::filesystem::temp_directory_path() /
                        ("ahgeom_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".txt");
  const std::string command =
      std::string("\"") + AHGEOM_CLI_PATH + "\" " + args + " > \"" + out_path.string() + "\" 2>/dev/null";
  const int status = std::system(command.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out_path);
  std::filesystem::remove(out_path);
  return r;
}

/// Text of a random polynomial of total degree <= `degree` in `coords`, with
/// coefficients uniform in [-scale, scale).
inline std::string random_polynomial(FrameSampler& s, const std::vector<std::string>& coords, int degree,
                                     double scale) {
  std::vector<std::vector<std::size_t>> monomials{{}};
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (int d = 1; d <= degree; ++d) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& m : frontier) {
      const std::size_t start = m.empty() ? 0 : m.back();
      for (std::size_t i = start; i < coords.size(); ++i) {
        auto grown = m;
        grown.push_back(i);
        next.push_back(grown);
      }
    }
    monomials.insert(monomials.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::string text;
  for (const auto& m : monomials) {
    const double c = scale * s.uniform();
    if (!text.empty()) text += " + ";
    text += "(" + format_number(c) + ")";
    for (std::size_t i : m) text += "*" + coords[i];
  }
  return text;
}

inline std::vector<std::string> coordinate_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

/// Component texts of a random cubic-polynomial metric, positive definite
/// on the box [-0.3, 0.3]^n by diagonal dominance.
inline std::vector<std::vector<std::string>> random_metric_text(FrameSampler& s, std::size_t n) {
  const auto coords = coordinate_names(n);
  std::vector<std::vector<std::string>> g(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i) {
    g[i][i] = "1 + 0.12*(" + random_polynomial(s, coords, 3, 1.0) + ")";
    for (std::size_t j = i + 1; j < n; ++j) {
      g[i][j] = "0.04*(" + random_polynomial(s, coords, 3, 1.0) + ")";
      g[j][i] = g[i][j];
    }
  }
  return g;
}

/// e^{2 phi} g, component by component.
inline std::vector<std::vector<std::string>> conformal_text(const std::vector<std::vector<std::string>>& g,
                                                            const std::string& phi) {
  auto out = g;
  for (auto& row : out)
    for (auto& e : row) e = "exp(2*(" + phi + "))*(" + e + ")";
  return out;
}

inline std::vector<double> random_point(FrameSampler& s, std::size_t n, double half_width) {
  std::vector<double> p(n);
  for (auto& v : p) v = half_width * s.uniform();
  return p;
}

/// Christoffel symbols from central differences of the evaluated metric.
inline Christoffel christoffel_fd(const ManifoldChart& chart, const std::vector<double>& p, double h = 1e-5) {
  const std::size_t n = chart.dim();
  std::vector<Eigen::MatrixXd> dg(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto plus = p;
    auto minus = p;
    plus[k] += h;
    minus[k] -= h;
    dg[k] = (chart.metric(plus) - chart.metric(minus)) / (2 * h);
  }
  const Eigen::MatrixXd gi = chart.metric(p).inverse();
  Christoffel c(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double v = 0.0;
        for (std::size_t l = 0; l < n; ++l) v += 0.5 * gi(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        c(k, i, j) = v;
      }
  return c;
}

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace ahg::testing

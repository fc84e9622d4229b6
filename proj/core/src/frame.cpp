#include "ahgeom/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ahgeom/errors.hpp"

namespace ahg {

namespace {

constexpr double kPivotRatio = 1e-10;
constexpr int kMaxRedraws = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Projects v off an orthonormal set, twice.
void project_out(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis,
                 const Eigen::MatrixXd& g) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) v -= inner(g, b, v) * b;
  }
}

// Draws a unit vector orthogonal to `basis`; redraws on a near-degenerate
// residual, which for random input only happens with probability ~0.
Eigen::VectorXd draw_orthogonal(const Eigen::MatrixXd& g, const std::vector<Eigen::VectorXd>& basis,
                                FrameSampler& sampler) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Eigen::VectorXd v = sampler.vector();
    const double before = norm(g, v);
    project_out(v, basis, g);
    const double after = norm(g, v);
    if (after > 1e-6 * before) return v / after;
  }
  throw RankError("could not draw a vector outside the current span");
}

void check_structure(const Eigen::MatrixXd& g, const Eigen::MatrixXd& j, double tol) {
  if (g.rows() != j.rows() || g.cols() != j.cols() || g.rows() != g.cols()) {
    throw DimensionError("metric and J shapes differ");
  }
  if (g.rows() % 2 != 0) throw StructureError("almost complex structure needs even dimension");
  const auto [jj, compat] = hermitian_residuals(g, j);
  if (jj > tol) throw StructureError("J^2 + I residual " + std::to_string(jj) + " exceeds tolerance");
  if (compat > tol) {
    throw StructureError("g(J.,J.) - g residual " + std::to_string(compat) + " exceeds tolerance");
  }
}

}  // namespace

FrameSampler::FrameSampler(std::uint64_t seed, std::size_t dim)
    : seed_(seed), dim_(dim), engine_(seed) {}

FrameSampler FrameSampler::for_worker(std::uint64_t base_seed, std::size_t worker, std::size_t dim) {
  return FrameSampler(splitmix64(base_seed ^ splitmix64(worker + 1)), dim);
}

double FrameSampler::uniform() {
  const std::uint64_t bits = engine_() >> 11;  // 53 bits
  return static_cast<double>(bits) * 0x1p-52 - 1.0;
}

double FrameSampler::uniform(double lo, double hi) { return lo + (hi - lo) * 0.5 * (uniform() + 1.0); }

Eigen::VectorXd FrameSampler::vector() {
  Eigen::VectorXd v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = uniform();
  return v;
}

double inner(const Eigen::MatrixXd& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x.dot(g * y);
}

double norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& x) {
  return std::sqrt(std::max(0.0, inner(g, x, x)));
}

std::vector<Eigen::VectorXd> gram_schmidt(std::span<const Eigen::VectorXd> vectors,
                                          const Eigen::MatrixXd& g) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Eigen::VectorXd v = vectors[i];
    const double before = norm(g, v);
    project_out(v, out, g);
    const double after = norm(g, v);
    if (before == 0.0 || after < kPivotRatio * before) {
      throw RankError("rank deficiency at vector " + std::to_string(i));
    }
    out.push_back(v / after);
  }
  return out;
}

std::pair<double, double> hermitian_residuals(const Eigen::MatrixXd& g, const Eigen::MatrixXd& j) {
  const Eigen::Index n = g.rows();
  const double jj = (j * j + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  const double scale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  const double compat = (j.transpose() * g * j - g).cwiseAbs().maxCoeff() / scale;
  return {jj, compat};
}

std::vector<Eigen::VectorXd> adapted_hermitian_frame(const Eigen::MatrixXd& g,
                                                     const Eigen::MatrixXd& j, double tol) {
  check_structure(g, j, tol);
  const Eigen::Index n = g.rows();
  std::vector<Eigen::VectorXd> frame;
  for (Eigen::Index c = 0; c < n && static_cast<Eigen::Index>(frame.size()) < n; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, c);
    project_out(v, frame, g);
    const double len = norm(g, v);
    if (len < 1e-8) continue;
    v /= len;
    frame.push_back(v);
    frame.push_back(j * v);
  }
  return frame;
}

std::vector<Eigen::VectorXd> adapted_hermitian_frame(const Eigen::MatrixXd& g,
                                                     const Eigen::MatrixXd& j,
                                                     FrameSampler& sampler, double tol) {
  check_structure(g, j, tol);
  if (static_cast<Eigen::Index>(sampler.dim()) != g.rows()) {
    throw DimensionError("sampler dimension differs from the metric");
  }
  const Eigen::Index n = g.rows();
  std::vector<Eigen::VectorXd> frame;
  while (static_cast<Eigen::Index>(frame.size()) < n) {
    Eigen::VectorXd v = draw_orthogonal(g, frame, sampler);
    frame.push_back(v);
    frame.push_back(j * v);
  }
  return frame;
}

std::vector<Eigen::VectorXd> sample_orthonormal_set(const Eigen::MatrixXd& g, std::size_t k,
                                                    FrameSampler& sampler,
                                                    std::span<const Eigen::VectorXd> constraints) {
  const auto n = static_cast<std::size_t>(g.rows());
  if (sampler.dim() != n) throw DimensionError("sampler dimension differs from the metric");

  // Orthonormal basis of the constraint span; dependent constraints add nothing.
  std::vector<Eigen::VectorXd> fixed;
  for (const auto& c : constraints) {
    Eigen::VectorXd v = c;
    const double before = norm(g, v);
    project_out(v, fixed, g);
    const double after = norm(g, v);
    if (before > 0.0 && after > kPivotRatio * before) fixed.push_back(v / after);
  }
  if (k + fixed.size() > n) {
    throw DimensionError("cannot fit " + std::to_string(k) + " orthonormal vectors in dimension " +
                         std::to_string(n) + " with " + std::to_string(fixed.size()) +
                         " constraints");
  }
  std::vector<Eigen::VectorXd> out;
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::VectorXd v = draw_orthogonal(g, fixed, sampler);
    fixed.push_back(v);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ahg

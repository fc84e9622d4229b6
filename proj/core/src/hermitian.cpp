#include "ahgeom/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"

namespace ahg {

namespace {

constexpr double kAngleTol = 1e-8;

SampleStats stats(const std::vector<double>& xs) {
  SampleStats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

// Euclidean coordinates for g: w = L^T v with g = L L^T.
Eigen::MatrixXd to_euclidean(const Eigen::MatrixXd& g, std::span<const Eigen::VectorXd> vectors) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite");
  const Eigen::MatrixXd lt = llt.matrixL().transpose();
  Eigen::MatrixXd out(g.rows(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = lt * vectors[i];
  return out;
}

}  // namespace

StructureResiduals validate_structure(const ManifoldChart& chart, std::span<const double> p) {
  const Eigen::MatrixXd j = chart.complex_structure(p);
  const Eigen::MatrixXd g = chart.metric(p);
  const auto [jj, compat] = hermitian_residuals(g, j);
  return {jj, compat};
}

std::vector<Eigen::MatrixXd> nabla_j(const ManifoldChart& chart, std::span<const double> p) {
  const std::size_t n = chart.dim();
  const Eigen::MatrixXd j = chart.complex_structure(p);
  const auto dj = chart.complex_structure_derivatives(p);
  const Christoffel gamma = christoffel(chart, p);
  std::vector<Eigen::MatrixXd> out(n, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        double s = dj[k](a, b);
        for (std::size_t l = 0; l < n; ++l) s += gamma(a, k, l) * j(l, b) - gamma(l, k, b) * j(a, l);
        out[k](a, b) = s;
      }
  return out;
}

NablaJResiduals nabla_j_residuals(const ManifoldChart& chart, std::span<const double> p,
                                  FrameSampler& sampler, std::size_t samples) {
  const std::size_t n = chart.dim();
  const auto nj = nabla_j(chart, p);
  const Eigen::MatrixXd g = chart.metric(p);
  NablaJResiduals out;
  for (const auto& m : nj) out.kahler = std::max(out.kahler, m.cwiseAbs().maxCoeff());
  for (std::size_t s = 0; s < samples; ++s) {
    Eigen::VectorXd x = sampler.vector();
    x /= norm(g, x);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < n; ++k) v += x[k] * (nj[k] * x);
    out.nearly_kahler = std::max(out.nearly_kahler, norm(g, v));
  }
  return out;
}

double rk_residual(const PointTensor& r, const Eigen::MatrixXd& j) {
  const std::size_t n = r.dim();
  // R(JX,JY,JZ,JU) on basis vectors is R pulled back by J in every slot.
  PointTensor pulled = r;
  for (std::size_t slot = 0; slot < 4; ++slot) {
    PointTensor next = pulled;
    const auto src = pulled.data();
    auto dst = next.data();
    std::size_t inner = 1;
    for (std::size_t s = slot + 1; s < 4; ++s) inner *= n;
    std::size_t outer = 1;
    for (std::size_t s = 0; s < slot; ++s) outer *= n;
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t in = 0; in < inner; ++in) {
          double sum = 0.0;
          for (std::size_t b = 0; b < n; ++b) sum += j(b, a) * src[(o * n + b) * inner + in];
          dst[(o * n + a) * inner + in] = sum;
        }
    pulled = std::move(next);
  }
  return (r - pulled).max_abs();
}

std::string to_string(const PlaneType& t) {
  switch (t.kind) {
    case PlaneKind::Holomorphic: return "holomorphic";
    case PlaneKind::Antiholomorphic: return "antiholomorphic";
    case PlaneKind::Coholomorphic: return "coholomorphic(" + std::to_string(t.n) + ")";
    case PlaneKind::None: return "none";
  }
  return "none";
}

PlaneType plane_type(std::span<const Eigen::VectorXd> vectors, const Eigen::MatrixXd& g,
                     const Eigen::MatrixXd& j) {
  if (vectors.empty()) throw RankError("empty plane");
  gram_schmidt(vectors, g);  // rank check only

  std::vector<Eigen::VectorXd> images;
  for (const auto& v : vectors) images.push_back(j * v);

  Eigen::HouseholderQR<Eigen::MatrixXd> qa(to_euclidean(g, vectors));
  Eigen::HouseholderQR<Eigen::MatrixXd> qb(to_euclidean(g, images));
  const auto k = static_cast<Eigen::Index>(vectors.size());
  const Eigen::MatrixXd a = qa.householderQ() * Eigen::MatrixXd::Identity(g.rows(), k);
  const Eigen::MatrixXd b = qb.householderQ() * Eigen::MatrixXd::Identity(g.rows(), k);

  // Cosines of principal angles, and sines from the projection residual.
  Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(a.transpose() * b);
  Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(a - b * (b.transpose() * a));
  const Eigen::VectorXd cosines = cos_svd.singularValues();
  const Eigen::VectorXd sines = sin_svd.singularValues();

  std::size_t shared = 0;
  for (Eigen::Index i = 0; i < sines.size(); ++i) {
    if (sines[i] < kAngleTol) ++shared;
  }
  const auto dim = static_cast<std::size_t>(k);
  if (shared == dim) return {PlaneKind::Holomorphic, 0};
  if (cosines.maxCoeff() < kAngleTol) return {PlaneKind::Antiholomorphic, 0};
  if (dim % 2 == 1 && shared == dim - 1) return {PlaneKind::Coholomorphic, (dim - 1) / 2};
  return {PlaneKind::None, 0};
}

const ClassificationEntry* ClassificationReport::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ClassificationReport constancy_report(const ManifoldChart& chart,
                                      std::span<const std::vector<double>> points,
                                      FrameSampler& sampler, std::size_t samples, double tol) {
  if (chart.dim() < 4) {
    throw DimensionError("antiholomorphic planes need dimension >= 4");
  }
  if (points.empty()) throw UsageError("constancy_report needs at least one point");
  if (samples == 0) throw UsageError("constancy_report needs at least one sample");

  ClassificationReport report;
  for (const auto& p : points) {
    const PointData pd = point_data(chart, p, false);
    const Eigen::MatrixXd& g = pd.g;
    const Eigen::MatrixXd& j = *pd.j;
    std::vector<double> hs;
    std::vector<double> ks;
    std::vector<double> ls;
    for (std::size_t s = 0; s < samples; ++s) {
      const auto xs = sample_orthonormal_set(g, 1, sampler);
      const Eigen::VectorXd& x = xs[0];
      hs.push_back(holomorphic_sectional(pd.riemann, g, j, x));
      const std::vector<Eigen::VectorXd> cons{x, j * x};
      const auto ys = sample_orthonormal_set(g, 1, sampler, cons);
      ks.push_back(sectional(pd.riemann, g, x, ys[0]));
      ls.push_back(lambda_type(pd.riemann, g, j, x, ys[0]));
    }
    report.points.push_back({p, stats(hs), stats(ks), stats(ls)});
  }

  auto add = [&](const std::string& base, SampleStats PointConstancy::*field) {
    double pointwise = 0.0;
    double overall = 0.0;
    for (const auto& pc : report.points) {
      pointwise = std::max(pointwise, (pc.*field).stddev);
      overall += (pc.*field).mean;
    }
    overall /= static_cast<double>(report.points.size());
    double spread = 0.0;
    for (const auto& pc : report.points) spread = std::max(spread, std::abs((pc.*field).mean - overall));
    const std::size_t n = samples * report.points.size();
    report.entries.push_back({base + ".pointwise", pointwise, pointwise <= tol, tol, n,
                              sampler.seed(), overall});
    // Global constancy also needs pointwise constancy.
    const double global = std::max(pointwise, spread);
    report.entries.push_back({base + ".global", global, global <= tol, tol, n, sampler.seed(), overall});
  };
  add("holomorphic_sectional", &PointConstancy::holomorphic);
  add("antiholomorphic_sectional", &PointConstancy::antiholomorphic);
  add("constant_type", &PointConstancy::constant_type);
  return report;
}

}  // namespace ahg

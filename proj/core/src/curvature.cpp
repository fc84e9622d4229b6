#include "ahgeom/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "ahgeom/errors.hpp"
#include "ahgeom/frame.hpp"

namespace ahg {

namespace {

Eigen::MatrixXd inverse_metric(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("singular metric");
  const Eigen::Index n = g.rows();
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  return 0.5 * (inv + inv.transpose());
}

// Gamma_{m, ij} = 1/2 (d_i g_jm + d_j g_im - d_m g_ij)
double first_kind(const std::vector<Eigen::MatrixXd>& dg, std::size_t m, std::size_t i,
                  std::size_t j) {
  return 0.5 * (dg[i](j, m) + dg[j](i, m) - dg[m](i, j));
}

}  // namespace

double Christoffel::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Christoffel christoffel(const ManifoldChart& chart, std::span<const double> p) {
  const std::size_t n = chart.dim();
  const Eigen::MatrixXd g_inv = inverse_metric(chart.metric(p));
  const auto dg = chart.metric_first_derivatives(p);
  Christoffel gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t m = 0; m < n; ++m) s += g_inv(k, m) * first_kind(dg, m, i, j);
        gamma(k, i, j) = s;
        gamma(k, j, i) = s;
      }
  return gamma;
}

PointTensor riemann(const ManifoldChart& chart, std::span<const double> p) {
  const std::size_t n = chart.dim();
  const Eigen::MatrixXd g = chart.metric(p);
  const Eigen::MatrixXd g_inv = inverse_metric(g);
  const auto dg = chart.metric_first_derivatives(p);
  const auto ddg = chart.metric_second_derivatives(p);

  // Gamma_{m,ij} and its derivatives d_a Gamma_{m,ij}.
  std::vector<double> low(n * n * n);
  std::vector<double> dlow(n * n * n * n);
  auto L = [n](std::size_t m, std::size_t i, std::size_t j) { return (m * n + i) * n + j; };
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        low[L(m, i, j)] = first_kind(dg, m, i, j);
        for (std::size_t a = 0; a < n; ++a) {
          dlow[L(m, i, j) * n + a] =
              0.5 * (ddg[a * n + i](j, m) + ddg[a * n + j](i, m) - ddg[a * n + m](i, j));
        }
      }

  // Gamma^k_ij and d_a Gamma^k_ij, using d_a g^{km} = -g^{kp} d_a g_pq g^{qm}.
  std::vector<double> up(n * n * n, 0.0);
  std::vector<double> dup(n * n * n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const Eigen::MatrixXd dginv = -g_inv * dg[a] * g_inv;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0.0;
          for (std::size_t m = 0; m < n; ++m) {
            s += dginv(k, m) * low[L(m, i, j)] + g_inv(k, m) * dlow[L(m, i, j) * n + a];
          }
          dup[L(k, i, j) * n + a] = s;
        }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t m = 0; m < n; ++m) s += g_inv(k, m) * low[L(m, i, j)];
        up[L(k, i, j)] = s;
      }

  // R(d_a, d_b) d_c = V^e d_e with
  // V^e = d_a Gamma^e_bc - d_b Gamma^e_ac + Gamma^e_af Gamma^f_bc - Gamma^e_bf Gamma^f_ac.
  PointTensor r = PointTensor::covariant4(n);
  Eigen::VectorXd v(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t e = 0; e < n; ++e) {
          double s = dup[L(e, b, c) * n + a] - dup[L(e, a, c) * n + b];
          for (std::size_t f = 0; f < n; ++f) {
            s += up[L(e, a, f)] * up[L(f, b, c)] - up[L(e, b, f)] * up[L(f, a, c)];
          }
          v[e] = s;
        }
        const Eigen::VectorXd lowered = g * v;
        for (std::size_t d = 0; d < n; ++d) {
          r(a, b, c, d) = lowered[d];
          r(b, a, c, d) = -lowered[d];
        }
      }
  return r;
}

RicciScalar ricci_scalar(const PointTensor& r, const Eigen::MatrixXd& g) {
  const std::size_t n = r.dim();
  const Eigen::MatrixXd g_inv = inverse_metric(g);
  RicciScalar out;
  out.ricci = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t d = 0; d < n; ++d) s += g_inv(a, d) * r(a, b, c, d);
      out.ricci(b, c) = s;
    }
  out.ricci = 0.5 * (out.ricci + out.ricci.transpose());
  out.scalar = (g_inv.array() * out.ricci.array()).sum();
  return out;
}

PointTensor weyl(const PointTensor& r, const Eigen::MatrixXd& ricci, double scalar,
                 const Eigen::MatrixXd& g) {
  const std::size_t n = r.dim();
  if (n < 4) {
    throw DimensionError("Weyl tensor needs dimension >= 4 (got " + std::to_string(n) + ")");
  }
  const double k1 = 1.0 / static_cast<double>(n - 2);
  const double k2 = scalar / static_cast<double>((n - 1) * (n - 2));
  PointTensor c = PointTensor::covariant4(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t d = 0; d < n; ++d) {
          const double ricci_part = g(a, d) * ricci(b, e) - g(a, e) * ricci(b, d) +
                                    g(b, e) * ricci(a, d) - g(b, d) * ricci(a, e);
          const double metric_part = g(a, d) * g(b, e) - g(a, e) * g(b, d);
          c(a, b, e, d) = r(a, b, e, d) - k1 * ricci_part + k2 * metric_part;
        }
  return c;
}

PointData point_data(const ManifoldChart& chart, std::span<const double> p, bool with_weyl) {
  PointData out;
  out.point.assign(p.begin(), p.end());
  out.g = chart.metric(p);
  out.g_inverse = inverse_metric(out.g);
  if (chart.has_complex_structure()) out.j = chart.complex_structure(p);
  out.christoffel = christoffel(chart, p);
  out.riemann = riemann(chart, p);
  auto rs = ricci_scalar(out.riemann, out.g);
  out.ricci = std::move(rs.ricci);
  out.scalar = rs.scalar;
  if (with_weyl) out.weyl = weyl(out.riemann, out.ricci, out.scalar, out.g);
  return out;
}

double sectional(const PointTensor& r, const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& y) {
  const double xx = inner(g, x, x);
  const double yy = inner(g, y, y);
  const double xy = inner(g, x, y);
  const double area = xx * yy - xy * xy;
  if (!(area > 1e-12 * xx * yy) || xx == 0.0 || yy == 0.0) {
    throw DomainError("degenerate plane: X and Y do not span a 2-plane");
  }
  return contract4(r, x, y, y, x) / area;
}

double holomorphic_sectional(const PointTensor& r, const Eigen::MatrixXd& g,
                             const Eigen::MatrixXd& j, const Eigen::VectorXd& x) {
  const double xx = inner(g, x, x);
  if (!(xx > 0.0)) throw DomainError("holomorphic sectional curvature of the zero vector");
  const Eigen::VectorXd jx = j * x;
  return contract4(r, x, jx, jx, x) / (xx * xx);
}

double lambda_type(const PointTensor& r, const Eigen::MatrixXd& g, const Eigen::MatrixXd& j,
                   const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double nx = norm(g, x);
  const double ny = norm(g, y);
  if (!(nx > 0.0) || !(ny > 0.0)) throw DomainError("lambda of a zero vector");
  const Eigen::VectorXd ux = x / nx;
  const Eigen::VectorXd uy = y / ny;
  const Eigen::VectorXd jx = j * ux;
  const Eigen::VectorXd jy = j * uy;
  return contract4(r, ux, uy, uy, ux) - contract4(r, ux, uy, jy, jx);
}

double curvature_symmetry_residual(const PointTensor& r) {
  const std::size_t n = r.dim();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const double v = r(a, b, c, d);
          worst = std::max({worst, std::abs(v + r(b, a, c, d)), std::abs(v + r(a, b, d, c)),
                            std::abs(v - r(c, d, a, b)),
                            std::abs(v + r(b, c, a, d) + r(c, a, b, d))});
        }
  const double scale = r.max_abs();
  return scale > 0.0 ? worst / scale : worst;
}

double trace_residual(const PointTensor& c, const Eigen::MatrixXd& g_inverse) {
  const std::size_t n = c.dim();
  double worst = 0.0;
  // Contract every slot pair.
  for (std::size_t s1 = 0; s1 < 4; ++s1)
    for (std::size_t s2 = s1 + 1; s2 < 4; ++s2)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          double sum = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
              std::size_t idx[4];
              std::size_t free_pos = 0;
              for (std::size_t s = 0; s < 4; ++s) {
                if (s == s1) idx[s] = i;
                else if (s == s2) idx[s] = k;
                else idx[s] = (free_pos++ == 0) ? p : q;
              }
              sum += g_inverse(i, k) * c(idx[0], idx[1], idx[2], idx[3]);
            }
          worst = std::max(worst, std::abs(sum));
        }
  const double scale = c.max_abs();
  return scale > 1.0 ? worst / scale : worst;
}

double invariant_norm(const PointTensor& t, const Eigen::MatrixXd& g) {
  const std::size_t n = t.dim();
  if (t.rank() != 4) throw DimensionError("invariant_norm expects a rank-4 tensor");
  // Components in a g-orthonormal frame E = L^{-T}, g = L L^T.
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("singular metric");
  const Eigen::MatrixXd e = llt.matrixL().transpose().solve(
      Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  std::vector<double> cur(t.data().begin(), t.data().end());
  std::vector<double> next(cur.size());
  // Transform one slot at a time; each pass moves the transformed slot to the back.
  for (int slot = 0; slot < 4; ++slot) {
    const std::size_t rest = n * n * n;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t r = 0; r < rest; ++r) {
        double s = 0.0;
        for (std::size_t b = 0; b < n; ++b) s += e(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) * cur[b * rest + r];
        next[r * n + a] = s;
      }
    std::swap(cur, next);
  }
  double sum = 0.0;
  for (double v : cur) sum += v * v;
  return std::sqrt(sum);
}

PointTensor kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g) {
  const auto n = static_cast<std::size_t>(g.rows());
  PointTensor t = PointTensor::covariant4(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t u = 0; u < n; ++u) {
          t(x, y, z, u) = h(x, u) * g(y, z) + h(y, z) * g(x, u) - h(x, z) * g(y, u) -
                          h(y, u) * g(x, z);
        }
  return t;
}

PointTensor constant_curvature_tensor(const Eigen::MatrixXd& g, double k) {
  return (0.5 * k) * kulkarni_nomizu(g, g);
}

}  // namespace ahg

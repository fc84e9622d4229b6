#include "ahgeom/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"
#include "ahgeom/frame.hpp"

namespace ahg {

namespace {

constexpr double kStep = 1e-5;

ManifoldChart build_induced(const std::vector<std::string>& coords, const ManifoldChart& target,
                            const std::vector<Expr>& map, const std::vector<Expr>& d1) {
  const std::size_t k = coords.size();
  const std::size_t n = target.dim();
  ExprMatrix pulled(n, std::vector<Expr>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      pulled[a][b] = substitute(target.metric_expressions()[a][b], map);
      pulled[b][a] = pulled[a][b];
    }
  ExprMatrix h(k, std::vector<Expr>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Expr sum;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (pulled[a][b].is_zero()) continue;
          sum = sum + pulled[a][b] * d1[a * k + i] * d1[b * k + j];
        }
      h[i][j] = sum;
      h[j][i] = sum;
    }
  return ManifoldChart(target.name() + "_induced", coords, std::move(h));
}

// Richardson-extrapolated central difference of a vector-valued field.
Eigen::VectorXd richardson(const std::function<Eigen::VectorXd(std::span<const double>)>& field,
                           std::span<const double> u, std::size_t i) {
  std::vector<double> q(u.begin(), u.end());
  auto central = [&](double h) {
    q[i] = u[i] + h;
    const Eigen::VectorXd plus = field(q);
    q[i] = u[i] - h;
    const Eigen::VectorXd minus = field(q);
    q[i] = u[i];
    return Eigen::VectorXd((plus - minus) / (2.0 * h));
  };
  const Eigen::VectorXd coarse = central(kStep);
  const Eigen::VectorXd fine = central(0.5 * kStep);
  return (4.0 * fine - coarse) / 3.0;
}

Eigen::VectorXd gamma_apply(const Christoffel& gamma, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const std::size_t n = gamma.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (x[b] == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) out[a] += gamma(a, b, c) * x[b] * y[c];
    }
  return out;
}

Eigen::VectorXd project_normal(const SecondFundamentalData& d, const Eigen::VectorXd& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (Eigen::Index r = 0; r < d.normal.cols(); ++r) {
    out += inner(d.ambient_metric, d.normal.col(r), v) * d.normal.col(r);
  }
  return out;
}

}  // namespace

Immersion::Immersion(std::vector<std::string> sub_coordinates, ManifoldChart target,
                     std::vector<Expr> map)
    : sub_coordinates_(std::move(sub_coordinates)),
      target_(std::move(target)),
      map_(std::move(map)),
      induced_(target_) {
  const std::size_t k = dim();
  const std::size_t n = ambient_dim();
  if (k == 0 || k >= n) throw DimensionError("immersion needs 0 < sub-dimension < ambient dimension");
  if (map_.size() != n) throw DimensionError("immersion map needs one expression per target coordinate");
  d1_.resize(n * k);
  d2_.resize(n * k * k);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < k; ++i) {
      d1_[a * k + i] = differentiate(map_[a], i);
      for (std::size_t j = 0; j < k; ++j) d2_[(a * k + i) * k + j] = differentiate(d1_[a * k + i], j);
    }
  induced_ = build_induced(sub_coordinates_, target_, map_, d1_);
}

Immersion Immersion::from_text(std::vector<std::string> sub_coordinates, ManifoldChart target,
                               const std::vector<std::string>& map) {
  std::vector<Expr> exprs;
  for (const auto& m : map) exprs.push_back(parse(m, sub_coordinates));
  return Immersion(std::move(sub_coordinates), std::move(target), std::move(exprs));
}

Eigen::VectorXd Immersion::position(std::span<const double> u) const {
  if (u.size() != dim()) throw DimensionError("parameter point has wrong number of coordinates");
  Eigen::VectorXd x(ambient_dim());
  for (std::size_t a = 0; a < ambient_dim(); ++a) x[a] = map_[a].evaluate(u);
  return x;
}

Eigen::MatrixXd Immersion::tangent(std::span<const double> u) const {
  if (u.size() != dim()) throw DimensionError("parameter point has wrong number of coordinates");
  const std::size_t k = dim();
  Eigen::MatrixXd t(ambient_dim(), k);
  for (std::size_t a = 0; a < ambient_dim(); ++a)
    for (std::size_t i = 0; i < k; ++i) t(a, i) = d1_[a * k + i].evaluate(u);
  const Eigen::VectorXd x = position(u);
  Eigen::LLT<Eigen::MatrixXd> llt(target_.metric(std::vector<double>(x.data(), x.data() + x.size())));
  const Eigen::MatrixXd weighted = llt.matrixL().transpose() * t;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(weighted).singularValues();
  if (!(sv[0] > 0.0) || sv[sv.size() - 1] <= 1e-8 * sv[0]) {
    throw RankError("immersion Jacobian is rank deficient at the requested point");
  }
  return t;
}

std::vector<Eigen::VectorXd> Immersion::second_derivatives(std::span<const double> u) const {
  const std::size_t k = dim();
  std::vector<Eigen::VectorXd> out(k * k, Eigen::VectorXd(ambient_dim()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t a = 0; a < ambient_dim(); ++a) out[i * k + j][a] = d2_[(a * k + i) * k + j].evaluate(u);
  return out;
}

double SecondFundamentalData::alpha_component(std::size_t i, std::size_t j, std::size_t r) const {
  return inner(ambient_metric, normal.col(static_cast<Eigen::Index>(r)), alpha_at(i, j));
}

Eigen::MatrixXd induced_metric(const Immersion& imm, std::span<const double> u) {
  imm.tangent(u);  // rank condition
  return imm.induced_chart().metric(u);
}

SecondFundamentalData second_fundamental_form(const Immersion& imm, std::span<const double> u) {
  const std::size_t k = imm.dim();
  const std::size_t n = imm.ambient_dim();
  SecondFundamentalData d;
  d.u.assign(u.begin(), u.end());
  d.position = imm.position(u);
  const std::vector<double> x(d.position.data(), d.position.data() + n);
  d.ambient_metric = imm.target().metric(x);
  d.tangent = imm.tangent(u);
  d.induced_metric = d.tangent.transpose() * d.ambient_metric * d.tangent;
  const Eigen::MatrixXd& g = d.ambient_metric;

  // Normal frame: complete the tangent frame with whichever coordinate
  // vector has the largest residual, until N - k normals are found.
  std::vector<Eigen::VectorXd> tangents;
  for (std::size_t i = 0; i < k; ++i) tangents.push_back(d.tangent.col(static_cast<Eigen::Index>(i)));
  std::vector<Eigen::VectorXd> basis = gram_schmidt(tangents, g);
  d.normal.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n - k));
  std::vector<bool> used(n, false);
  for (std::size_t r = 0; r < n - k; ++r) {
    Eigen::VectorXd best;
    double best_len = -1.0;
    std::size_t best_a = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (used[a]) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(a));
      const double before = norm(g, v);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) v -= inner(g, b, v) * b;
      const double len = norm(g, v) / before;
      if (len > best_len) {
        best_len = len;
        best = v;
        best_a = a;
      }
    }
    used[best_a] = true;
    best /= norm(g, best);
    const double scale = best.cwiseAbs().maxCoeff();
    for (Eigen::Index c = 0; c < best.size(); ++c) {
      if (std::abs(best[c]) > 1e-9 * scale) {
        if (best[c] < 0.0) best = -best;
        break;
      }
    }
    basis.push_back(best);
    d.normal.col(static_cast<Eigen::Index>(r)) = best;
  }

  const Christoffel gamma = christoffel(imm.target(), x);
  const auto dd = imm.second_derivatives(u);
  d.alpha.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const Eigen::VectorXd v = dd[i * k + j] + gamma_apply(gamma, d.tangent.col(static_cast<Eigen::Index>(i)),
                                                            d.tangent.col(static_cast<Eigen::Index>(j)));
      d.alpha[i * k + j] = project_normal(d, v);
      d.alpha[j * k + i] = d.alpha[i * k + j];
    }
  d.mean_curvature = mean_curvature(d);
  d.umbilicity_residual = umbilicity_residual(d);
  return d;
}

Eigen::VectorXd mean_curvature(const SecondFundamentalData& data) {
  const std::size_t k = data.dim();
  const Eigen::MatrixXd h_inv = data.induced_metric.inverse();
  Eigen::VectorXd h = Eigen::VectorXd::Zero(data.position.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) h += h_inv(i, j) * data.alpha_at(i, j);
  return h / static_cast<double>(k);
}

double umbilicity_residual(const SecondFundamentalData& data) {
  const std::size_t k = data.dim();
  const Eigen::MatrixXd& g = data.ambient_metric;
  const double h_len = norm(g, data.mean_curvature);
  double worst = 0.0;
  double scale = 0.0;
  double metric_scale = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double hij = data.induced_metric(i, j);
      worst = std::max(worst, norm(g, data.alpha_at(i, j) - hij * data.mean_curvature));
      scale = std::max({scale, norm(g, data.alpha_at(i, j)), std::abs(hij) * h_len});
      metric_scale = std::max(metric_scale, std::abs(hij));
    }
  if (scale <= 1e-12 * metric_scale) return 0.0;
  return worst / scale;
}

namespace {

// Ambient covariant derivative of a vector field V(u) along d_i, projected
// to the normal bundle. `field_derivative` is d_i V.
Eigen::VectorXd normal_derivative(const SecondFundamentalData& d, const Christoffel& gamma,
                                  std::size_t i, const Eigen::VectorXd& value,
                                  const Eigen::VectorXd& field_derivative) {
  const Eigen::VectorXd full =
      field_derivative + gamma_apply(gamma, d.tangent.col(static_cast<Eigen::Index>(i)), value);
  return project_normal(d, full);
}

}  // namespace

Eigen::VectorXd normal_connection_dh(const Immersion& imm, std::span<const double> u,
                                     const Eigen::VectorXd& x) {
  const std::size_t k = imm.dim();
  if (static_cast<std::size_t>(x.size()) != k) throw DimensionError("direction has wrong dimension");
  const SecondFundamentalData d = second_fundamental_form(imm, u);
  const std::vector<double> pos(d.position.data(), d.position.data() + d.position.size());
  const Christoffel gamma = christoffel(imm.target(), pos);
  const auto h_field = [&](std::span<const double> q) {
    return second_fundamental_form(imm, q).mean_curvature;
  };
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d.position.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (x[static_cast<Eigen::Index>(i)] == 0.0) continue;
    out += x[static_cast<Eigen::Index>(i)] *
           normal_derivative(d, gamma, i, d.mean_curvature, richardson(h_field, u, i));
  }
  return out;
}

CodazziResiduals codazzi_residuals(const Immersion& imm, std::span<const double> u,
                                   std::span<const TangentTriple> triples, double umbilic_tol) {
  const std::size_t k = imm.dim();
  const std::size_t n = imm.ambient_dim();
  const SecondFundamentalData d = second_fundamental_form(imm, u);
  const std::vector<double> pos(d.position.data(), d.position.data() + n);
  const Christoffel gamma = christoffel(imm.target(), pos);
  const Christoffel induced_gamma = christoffel(imm.induced_chart(), u);
  const PointTensor r = riemann(imm.target(), pos);
  const Eigen::MatrixXd g_inv = d.ambient_metric.inverse();
  const bool umbilical = d.umbilicity_residual <= umbilic_tol;

  // d_i alpha_jl and d_i H by finite differences.
  const auto alpha_field = [&](std::span<const double> q) {
    const SecondFundamentalData dq = second_fundamental_form(imm, q);
    Eigen::VectorXd flat(static_cast<Eigen::Index>(k * k * n + n));
    for (std::size_t p = 0; p < k * k; ++p) flat.segment(static_cast<Eigen::Index>(p * n), static_cast<Eigen::Index>(n)) = dq.alpha[p];
    flat.tail(static_cast<Eigen::Index>(n)) = dq.mean_curvature;
    return flat;
  };
  std::vector<Eigen::VectorXd> dalpha(k);  // flattened per direction
  for (std::size_t i = 0; i < k; ++i) dalpha[i] = richardson(alpha_field, u, i);
  auto dalpha_at = [&](std::size_t i, std::size_t j, std::size_t l) {
    return Eigen::VectorXd(dalpha[i].segment(static_cast<Eigen::Index>((j * k + l) * n), static_cast<Eigen::Index>(n)));
  };

  // D_i H and (nabla-bar_i alpha)(j, l) on coordinate fields.
  std::vector<Eigen::VectorXd> dh(k);
  for (std::size_t i = 0; i < k; ++i) {
    dh[i] = normal_derivative(d, gamma, i, d.mean_curvature, dalpha[i].tail(static_cast<Eigen::Index>(n)));
  }
  std::vector<Eigen::VectorXd> nabla_alpha(k * k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        Eigen::VectorXd v = normal_derivative(d, gamma, i, d.alpha_at(j, l), dalpha_at(i, j, l));
        for (std::size_t p = 0; p < k; ++p) {
          v -= induced_gamma(p, i, j) * d.alpha_at(p, l) + induced_gamma(p, i, l) * d.alpha_at(j, p);
        }
        nabla_alpha[(i * k + j) * k + l] = v;
      }

  std::vector<TangentTriple> defaults;
  if (triples.empty()) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) {
          defaults.push_back({Eigen::VectorXd::Unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)),
                              Eigen::VectorXd::Unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)),
                              Eigen::VectorXd::Unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))});
        }
    triples = defaults;
  }

  CodazziResiduals out;
  out.umbilicity_residual = d.umbilicity_residual;
  double worst_umbilical = 0.0;
  for (const auto& [x, y, z] : triples) {
    if (static_cast<std::size_t>(x.size()) != k || static_cast<std::size_t>(y.size()) != k ||
        static_cast<std::size_t>(z.size()) != k) {
      throw DimensionError("tangent triple has wrong dimension");
    }
    const Eigen::VectorXd ax = d.tangent * x;
    const Eigen::VectorXd ay = d.tangent * y;
    const Eigen::VectorXd az = d.tangent * z;
    const Eigen::VectorXd lhs = project_normal(d, curvature_operator(r, g_inv, ax, ay, az));

    Eigen::VectorXd rhs_general = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) {
          const double w = x[i] * y[j] * z[l];
          if (w == 0.0) continue;
          rhs_general += w * (nabla_alpha[(i * k + j) * k + l] - nabla_alpha[(j * k + i) * k + l]);
        }
    Eigen::VectorXd dxh = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd dyh = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < k; ++i) {
      dxh += x[i] * dh[i];
      dyh += y[i] * dh[i];
    }
    const Eigen::VectorXd rhs_umbilical = (y.dot(d.induced_metric * z)) * dxh - (x.dot(d.induced_metric * z)) * dyh;

    out.normal_curvature = std::max(out.normal_curvature, norm(d.ambient_metric, lhs));
    out.general = std::max(out.general, norm(d.ambient_metric, lhs - rhs_general));
    worst_umbilical = std::max(worst_umbilical, norm(d.ambient_metric, lhs - rhs_umbilical));
  }
  if (umbilical) out.umbilical = worst_umbilical;
  return out;
}

}  // namespace ahg

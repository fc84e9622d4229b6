#include "ahgeom/axiom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"

namespace ahg {

std::string_view identity_name(Identity id) noexcept {
  switch (id) {
    case Identity::MixedPair: return "mixed_pair";
    case Identity::SwappedPair: return "swapped_pair";
    case Identity::HolomorphicBalance: return "holomorphic_balance";
    case Identity::AntiholomorphicBalance: return "antiholomorphic_balance";
    case Identity::TripleVanishing: return "triple_vanishing";
    case Identity::TripleBalance: return "triple_balance";
    case Identity::TripleShift: return "triple_shift";
    case Identity::QuadrupleVanishing: return "quadruple_vanishing";
  }
  return "?";
}

std::string_view identity_formula(Identity id) noexcept {
  switch (id) {
    case Identity::MixedPair: return "R(X,JX,JY,Y) = 0";
    case Identity::SwappedPair: return "R(JY,JX,X,Y) = 0";
    case Identity::HolomorphicBalance: return "R(X,JX,JX,Y) = R(X,JY,JY,Y)";
    case Identity::AntiholomorphicBalance: return "R(X,Y,Y,JX) = R(X,JY,JY,JX)";
    case Identity::TripleVanishing: return "R(X,JX,Y,Z) = R(X,Y,JY,Z) = 0";
    case Identity::TripleBalance: return "R(X,JX,JX,Z) = R(X,Y,Y,Z)";
    case Identity::TripleShift: return "R(X,Y,Y,JX) = R(X,Z,Z,JX)";
    case Identity::QuadrupleVanishing: return "R(X,Y,Z,U) = 0";
  }
  return "?";
}

std::size_t identity_min_m(Identity id) noexcept {
  switch (id) {
    case Identity::TripleVanishing:
    case Identity::TripleBalance:
    case Identity::TripleShift: return 3;
    case Identity::QuadrupleVanishing: return 4;
    default: return 2;
  }
}

bool identity_is_derived(Identity id) noexcept {
  return id == Identity::AntiholomorphicBalance || id == Identity::QuadrupleVanishing;
}

std::vector<IdentityInstance> identity_instances(std::span<const Eigen::VectorXd> e,
                                                 const Eigen::MatrixXd& j,
                                                 std::span<const Identity> ids) {
  const std::size_t m = e.size();
  auto wants = [&](Identity id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end() && m >= identity_min_m(id);
  };
  std::vector<Eigen::VectorXd> je;
  for (const auto& v : e) je.push_back(j * v);

  std::vector<IdentityInstance> out;
  auto single = [&](Identity id, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& c, const Eigen::VectorXd& d) {
    out.push_back({id, {{1.0, {a, b, c, d}}}});
  };
  auto difference = [&](Identity id, std::array<Eigen::VectorXd, 4> lhs, std::array<Eigen::VectorXd, 4> rhs) {
    out.push_back({id, {{1.0, std::move(lhs)}, {-1.0, std::move(rhs)}}});
  };

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const auto &x = e[a], &jx = je[a], &y = e[b], &jy = je[b];
      if (wants(Identity::MixedPair)) single(Identity::MixedPair, x, jx, jy, y);
      if (wants(Identity::SwappedPair)) single(Identity::SwappedPair, jy, jx, x, y);
      if (wants(Identity::HolomorphicBalance)) {
        difference(Identity::HolomorphicBalance, {x, jx, jx, y}, {x, jy, jy, y});
      }
      if (wants(Identity::AntiholomorphicBalance)) {
        difference(Identity::AntiholomorphicBalance, {x, y, y, jx}, {x, jy, jy, jx});
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == b) continue;
        const auto& z = e[c];
        if (wants(Identity::TripleVanishing)) {
          single(Identity::TripleVanishing, x, jx, y, z);
          single(Identity::TripleVanishing, x, y, jy, z);
        }
        if (wants(Identity::TripleBalance)) {
          difference(Identity::TripleBalance, {x, jx, jx, z}, {x, y, y, z});
        }
        if (wants(Identity::TripleShift)) {
          difference(Identity::TripleShift, {x, y, y, jx}, {x, z, z, jx});
        }
        if (wants(Identity::QuadrupleVanishing)) {
          for (std::size_t d = 0; d < m; ++d) {
            if (d == a || d == b || d == c) continue;
            single(Identity::QuadrupleVanishing, x, y, z, e[d]);
          }
        }
      }
    }
  return out;
}

double evaluate(const IdentityInstance& inst, const PointTensor& r) {
  double s = 0.0;
  for (const auto& t : inst.terms) s += t.coefficient * contract4(r, t.args[0], t.args[1], t.args[2], t.args[3]);
  return s;
}

const IdentityResidual& IdentityResiduals::at(Identity id) const {
  for (const auto& item : items)
    if (item.id == id) return item;
  throw std::out_of_range("identity not present");
}

double IdentityResiduals::max_applicable() const {
  double worst = 0.0;
  for (const auto& item : items)
    if (item.applicable) worst = std::max(worst, item.residual);
  return worst;
}

namespace {

std::vector<Eigen::VectorXd> line_representatives(const std::vector<Eigen::VectorXd>& frame) {
  std::vector<Eigen::VectorXd> e;
  for (std::size_t a = 0; a < frame.size(); a += 2) e.push_back(frame[a]);
  return e;
}

IdentityResiduals empty_residuals(std::size_t m) {
  IdentityResiduals out;
  for (Identity id : kAllIdentities) out.items.push_back({id, m >= identity_min_m(id), 0.0});
  return out;
}

void accumulate(IdentityResiduals& acc, const std::vector<IdentityInstance>& instances,
                const PointTensor& r) {
  for (const auto& inst : instances) {
    const double v = std::abs(evaluate(inst, r));
    for (auto& item : acc.items)
      if (item.id == inst.id) item.residual = std::max(item.residual, v);
  }
}

double relative_weyl(const PointTensor& r) {
  const std::size_t n = r.dim();
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const RicciScalar rs = ricci_scalar(r, g);
  const PointTensor c = weyl(r, rs.ricci, rs.scalar, g);
  const double scale = r.frobenius();
  return scale > 0.0 ? c.frobenius() / scale : 0.0;
}

double projection_residual(const Eigen::MatrixXd& onto, const Eigen::VectorXd& v) {
  const double len = v.norm();
  if (len == 0.0) return 0.0;
  if (onto.cols() == 0) return 1.0;
  return (v - onto * (onto.transpose() * v)).norm() / len;
}

struct Stabilized {
  std::size_t frames = 0;
};

template <class BatchRows>
Stabilized run_until_stable(ConstraintSystem& system, const NullSpaceOptions& options, BatchRows&& batch) {
  std::size_t previous = std::numeric_limits<std::size_t>::max();
  std::size_t unchanged = 0;
  for (std::size_t frame = 1; frame <= options.frame_budget; ++frame) {
    system.add_rows(batch());
    if (system.rank() == previous) {
      if (++unchanged >= options.stable_batches) return {frame};
    } else {
      unchanged = 0;
      previous = system.rank();
    }
  }
  throw ConvergenceError("constraint rank did not stabilize within " +
                         std::to_string(options.frame_budget) + " frames (rank " +
                         std::to_string(system.rank()) + ")");
}

}  // namespace

IdentityResiduals proof_identity_residuals(const PointTensor& r, const Eigen::MatrixXd& g,
                                           const Eigen::MatrixXd& j, FrameSampler& sampler,
                                           std::size_t frames) {
  const std::size_t n = r.dim();
  if (static_cast<std::size_t>(g.rows()) != n || static_cast<std::size_t>(j.rows()) != n) {
    throw DimensionError("metric, J and tensor dimensions differ");
  }
  if (n % 2 != 0) throw DimensionError("identity residuals need even dimension");
  const std::size_t m = n / 2;
  IdentityResiduals acc = empty_residuals(m);
  for (std::size_t f = 0; f < frames; ++f) {
    const auto e = line_representatives(adapted_hermitian_frame(g, j, sampler));
    accumulate(acc, identity_instances(e, j, kAllIdentities), r);
  }
  return acc;
}

double quadruple_vanishing_residual(const PointTensor& r, const Eigen::MatrixXd& g,
                                    FrameSampler& sampler, std::size_t samples) {
  if (r.dim() < 4) throw DimensionError("quadruple vanishing needs dimension >= 4");
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto q = sample_orthonormal_set(g, 4, sampler);
    worst = std::max(worst, std::abs(contract4(r, q[0], q[1], q[2], q[3])));
  }
  return worst;
}

Eigen::MatrixXd canonical_complex_structure(std::size_t m) {
  const auto n = static_cast<Eigen::Index>(2 * m);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(m); ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

bool SchoutenReport::pass() const noexcept {
  return nullspace_dim == expected_dim && max_weyl <= tolerance && kn_in_nullspace <= 1e-9 &&
         nullspace_in_kn <= 1e-9;
}

SchoutenReport schouten_nullspace_verify(std::size_t n, FrameSampler& sampler,
                                         const NullSpaceOptions& options) {
  if (n < 4) throw DimensionError("Schouten criterion needs dimension >= 4 (got " + std::to_string(n) + ")");
  const CurvatureSpace space(n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  ConstraintSystem system(space.dim());

  const auto batch = [&] {
    const auto f = sample_orthonormal_set(id, n, sampler);
    std::vector<Eigen::RowVectorXd> rows;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t d = c + 1; d < n; ++d) {
            rows.push_back(space.functional(f[a], f[b], f[c], f[d]));
            rows.push_back(space.functional(f[a], f[c], f[b], f[d]));
            rows.push_back(space.functional(f[a], f[d], f[b], f[c]));
          }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i];
    return m;
  };

  SchoutenReport rep;
  rep.n = n;
  rep.seed = sampler.seed();
  rep.tolerance = options.tolerance;
  rep.frames_used = run_until_stable(system, options, batch).frames;
  rep.rows = system.row_count();
  rep.space_dim = space.dim();
  rep.rank = system.rank();
  rep.nullspace = system.null_space();
  rep.nullspace_dim = static_cast<std::size_t>(rep.nullspace.cols());
  rep.expected_dim = n * (n + 1) / 2;

  for (Eigen::Index k = 0; k < rep.nullspace.cols(); ++k) {
    const PointTensor r = space.tensor_from_coefficients(rep.nullspace.col(k));
    rep.max_weyl = std::max(rep.max_weyl, relative_weyl(r));
    rep.max_symmetry_residual = std::max(rep.max_symmetry_residual, curvature_symmetry_residual(r));
  }

  // Independent family: h ^ g for the symmetric unit matrices h.
  std::vector<Eigen::VectorXd> kn;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
      h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
      h /= h.norm();
      const PointTensor t = kulkarni_nomizu(h, id);
      rep.kn_quadruple_residual =
          std::max(rep.kn_quadruple_residual, quadruple_vanishing_residual(t, id, sampler, 8));
      const Eigen::VectorXd c = space.coefficients(t);
      rep.kn_in_nullspace = std::max(rep.kn_in_nullspace, projection_residual(rep.nullspace, c));
      kn.push_back(c / c.norm());
    }
  Eigen::MatrixXd k(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(kn.size()));
  for (std::size_t i = 0; i < kn.size(); ++i) k.col(static_cast<Eigen::Index>(i)) = kn[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeThinU);
  Eigen::Index kn_rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-9 * svd.singularValues()[0]) ++kn_rank;
  const Eigen::MatrixXd kn_basis = svd.matrixU().leftCols(kn_rank);
  for (Eigen::Index c = 0; c < rep.nullspace.cols(); ++c) {
    rep.nullspace_in_kn = std::max(rep.nullspace_in_kn, projection_residual(kn_basis, rep.nullspace.col(c)));
  }
  return rep;
}

bool TheoremReport::pass() const noexcept { return max_weyl <= tolerance; }

TheoremReport theorem_nullspace_verify(std::size_t m, FrameSampler& sampler,
                                       const NullSpaceOptions& options) {
  if (m < 2) throw DimensionError("theorem verification needs m >= 2 (got " + std::to_string(m) + ")");
  const std::size_t n = 2 * m;
  const CurvatureSpace space(n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Eigen::MatrixXd j = canonical_complex_structure(m);

  TheoremReport rep;
  rep.m = m;
  rep.n = n;
  rep.seed = sampler.seed();
  rep.tolerance = options.tolerance;
  for (Identity ident : kAllIdentities)
    if (!identity_is_derived(ident) && m >= identity_min_m(ident)) rep.constraints.push_back(ident);

  ConstraintSystem system(space.dim());
  const auto batch = [&] {
    const auto e = line_representatives(adapted_hermitian_frame(id, j, sampler));
    const auto instances = identity_instances(e, j, rep.constraints);
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(instances.size()),
                                                 static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < instances.size(); ++i)
      for (const auto& t : instances[i].terms) {
        rows.row(static_cast<Eigen::Index>(i)) +=
            t.coefficient * space.functional(t.args[0], t.args[1], t.args[2], t.args[3]);
      }
    return rows;
  };
  rep.frames_used = run_until_stable(system, options, batch).frames;
  rep.rows = system.row_count();
  rep.space_dim = space.dim();
  rep.rank = system.rank();
  rep.nullspace = system.null_space();
  rep.nullspace_dim = static_cast<std::size_t>(rep.nullspace.cols());

  // Check frames are drawn from a separate stream so the constraint frames
  // are not reused.
  FrameSampler check = FrameSampler::for_worker(sampler.seed(), 1, n);
  rep.identity_residuals = empty_residuals(m);
  std::vector<std::vector<IdentityInstance>> check_instances;
  for (int f = 0; f < 4; ++f) {
    const auto e = line_representatives(adapted_hermitian_frame(id, j, check));
    check_instances.push_back(identity_instances(e, j, kAllIdentities));
  }
  for (Eigen::Index k = 0; k < rep.nullspace.cols(); ++k) {
    const PointTensor r = space.tensor_from_coefficients(rep.nullspace.col(k));
    for (const auto& inst : check_instances) accumulate(rep.identity_residuals, inst, r);
    rep.quadruple_residual = std::max(rep.quadruple_residual, quadruple_vanishing_residual(r, id, check, 16));
    rep.max_weyl = std::max(rep.max_weyl, relative_weyl(r));
    rep.max_symmetry_residual = std::max(rep.max_symmetry_residual, curvature_symmetry_residual(r));
  }

  FrameSampler schouten_sampler = FrameSampler::for_worker(sampler.seed(), 2, n);
  rep.schouten = schouten_nullspace_verify(n, schouten_sampler, options);
  for (Eigen::Index k = 0; k < rep.nullspace.cols(); ++k) {
    rep.schouten_containment =
        std::max(rep.schouten_containment, projection_residual(rep.schouten.nullspace, rep.nullspace.col(k)));
  }
  return rep;
}

}  // namespace ahg

#pragma once

// Curvature identities implied by the coholomorphic sphere axiom, and
// null-space certificates that they force conformal flatness.
//
// Every identity is read with unit X, Y, Z, U and X _|_ {Y, JY}; the triple
// identities also need Z _|_ {X, JX, Y, JY} (so m >= 3), and the quadruple
// identity U _|_ {X, JX, Y, JY, Z, JZ} (m >= 4).
//
//   mixed_pair               R(X,JX,JY,Y) = 0
//   swapped_pair             R(JY,JX,X,Y) = 0
//   holomorphic_balance      R(X,JX,JX,Y) = R(X,JY,JY,Y)
//   antiholomorphic_balance  R(X,Y,Y,JX) = R(X,JY,JY,JX)          (derived)
//   triple_vanishing         R(X,JX,Y,Z) = R(X,Y,JY,Z) = 0
//   triple_balance           R(X,JX,JX,Z) = R(X,Y,Y,Z)
//   triple_shift             R(X,Y,Y,JX) = R(X,Z,Z,JX)
//   quadruple_vanishing      R(X,Y,Z,U) = 0                        (derived)
//
// The non-derived ones are the constraints; the derived ones, the
// orthogonal-quadruple condition and W = 0 are then checked on the null
// space they cut out.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ahgeom/curvature_space.hpp"
#include "ahgeom/frame.hpp"
#include "ahgeom/tensor.hpp"

namespace ahg {

enum class Identity {
  MixedPair,
  SwappedPair,
  HolomorphicBalance,
  AntiholomorphicBalance,
  TripleVanishing,
  TripleBalance,
  TripleShift,
  QuadrupleVanishing,
};

inline constexpr std::array<Identity, 8> kAllIdentities{
    Identity::MixedPair,       Identity::SwappedPair,   Identity::HolomorphicBalance,
    Identity::AntiholomorphicBalance, Identity::TripleVanishing, Identity::TripleBalance,
    Identity::TripleShift,     Identity::QuadrupleVanishing};

std::string_view identity_name(Identity id) noexcept;
std::string_view identity_formula(Identity id) noexcept;
/// Smallest complex dimension m at which the identity has admissible frames.
std::size_t identity_min_m(Identity id) noexcept;
/// True for identities that follow from the others rather than serving as constraints.
bool identity_is_derived(Identity id) noexcept;

/// sum_k coef_k R(v_k[0], v_k[1], v_k[2], v_k[3]) should vanish.
struct IdentityTerm {
  double coefficient = 1.0;
  std::array<Eigen::VectorXd, 4> args;
};
struct IdentityInstance {
  Identity id;
  std::vector<IdentityTerm> terms;
};

/// Instances of `ids` over every ordered choice of distinct lines from the
/// unit vectors `e` (e[a] _|_ e[b], J e[b] for a != b).
std::vector<IdentityInstance> identity_instances(std::span<const Eigen::VectorXd> e,
                                                 const Eigen::MatrixXd& j,
                                                 std::span<const Identity> ids);

double evaluate(const IdentityInstance& inst, const PointTensor& r);

struct IdentityResidual {
  Identity id;
  bool applicable = false;
  double residual = 0.0;  // max absolute value; 0 when skipped
};

struct IdentityResiduals {
  std::vector<IdentityResidual> items;  // in kAllIdentities order
  const IdentityResidual& at(Identity id) const;
  /// Largest residual over applicable identities.
  double max_applicable() const;
};

/// Max residual of each identity over `frames` random J-adapted frames of
/// (g, J). Identities that need a larger m are marked not applicable.
IdentityResiduals proof_identity_residuals(const PointTensor& r, const Eigen::MatrixXd& g,
                                           const Eigen::MatrixXd& j, FrameSampler& sampler,
                                           std::size_t frames);

/// Max |R(X,Y,Z,U)| over `samples` random g-orthonormal quadruples. Throws
/// DimensionError below dimension 4.
double quadruple_vanishing_residual(const PointTensor& r, const Eigen::MatrixXd& g,
                                    FrameSampler& sampler, std::size_t samples);

/// J^i_j with J d_{x_k} = d_{y_k} in the coordinate order (x1, y1, x2, y2, ...).
Eigen::MatrixXd canonical_complex_structure(std::size_t m);

struct NullSpaceOptions {
  double tolerance = 1e-8;
  std::size_t frame_budget = 64;
  /// Batches in a row without a rank change before the rank counts as stable.
  std::size_t stable_batches = 3;
};

struct SchoutenReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t frames_used = 0;
  std::size_t rows = 0;
  std::size_t space_dim = 0;  // n^2 (n^2 - 1) / 12
  std::size_t rank = 0;
  std::size_t nullspace_dim = 0;
  std::size_t expected_dim = 0;  // n (n + 1) / 2
  /// max ||W|| / ||R|| over the orthonormal null-space basis.
  double max_weyl = 0.0;
  /// max over the basis of the curvature symmetry residual.
  double max_symmetry_residual = 0.0;
  /// Every h ^ g lies in the null space (max relative projection residual).
  double kn_in_nullspace = 0.0;
  /// Every null-space vector lies in span{h ^ g}.
  double nullspace_in_kn = 0.0;
  /// max |h ^ g (X,Y,Z,U)| over sampled orthonormal quadruples, unit-norm h.
  double kn_quadruple_residual = 0.0;
  double tolerance = 0.0;
  Eigen::MatrixXd nullspace;  // coefficients in CurvatureSpace(n), orthonormal columns
  bool pass() const noexcept;
};

/// Null space of orthonormal-quadruple vanishing on the curvature space of
/// dimension n. Throws DimensionError for n < 4 and ConvergenceError when
/// the rank does not settle within the frame budget.
SchoutenReport schouten_nullspace_verify(std::size_t n, FrameSampler& sampler,
                                         const NullSpaceOptions& options = {});

struct TheoremReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t frames_used = 0;
  std::size_t rows = 0;
  std::size_t space_dim = 0;
  std::size_t rank = 0;
  std::size_t nullspace_dim = 0;
  std::vector<Identity> constraints;
  /// Max per-identity residual over null-space basis tensors and check frames.
  IdentityResiduals identity_residuals;
  double quadruple_residual = 0.0;
  double max_weyl = 0.0;
  double max_symmetry_residual = 0.0;
  /// Max relative residual of projecting the null space onto the Schouten null space.
  double schouten_containment = 0.0;
  double tolerance = 0.0;
  SchoutenReport schouten;
  Eigen::MatrixXd nullspace;
  bool pass() const noexcept;
};

/// Null space of the constraint identities for g = I and the canonical J in
/// real dimension 2m, with the derived identities, quadruple vanishing and
/// W = 0 checked on it. Throws DimensionError unless m >= 2 and
/// ConvergenceError when the rank does not settle.
TheoremReport theorem_nullspace_verify(std::size_t m, FrameSampler& sampler,
                                       const NullSpaceOptions& options = {});

}  // namespace ahg

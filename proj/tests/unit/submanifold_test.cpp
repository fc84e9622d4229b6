#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ahgeom/errors.hpp"
#include "ahgeom/frame.hpp"
#include "ahgeom/submanifold.hpp"
#include "test_support.hpp"

namespace {

using ahg::Immersion;
using ahg::ManifoldChart;
using Eigen::MatrixXd;
using Eigen::VectorXd;

ManifoldChart flat(std::size_t n) {
  std::vector<std::vector<std::string>> g(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = "1";
  return ManifoldChart::from_text("flat", ahg::testing::coordinate_names(n), g);
}

ManifoldChart round_s3() {
  const std::string c = "4/(1 + x1^2 + x2^2 + x3^2)^2";
  return ManifoldChart::from_text("s3", ahg::testing::coordinate_names(3),
                                  {{c, "0", "0"}, {"0", c, "0"}, {"0", "0", c}});
}

Immersion sphere(double r) {
  const std::string s = ahg::format_number(r);
  return Immersion::from_text({"theta", "phi"}, flat(3),
                              {s + "*sin(theta)*cos(phi)", s + "*sin(theta)*sin(phi)", s + "*cos(theta)"});
}

Immersion cylinder(double r) {
  const std::string s = ahg::format_number(r);
  return Immersion::from_text({"phi", "t"}, flat(3), {s + "*cos(phi)", s + "*sin(phi)", "t"});
}

Immersion plane() { return Immersion::from_text({"u", "v"}, flat(3), {"u", "v", "0"}); }

Immersion stereographic_sphere(double rho0) {
  const std::string s = ahg::format_number(rho0);
  return Immersion::from_text({"theta", "phi"}, round_s3(),
                              {s + "*sin(theta)*cos(phi)", s + "*sin(theta)*sin(phi)", s + "*cos(theta)"});
}

double gnorm(const ahg::SecondFundamentalData& d, const VectorXd& v) { return ahg::norm(d.ambient_metric, v); }

TEST(InducedMetric, PlaneIsIdentity) {
  const std::vector<double> u{0.3, -0.7};
  EXPECT_LE((ahg::induced_metric(plane(), u) - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InducedMetric, UnitSphere) {
  ahg::FrameSampler s(1, 2);
  for (int i = 0; i < 5; ++i) {
    const std::vector<double> u{s.uniform(0.2, 3.0), s.uniform(-3.0, 3.0)};
    const MatrixXd h = ahg::induced_metric(sphere(1.0), u);
    EXPECT_NEAR(h(0, 0), 1.0, 1e-14);
    EXPECT_NEAR(h(1, 1), std::pow(std::sin(u[0]), 2), 1e-14);
    EXPECT_NEAR(h(0, 1), 0.0, 1e-14);
  }
}

TEST(InducedMetric, CollapsingCurveIsRankError) {
  const Immersion cusp = Immersion::from_text({"u"}, flat(3), {"u^2", "u^3", "0"});
  const std::vector<double> u{0.0};
  EXPECT_THROW((void)ahg::second_fundamental_form(cusp, u), ahg::RankError);
  EXPECT_THROW((void)cusp.tangent(u), ahg::RankError);
}

TEST(Immersion, DimensionMustDrop) {
  EXPECT_THROW((void)Immersion::from_text({"a", "b", "c"}, flat(3), {"a", "b", "c"}), ahg::DimensionError);
}

TEST(SecondFundamentalForm, PlaneIsTotallyGeodesic) {
  const Immersion tilted = Immersion::from_text({"u", "v"}, flat(3), {"u + v", "u - v", "0.5*u + 2"});
  const std::vector<double> u{0.2, 0.4};
  const auto d = ahg::second_fundamental_form(tilted, u);
  for (const auto& a : d.alpha) EXPECT_LE(a.norm(), 1e-14);
  EXPECT_LE(d.mean_curvature.norm(), 1e-14);
  EXPECT_EQ(d.umbilicity_residual, 0.0);
  EXPECT_LE(ahg::normal_connection_dh(tilted, u, ahg::testing::vec({1, 0})).norm(), 1e-12);
}

TEST(SecondFundamentalForm, SphereSignConvention) {
  for (double r : {0.5, 1.0, 2.0}) {
    const Immersion imm = sphere(r);
    const std::vector<double> u{0.9, 0.4};
    const auto d = ahg::second_fundamental_form(imm, u);
    const VectorXd outward = d.position / r;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const VectorXd expected = -(1.0 / r) * d.induced_metric(i, j) * outward;
        EXPECT_LE((d.alpha_at(i, j) - expected).norm(), 1e-12);
      }
    EXPECT_NEAR(gnorm(d, d.mean_curvature), 1.0 / r, 1e-12);
    EXPECT_LE(d.umbilicity_residual, 1e-10);
  }
}

TEST(SecondFundamentalForm, CylinderPrincipalCurvatures) {
  for (double r : {0.5, 1.0, 3.0}) {
    const auto d = ahg::second_fundamental_form(cylinder(r), std::vector<double>{0.3, -0.4});
    ASSERT_EQ(d.normal.cols(), 1);
    MatrixXd second(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) second(i, j) = d.alpha_component(i, j, 0);
    const MatrixXd shape = d.induced_metric.inverse() * second;
    Eigen::EigenSolver<MatrixXd> es(shape);
    std::vector<double> k{std::abs(es.eigenvalues()(0).real()), std::abs(es.eigenvalues()(1).real())};
    std::sort(k.begin(), k.end());
    EXPECT_NEAR(k[0], 0.0, 1e-12);
    EXPECT_NEAR(k[1], 1.0 / r, 1e-12);
    EXPECT_NEAR(gnorm(d, d.mean_curvature), 1.0 / (2 * r), 1e-12);
    EXPECT_GT(d.umbilicity_residual, 0.4);
  }
}

TEST(SecondFundamentalForm, RandomGraphsAreSymmetricAndNormal) {
  ahg::FrameSampler s(17, 2);
  const std::vector<std::string> uv{"u", "v"};
  for (int trial = 0; trial < 50; ++trial) {
    const std::string f = ahg::testing::random_polynomial(s, uv, 3, 1.0);
    const Immersion graph = Immersion::from_text(uv, flat(3), {"u", "v", f});
    const std::vector<double> u{0.5 * s.uniform(), 0.5 * s.uniform()};
    const auto d = ahg::second_fundamental_form(graph, u);
    double scale = 1.0;
    for (const auto& a : d.alpha) scale = std::max(scale, a.norm());
    EXPECT_LE((d.alpha_at(0, 1) - d.alpha_at(1, 0)).norm(), 1e-9 * scale);
    for (const auto& a : d.alpha)
      for (int k = 0; k < 2; ++k)
        EXPECT_LE(std::abs(ahg::inner(d.ambient_metric, a, d.tangent.col(k))), 1e-9 * scale * d.tangent.col(k).norm());
  }
}

TEST(MeanCurvature, GraphMatchesClosedForm) {
  // z = x^2 + 0.5 y^2 at the origin: principal curvatures 2 and 1, H = 1.5 e_z.
  const Immersion graph = Immersion::from_text({"x", "y"}, flat(3), {"x", "y", "x^2 + 0.5*y^2"});
  const auto d = ahg::second_fundamental_form(graph, std::vector<double>{0.0, 0.0});
  EXPECT_LE((d.mean_curvature - ahg::testing::vec({0, 0, 1.5})).norm(), 1e-12);
}

TEST(NormalConnection, SphereHasParallelMeanCurvature) {
  ahg::FrameSampler s(5, 2);
  for (int i = 0; i < 5; ++i) {
    const std::vector<double> u{s.uniform(0.4, 2.7), s.uniform(-3.0, 3.0)};
    for (int k = 0; k < 3; ++k) {
      const VectorXd x = s.vector();
      EXPECT_LE(ahg::normal_connection_dh(sphere(2.0), u, x).norm(), 1e-6);
    }
  }
}

// D_X H for the parabola graph z = x^2, from the closed-form curvature
// kappa(x) = 2 / (1 + 4 x^2)^(3/2): H = (kappa / 2) nu and d nu / dx is
// tangent, so |D_X H| = |kappa'(x)| / 2, with kappa' by central differences.
double parabola_dh_oracle(double x) {
  const auto kappa = [](double t) { return 2.0 / std::pow(1 + 4 * t * t, 1.5); };
  const double h = 1e-5;
  return std::abs(kappa(x + h) - kappa(x - h)) / (2 * h) / 2;
}

TEST(NormalConnection, ParabolaGraph) {
  const Immersion graph = Immersion::from_text({"x", "y"}, flat(3), {"x", "y", "x^2"});
  const VectorXd dx = ahg::testing::vec({1, 0});
  for (double x : {0.25, 0.5, 0.8}) {
    const std::vector<double> u{x, 0.3};
    const VectorXd dh = ahg::normal_connection_dh(graph, u, dx);
    EXPECT_NEAR(gnorm(ahg::second_fundamental_form(graph, u), dh), parabola_dh_oracle(x), 1e-6) << x;
    EXPECT_GT(dh.norm(), 0.1);
  }
  EXPECT_NEAR(parabola_dh_oracle(0.5), 12.0 / std::pow(2.0, 2.5) / 2, 1e-8);
  // At the vertex kappa is stationary, so D_X H vanishes there.
  EXPECT_LE(ahg::normal_connection_dh(graph, std::vector<double>{0.0, 0.3}, dx).norm(), 1e-6);
}

TEST(Codazzi, SphereInFlatFourSpace) {
  const Immersion s3 = Immersion::from_text(
      {"a", "b", "c"}, flat(4),
      {"2*sin(a)*sin(b)*cos(c)", "2*sin(a)*sin(b)*sin(c)", "2*sin(a)*cos(b)", "2*cos(a)"});
  const std::vector<double> u{1.1, 0.8, 0.3};
  const auto d = ahg::second_fundamental_form(s3, u);
  EXPECT_NEAR(gnorm(d, d.mean_curvature), 0.5, 1e-12);
  const ahg::CodazziResiduals c = ahg::codazzi_residuals(s3, u);
  ASSERT_TRUE(c.umbilical.has_value());
  EXPECT_LE(c.general, 1e-6);
  EXPECT_LE(*c.umbilical, 1e-6);
  EXPECT_LE(std::abs(c.general - *c.umbilical), 1e-6);
  EXPECT_EQ(c.normal_curvature, 0.0);
}

TEST(Codazzi, GreatSphereInRoundThreeSphere) {
  const Immersion eq = stereographic_sphere(1.0);
  const std::vector<double> u{1.0, 0.5};
  const auto d = ahg::second_fundamental_form(eq, u);
  for (const auto& a : d.alpha) EXPECT_LE(gnorm(d, a), 1e-10);
  EXPECT_EQ(d.umbilicity_residual, 0.0);
  const ahg::CodazziResiduals c = ahg::codazzi_residuals(eq, u);
  EXPECT_LE(c.general, 1e-6);
  EXPECT_LE(c.normal_curvature, 1e-12);
}

TEST(Codazzi, GeodesicSphereInRoundThreeSphere) {
  for (double rho0 : {0.3, 0.5, 0.8}) {
    const Immersion small = stereographic_sphere(rho0);
    const std::vector<double> u{1.2, -0.4};
    const auto d = ahg::second_fundamental_form(small, u);
    const double rho = 2 * std::atan(rho0);
    EXPECT_NEAR(gnorm(d, d.mean_curvature), std::cos(rho) / std::sin(rho), 1e-10);
    EXPECT_LE(d.umbilicity_residual, 1e-10);
    const ahg::CodazziResiduals c = ahg::codazzi_residuals(small, u);
    ASSERT_TRUE(c.umbilical.has_value());
    EXPECT_LE(*c.umbilical, 1e-5);
    EXPECT_LE(c.general, 1e-5);
    EXPECT_LE(std::abs(c.general - *c.umbilical), 1e-6);
    EXPECT_LE(ahg::normal_connection_dh(small, u, ahg::testing::vec({0.3, 1.0})).norm(), 1e-6);
  }
}

TEST(Codazzi, CylinderSkipsUmbilicalForm) {
  const ahg::CodazziResiduals c = ahg::codazzi_residuals(cylinder(1.0), std::vector<double>{0.2, 0.1});
  EXPECT_FALSE(c.umbilical.has_value());
  EXPECT_LE(c.general, 1e-6);
}

TEST(Codazzi, ExplicitTriples) {
  const Immersion imm = sphere(1.5);
  const std::vector<double> u{0.7, 0.2};
  const std::vector<ahg::TangentTriple> triples{
      {ahg::testing::vec({1, 0.5}), ahg::testing::vec({-0.3, 1}), ahg::testing::vec({0.2, 0.2})}};
  const ahg::CodazziResiduals c = ahg::codazzi_residuals(imm, u, triples);
  EXPECT_LE(c.general, 1e-6);
  ASSERT_TRUE(c.umbilical.has_value());
  EXPECT_LE(*c.umbilical, 1e-6);
}

}  // namespace

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ahgeom/chart.hpp"
#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"
#include "ahgeom/models.hpp"
#include "test_support.hpp"

namespace {

using ahg::ManifoldChart;
using ahg::testing::vec;
using Eigen::MatrixXd;
using Eigen::VectorXd;

ManifoldChart unit_two_sphere() {
  return ManifoldChart::from_text("s2", {"theta", "phi"}, {{"1", "0"}, {"0", "sin(theta)^2"}});
}

ManifoldChart poincare_disk() {
  return ManifoldChart::from_text("h2", {"x", "y"},
                                  {{"4/(1 - x^2 - y^2)^2", "0"}, {"0", "4/(1 - x^2 - y^2)^2"}});
}

ManifoldChart euclidean(std::size_t n) {
  std::vector<std::vector<std::string>> g(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = "1";
  return ManifoldChart::from_text("flat", ahg::testing::coordinate_names(n), g);
}

double max_abs_diff(const ahg::Christoffel& a, const ahg::Christoffel& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k)
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(k, i, j) - b(k, i, j)));
  return worst;
}

double tensor_norm_squared(const MatrixXd& s, const MatrixXd& gi) { return (gi * s * gi * s.transpose()).trace(); }

TEST(Christoffel, EuclideanVanishes) {
  const ManifoldChart flat = euclidean(3);
  const std::vector<double> p{0.3, -0.2, 0.9};
  EXPECT_EQ(ahg::christoffel(flat, p).max_abs(), 0.0);
}

TEST(Christoffel, UnitSphereAtQuarterTurn) {
  const ManifoldChart s2 = unit_two_sphere();
  const std::vector<double> p{std::numbers::pi / 4, 0.4};
  const ahg::Christoffel c = ahg::christoffel(s2, p);
  EXPECT_NEAR(c(0, 1, 1), -0.5, 1e-15);
  EXPECT_NEAR(c(1, 0, 1), 1.0, 1e-15);  // cot(pi/4)
  EXPECT_LE(max_abs_diff(c, ahg::testing::christoffel_fd(s2, p)), 1e-9);
}

TEST(Christoffel, ConformalExponentialMetric) {
  const ManifoldChart m =
      ManifoldChart::from_text("exp", {"x", "y"}, {{"exp(2*x)", "0"}, {"0", "exp(2*x)"}});
  ahg::FrameSampler s(2, 2);
  for (int i = 0; i < 5; ++i) {
    const auto p = ahg::testing::random_point(s, 2, 1.0);
    const ahg::Christoffel c = ahg::christoffel(m, p);
    EXPECT_NEAR(c(0, 0, 0), 1.0, 1e-14);
    EXPECT_NEAR(c(0, 1, 1), -1.0, 1e-14);
    EXPECT_NEAR(c(1, 0, 1), 1.0, 1e-14);
    EXPECT_LE(max_abs_diff(c, ahg::testing::christoffel_fd(m, p)), 1e-8);
  }
}

TEST(Christoffel, RandomMetricsMatchFiniteDifferences) {
  ahg::FrameSampler s(31, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const ManifoldChart m =
        ManifoldChart::from_text("random", ahg::testing::coordinate_names(4), ahg::testing::random_metric_text(s, 4));
    const auto p = ahg::testing::random_point(s, 4, 0.3);
    EXPECT_LE(max_abs_diff(ahg::christoffel(m, p), ahg::testing::christoffel_fd(m, p)), 1e-8);
  }
}

TEST(Riemann, FlatVanishes) {
  const ManifoldChart flat = euclidean(4);
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  EXPECT_LE(ahg::riemann(flat, p).max_abs(), 1e-12);
  const ahg::RicciScalar rs = ahg::ricci_scalar(ahg::riemann(flat, p), flat.metric(p));
  EXPECT_LE(rs.ricci.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(rs.scalar, 0.0);
}

TEST(Riemann, UnitSphereSectionalIsOne) {
  const ManifoldChart s2 = unit_two_sphere();
  ahg::FrameSampler s(3, 2);
  for (int i = 0; i < 5; ++i) {
    const std::vector<double> p{s.uniform(0.3, 2.8), s.uniform(-3.0, 3.0)};
    const ahg::PointTensor r = ahg::riemann(s2, p);
    const MatrixXd g = s2.metric(p);
    const VectorXd x = s.vector();
    const VectorXd y = s.vector();
    const double area = ahg::inner(g, x, x) * ahg::inner(g, y, y) - std::pow(ahg::inner(g, x, y), 2);
    EXPECT_NEAR(ahg::contract4(r, x, y, y, x), area, 1e-10);
    EXPECT_NEAR(ahg::sectional(r, g, x, y), 1.0, 1e-10);
  }
}

TEST(Riemann, HyperbolicPlaneSectionalIsMinusOne) {
  const ManifoldChart h2 = poincare_disk();
  ahg::FrameSampler s(4, 2);
  for (int i = 0; i < 5; ++i) {
    const auto p = ahg::testing::random_point(s, 2, 0.6);
    EXPECT_NEAR(ahg::sectional(ahg::riemann(h2, p), h2.metric(p), s.vector(), s.vector()), -1.0, 1e-10);
  }
}

TEST(RicciScalar, UnitSphere) {
  const ManifoldChart s2 = unit_two_sphere();
  const std::vector<double> p{1.1, 0.3};
  const MatrixXd g = s2.metric(p);
  const ahg::RicciScalar rs = ahg::ricci_scalar(ahg::riemann(s2, p), g);
  EXPECT_LE((rs.ricci - g).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(rs.scalar, 2.0, 1e-12);
}

TEST(RicciScalar, RoundSphereNormalization) {
  const ManifoldChart s4 = ahg::instantiate("round_sphere", {{"n", 4}, {"r", 1}});
  const std::vector<double> p{0.2, -0.1, 0.3, 0.05};
  const MatrixXd g = s4.metric(p);
  const ahg::RicciScalar rs = ahg::ricci_scalar(ahg::riemann(s4, p), g);
  EXPECT_LE((rs.ricci - 3.0 * g).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(rs.scalar, 12.0, 1e-10);
}

TEST(RicciScalar, ProductOfOppositeCurvaturesHasZeroScalar) {
  const ManifoldChart prod = ahg::instantiate("product_K", {{"K", 1}});
  ahg::FrameSampler s(5, 4);
  for (int i = 0; i < 3; ++i) {
    const auto p = ahg::testing::random_point(s, 4, 0.5);
    const ahg::PointData d = ahg::point_data(prod, p, false);
    EXPECT_LE(std::abs(d.scalar), 1e-9);
    // Factor curvatures: +1 on the sphere plane, -1 on the hyperbolic plane.
    EXPECT_NEAR(ahg::sectional(d.riemann, d.g, vec({1, 0, 0, 0}), vec({0, 1, 0, 0})), 1.0, 1e-10);
    EXPECT_NEAR(ahg::sectional(d.riemann, d.g, vec({0, 0, 1, 0}), vec({0, 0, 0, 1})), -1.0, 1e-10);
  }
}

TEST(Weyl, ConstantCurvatureInputVanishes) {
  ahg::FrameSampler s(6, 5);
  for (std::size_t n : {4u, 5u, 6u}) {
    MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = s.uniform();
    const MatrixXd g = a * a.transpose() + MatrixXd::Identity(n, n);
    const ahg::PointTensor r = ahg::constant_curvature_tensor(g, 0.7);
    const ahg::RicciScalar rs = ahg::ricci_scalar(r, g);
    EXPECT_LE(ahg::weyl(r, rs.ricci, rs.scalar, g).max_abs(), 1e-10);
  }
}

TEST(Weyl, DimensionThreeIsAnError) {
  const MatrixXd g = MatrixXd::Identity(3, 3);
  const ahg::PointTensor r = ahg::constant_curvature_tensor(g, 1.0);
  const ahg::RicciScalar rs = ahg::ricci_scalar(r, g);
  EXPECT_THROW((void)ahg::weyl(r, rs.ricci, rs.scalar, g), ahg::DimensionError);
  const ManifoldChart s2 = unit_two_sphere();
  const std::vector<double> p{1.0, 0.0};
  EXPECT_THROW((void)ahg::point_data(s2, p, true), ahg::DimensionError);
}

TEST(Weyl, FubiniStudyIsNotConformallyFlat) {
  const ManifoldChart fs = ahg::instantiate("fubini_study", {{"m", 2}});
  const std::vector<double> origin(4, 0.0);
  const ahg::PointData d = ahg::point_data(fs, origin, true);
  EXPECT_GT(d.weyl->max_abs(), 0.1);
}

TEST(Weyl, NormSplitsIntoIrreduciblePieces) {
  // |W|^2 = |R|^2 - 4/(n-2) |S|^2 + 2 s^2 / ((n-1)(n-2)), an independent oracle.
  for (const auto* name : {"fubini_study", "product_K"}) {
    const ManifoldChart chart = ahg::instantiate(name);
    const std::vector<double> p{0.2, -0.3, 0.1, 0.25};
    const ahg::PointData d = ahg::point_data(chart, p, true);
    const double n = 4.0;
    const double r2 = std::pow(ahg::invariant_norm(d.riemann, d.g), 2);
    const double s2 = tensor_norm_squared(d.ricci, d.g_inverse);
    const double expected = r2 - 4.0 / (n - 2) * s2 + 2.0 * d.scalar * d.scalar / ((n - 1) * (n - 2));
    EXPECT_NEAR(std::pow(ahg::invariant_norm(*d.weyl, d.g), 2), expected, 1e-9 * (1 + r2)) << name;
  }
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  const std::vector<double> origin(4, 0.0);
  const ahg::PointData d = ahg::point_data(fs, origin, true);
  EXPECT_NEAR(ahg::invariant_norm(*d.weyl, d.g), std::sqrt(96.0), 1e-10);
}

TEST(InvariantNorm, ConstantCurvature) {
  ahg::FrameSampler s(9, 4);
  MatrixXd a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = s.uniform();
  const MatrixXd g = a * a.transpose() + MatrixXd::Identity(4, 4);
  // |K(g o g)/2|^2 = 2 K^2 n (n - 1).
  const double k = 1.5;
  EXPECT_NEAR(ahg::invariant_norm(ahg::constant_curvature_tensor(g, k), g), std::sqrt(2 * k * k * 12), 1e-10);
  const ahg::PointTensor kn = ahg::kulkarni_nomizu(g, g);
  EXPECT_LE((kn - 2.0 * ahg::constant_curvature_tensor(g, 1.0)).max_abs(), 1e-12);
}

TEST(Sectional, FlatAndDegenerate) {
  const MatrixXd g = MatrixXd::Identity(4, 4);
  const ahg::PointTensor zero = ahg::PointTensor::covariant4(4);
  EXPECT_EQ(ahg::sectional(zero, g, vec({1, 0, 0, 0}), vec({0, 1, 1, 0})), 0.0);
  const VectorXd x = vec({1, 2, 0, 0});
  EXPECT_THROW((void)ahg::sectional(zero, g, x, x), ahg::DomainError);
  EXPECT_THROW((void)ahg::sectional(zero, g, x, 2.0 * x), ahg::DomainError);
}

TEST(Sectional, IndependentOfSpanningBasis) {
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  const std::vector<double> p{0.1, 0.2, -0.1, 0.3};
  const ahg::PointData d = ahg::point_data(fs, p, false);
  ahg::FrameSampler s(10, 4);
  for (int i = 0; i < 10; ++i) {
    const VectorXd x = s.vector();
    const VectorXd y = s.vector();
    const double a = s.uniform(), b = s.uniform() + 2.0, c = s.uniform() + 2.0, e = s.uniform();
    EXPECT_NEAR(ahg::sectional(d.riemann, d.g, x, y), ahg::sectional(d.riemann, d.g, a * x + b * y, c * x + e * y),
                1e-10);
  }
}

TEST(HolomorphicSectional, FlatKahlerIsZero) {
  const ManifoldChart flat = ahg::instantiate("flat_kahler");
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const ahg::PointData d = ahg::point_data(flat, p, false);
  ahg::FrameSampler s(1, 4);
  EXPECT_EQ(ahg::holomorphic_sectional(d.riemann, d.g, *d.j, s.vector()), 0.0);
  EXPECT_EQ(ahg::lambda_type(d.riemann, d.g, *d.j, vec({1, 0, 0, 0}), vec({0, 0, 1, 0})), 0.0);
}

TEST(HolomorphicSectional, FubiniStudyIsFour) {
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  ahg::FrameSampler s(12, 4);
  for (const auto& p : {std::vector<double>{0, 0, 0, 0}, std::vector<double>{0.3, -0.2, 0.5, 0.1},
                        std::vector<double>{-0.7, 0.4, 0.2, -0.6}}) {
    const ahg::PointData d = ahg::point_data(fs, p, false);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < 32; ++i) {
      const double h = ahg::holomorphic_sectional(d.riemann, d.g, *d.j, s.vector());
      sum += h;
      sum2 += h * h;
    }
    const double mean = sum / 32;
    EXPECT_NEAR(mean, 4.0, 1e-9);
    EXPECT_LT(std::sqrt(std::max(0.0, sum2 / 32 - mean * mean)), 1e-8);
  }
}

// Antiholomorphic partner of x: a random unit vector g-orthogonal to x and Jx.
VectorXd antiholomorphic_partner(const ahg::PointData& d, const VectorXd& x, ahg::FrameSampler& s) {
  const std::vector<VectorXd> constraints{x, *d.j * x};
  return ahg::sample_orthonormal_set(d.g, 1, s, constraints)[0];
}

TEST(HolomorphicSectional, NearlyKahlerSixSphereIsOne) {
  const ManifoldChart s6 = ahg::instantiate("s6_nearly_kahler");
  const std::vector<double> p{0.1, -0.2, 0.05, 0.3, 0.0, -0.1};
  const ahg::PointData d = ahg::point_data(s6, p, false);
  ahg::FrameSampler s(13, 6);
  for (int i = 0; i < 10; ++i) {
    const VectorXd x = s.vector();
    EXPECT_NEAR(ahg::holomorphic_sectional(d.riemann, d.g, *d.j, x), 1.0, 1e-8);
    EXPECT_NEAR(ahg::lambda_type(d.riemann, d.g, *d.j, x, antiholomorphic_partner(d, x, s)), 1.0, 1e-8);
  }
}

TEST(LambdaType, FubiniStudyVanishesOnAntiholomorphicPairs) {
  // Kahler curvature satisfies R(X,Y,JY,JX) = R(X,Y,Y,X), so lambda is 0
  // while the antiholomorphic sectional curvature is 1.
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  const std::vector<double> origin(4, 0.0);
  const ahg::PointData d = ahg::point_data(fs, origin, false);
  ahg::FrameSampler s(14, 4);
  for (int i = 0; i < 20; ++i) {
    const VectorXd x = s.vector();
    const VectorXd y = antiholomorphic_partner(d, x, s);
    EXPECT_NEAR(ahg::lambda_type(d.riemann, d.g, *d.j, x, y), 0.0, 1e-10);
    EXPECT_NEAR(ahg::sectional(d.riemann, d.g, x, y), 1.0, 1e-10);
  }
}

TEST(CurvatureProperties, RandomPolynomialMetrics) {
  ahg::FrameSampler s(2718, 4);
  const auto coords = ahg::testing::coordinate_names(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gtext = ahg::testing::random_metric_text(s, 4);
    const std::string phi = ahg::testing::random_polynomial(s, coords, 2, 0.5);
    const ManifoldChart m = ManifoldChart::from_text("random", coords, gtext);
    const ManifoldChart mc = ManifoldChart::from_text("rescaled", coords, ahg::testing::conformal_text(gtext, phi));
    const auto p = ahg::testing::random_point(s, 4, 0.3);
    const ahg::PointData d = ahg::point_data(m, p, true);
    const ahg::PointData dc = ahg::point_data(mc, p, true);
    EXPECT_LE(ahg::curvature_symmetry_residual(d.riemann), 1e-9);
    EXPECT_LE(ahg::trace_residual(*d.weyl, d.g_inverse), 1e-9);
    const ahg::PointTensor w13 = d.weyl->raised(0, d.g_inverse);
    const ahg::PointTensor wc13 = dc.weyl->raised(0, dc.g_inverse);
    EXPECT_LE((w13 - wc13).max_abs(), 1e-7);
    EXPECT_GT(w13.max_abs(), 1e-3);
    EXPECT_GT((d.riemann - dc.riemann).max_abs(), 1e-3);
  }
}

}  // namespace

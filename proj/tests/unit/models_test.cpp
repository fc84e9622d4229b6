#include <gtest/gtest.h>

#include <cmath>

#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"
#include "ahgeom/hermitian.hpp"
#include "ahgeom/models.hpp"
#include "ahgeom/report.hpp"
#include "test_support.hpp"

namespace {

using Eigen::MatrixXd;

std::vector<std::string> names(const std::vector<ahg::ModelDescriptor>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.name);
  return out;
}

TEST(ModelList, ContainsTheExpectedModels) {
  const auto n = names(ahg::list_models());
  EXPECT_NE(std::find(n.begin(), n.end(), "product_K"), n.end());
  EXPECT_NE(std::find(n.begin(), n.end(), "s6_nearly_kahler"), n.end());
  EXPECT_EQ(n.size(), 6u);
}

TEST(ModelList, Deterministic) {
  const auto a = ahg::list_models();
  const auto b = ahg::list_models();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    ASSERT_EQ(a[i].expected.size(), b[i].expected.size());
    for (std::size_t k = 0; k < a[i].expected.size(); ++k) {
      EXPECT_EQ(a[i].expected[k].name, b[i].expected[k].name);
      EXPECT_EQ(a[i].expected[k].value, b[i].expected[k].value);
    }
  }
  EXPECT_EQ(ahg::dump_report(ahg::models_list_report()), ahg::dump_report(ahg::models_list_report()));
}

TEST(Instantiate, RejectsBadRequests) {
  EXPECT_THROW((void)ahg::instantiate("no_such_model"), ahg::UsageError);
  EXPECT_THROW((void)ahg::instantiate("product_K", {{"Q", 1}}), ahg::UsageError);
  EXPECT_THROW((void)ahg::instantiate("product_K", {{"K", 0}}), ahg::UsageError);
  EXPECT_THROW((void)ahg::instantiate("fubini_study", {{"m", 1.5}}), ahg::UsageError);
  EXPECT_THROW((void)ahg::instantiate("round_sphere", {{"n", 1}}), ahg::UsageError);
}

TEST(Instantiate, ParametersApply) {
  EXPECT_EQ(ahg::instantiate("flat_kahler", {{"m", 3}}).dim(), 6u);
  EXPECT_EQ(ahg::instantiate("round_sphere", {{"n", 5}}).dim(), 5u);
  const auto d = ahg::describe_model("s6_nearly_kahler", {{"r", 2}});
  EXPECT_DOUBLE_EQ(d.values.at("r"), 2.0);
  EXPECT_DOUBLE_EQ(*d.find("constant_type")->value, 0.25);
  EXPECT_DOUBLE_EQ(*d.find("scalar_curvature")->value, 7.5);
}

// Real metric of the Kahler potential K = log(1 + |z|^2) from central second
// differences: with h_ab = d_a d_bbar K,
//   g(d_xa, d_xb) = g(d_ya, d_yb) = Re h_ab = (K_xaxb + K_yayb) / 4,
//   g(d_xa, d_yb) = Im h_ab = (K_xayb - K_yaxb) / 4.
MatrixXd potential_metric(const std::vector<double>& p) {
  const std::size_t n = p.size();
  const auto k = [](const std::vector<double>& q) {
    double s = 0.0;
    for (double v : q) s += v * v;
    return std::log1p(s);
  };
  const double h = 1e-4;
  MatrixXd hess(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto pp = p, pm = p, mp = p, mm = p;
      pp[i] += h, pp[j] += h;
      pm[i] += h, pm[j] -= h;
      mp[i] -= h, mp[j] += h;
      mm[i] -= h, mm[j] -= h;
      hess(i, j) = (k(pp) - k(pm) - k(mp) + k(mm)) / (4 * h * h);
    }
  MatrixXd g(n, n);
  for (std::size_t a = 0; a < n / 2; ++a)
    for (std::size_t b = 0; b < n / 2; ++b) {
      const double re = 0.25 * (hess(2 * a, 2 * b) + hess(2 * a + 1, 2 * b + 1));
      const double im = 0.25 * (hess(2 * a, 2 * b + 1) - hess(2 * a + 1, 2 * b));
      g(2 * a, 2 * b) = re;
      g(2 * a + 1, 2 * b + 1) = re;
      g(2 * a, 2 * b + 1) = im;
      g(2 * b + 1, 2 * a) = im;
    }
  return g;
}

TEST(FubiniStudy, ComponentsMatchThePotential) {
  for (std::size_t m : {1u, 2u, 3u}) {
    const ahg::ManifoldChart fs = ahg::instantiate("fubini_study", {{"m", static_cast<double>(m)}});
    ahg::FrameSampler s(m, 2 * m);
    for (int i = 0; i < 5; ++i) {
      const auto p = ahg::testing::random_point(s, 2 * m, 1.0);
      EXPECT_LE((fs.metric(p) - potential_metric(p)).cwiseAbs().maxCoeff(), 1e-6) << m;
    }
  }
}

TEST(FubiniStudy, ScalarCurvatureAcrossDimensions) {
  for (std::size_t m : {2u, 3u}) {
    const ahg::ManifoldChart fs = ahg::instantiate("fubini_study", {{"m", static_cast<double>(m)}});
    ahg::FrameSampler s(m, 2 * m);
    const auto p = ahg::testing::random_point(s, 2 * m, 0.7);
    EXPECT_NEAR(ahg::point_data(fs, p, false).scalar, 4.0 * m * (m + 1), 1e-9);
  }
}

TEST(RoundSphere, SectionalCurvatureAtRandomPointsAndPlanes) {
  for (double r : {0.5, 1.0, 2.0}) {
    const ahg::ManifoldChart sphere = ahg::instantiate("round_sphere", {{"n", 4}, {"r", r}});
    ahg::FrameSampler s(42, 4);
    for (int i = 0; i < 5; ++i) {
      const auto p = sphere.sample_point(s);
      const ahg::PointData d = ahg::point_data(sphere, p, true);
      const double k = ahg::sectional(d.riemann, d.g, s.vector(), s.vector());
      EXPECT_NEAR(k * r * r, 1.0, 1e-8);
      EXPECT_LE(d.weyl->max_abs(), 1e-10 * d.riemann.max_abs());
    }
  }
}

TEST(Hyperbolic, SectionalCurvature) {
  const ahg::ManifoldChart h = ahg::instantiate("hyperbolic", {{"n", 5}, {"K", 2}});
  ahg::FrameSampler s(43, 5);
  for (int i = 0; i < 5; ++i) {
    const auto p = h.sample_point(s);
    const ahg::PointData d = ahg::point_data(h, p, false);
    EXPECT_NEAR(ahg::sectional(d.riemann, d.g, s.vector(), s.vector()), -2.0, 1e-8);
  }
}

TEST(SixSphere, RadiusScaling) {
  const ahg::ManifoldChart s6 = ahg::instantiate("s6_nearly_kahler", {{"r", 2}});
  const auto p = s6.default_point();
  ahg::FrameSampler s(44, 6);
  const ahg::PointData d = ahg::point_data(s6, p, false);
  EXPECT_NEAR(ahg::sectional(d.riemann, d.g, s.vector(), s.vector()), 0.25, 1e-10);
  const ahg::NablaJResiduals nj = ahg::nabla_j_residuals(s6, p, s);
  EXPECT_LE(nj.nearly_kahler, 1e-6);
  EXPECT_GT(nj.kahler, 0.1);
  const ahg::StructureResiduals st = ahg::validate_structure(s6, p);
  EXPECT_LE(st.j_squared, 1e-8);
  EXPECT_LE(st.compatibility, 1e-8);
}

// Every model reproduces its expected-invariant table at its default point.
class ExpectedTable : public ::testing::TestWithParam<std::string> {};

TEST_P(ExpectedTable, Reproduced) {
  const ahg::ModelDescriptor desc = ahg::describe_model(GetParam());
  const ahg::ManifoldChart chart = ahg::instantiate(GetParam());
  ahg::AnalyzeOptions o;
  o.tolerance = 1e-8;
  const ahg::Report rep = ahg::analyze_report(chart, o);
  const auto& point = rep["points"][0];
  for (const auto& e : desc.expected) {
    if (e.value) {
      double computed = 0.0;
      if (e.name == "scalar_curvature") {
        computed = point["scalar_curvature"].get<double>();
      } else {
        ASSERT_TRUE(point.contains(e.name)) << e.name;
        computed = point[e.name]["mean"].get<double>();
        EXPECT_LE(point[e.name]["std"].get<double>(), std::max(e.tolerance, 1e-12)) << e.name;
      }
      EXPECT_NEAR(computed, *e.value, std::max(e.tolerance, 1e-12)) << e.name;
    } else {
      bool found = false;
      for (const auto& c : rep["classification"]) {
        if (c["name"] == e.name) {
          found = true;
          EXPECT_EQ(c["pass"].get<bool>(), *e.flag) << e.name << " residual " << c["residual"];
        }
      }
      EXPECT_TRUE(found) << e.name;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Models, ExpectedTable,
                         ::testing::Values("flat_kahler", "round_sphere", "hyperbolic", "product_K", "fubini_study",
                                           "s6_nearly_kahler"));

}  // namespace

#include <gtest/gtest.h>

#include "ahgeom/axiom.hpp"
#include "ahgeom/curvature.hpp"
#include "ahgeom/errors.hpp"
#include "ahgeom/hermitian.hpp"
#include "ahgeom/models.hpp"
#include "test_support.hpp"

namespace {

using ahg::ManifoldChart;
using ahg::testing::vec;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<std::vector<std::string>> canonical_j_text(double scale) {
  const std::string s = ahg::format_number(scale);
  return {{"0", "-" + s, "0", "0"}, {s, "0", "0", "0"}, {"0", "0", "0", "-" + s}, {"0", "0", s, "0"}};
}

ManifoldChart flat_with_j(double scale) {
  return ManifoldChart::from_text(
      "flat", {"x1", "y1", "x2", "y2"},
      {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}, canonical_j_text(scale));
}

const std::vector<double> kPoint4{0.1, -0.2, 0.3, 0.15};

TEST(ValidateStructure, CanonicalFlatKahler) {
  const ahg::StructureResiduals r = ahg::validate_structure(ahg::instantiate("flat_kahler"), kPoint4);
  EXPECT_EQ(r.j_squared, 0.0);
  EXPECT_EQ(r.compatibility, 0.0);
  EXPECT_TRUE(r.accepted(1e-12));
}

TEST(ValidateStructure, ScaledStructureFails) {
  const ahg::StructureResiduals r = ahg::validate_structure(flat_with_j(1.01), kPoint4);
  EXPECT_NEAR(r.j_squared, 0.0201, 1e-12);
  EXPECT_NEAR(r.compatibility, 0.0201, 1e-12);
  EXPECT_FALSE(r.accepted(1e-8));
}

TEST(ValidateStructure, MissingStructureIsAnError) {
  const ManifoldChart plain = ahg::instantiate("round_sphere");
  EXPECT_THROW((void)ahg::validate_structure(plain, kPoint4), ahg::StructureError);
}

TEST(NablaJ, FlatKahler) {
  ahg::FrameSampler s(1, 4);
  const ahg::NablaJResiduals r = ahg::nabla_j_residuals(ahg::instantiate("flat_kahler"), kPoint4, s);
  EXPECT_EQ(r.kahler, 0.0);
  EXPECT_EQ(r.nearly_kahler, 0.0);
}

TEST(NablaJ, ProductOfSurfacesIsKahler) {
  ahg::FrameSampler s(2, 4);
  const ManifoldChart prod = ahg::instantiate("product_K");
  for (int i = 0; i < 3; ++i) {
    const auto p = ahg::testing::random_point(s, 4, 0.5);
    const ahg::NablaJResiduals r = ahg::nabla_j_residuals(prod, p, s);
    EXPECT_LE(r.kahler, 1e-9);
    EXPECT_LE(r.nearly_kahler, 1e-9);
  }
}

TEST(NablaJ, SixSphereIsNearlyKahlerOnly) {
  ahg::FrameSampler s(3, 6);
  const ManifoldChart s6 = ahg::instantiate("s6_nearly_kahler");
  for (int i = 0; i < 3; ++i) {
    const auto p = ahg::testing::random_point(s, 6, 0.5);
    const ahg::NablaJResiduals r = ahg::nabla_j_residuals(s6, p, s);
    EXPECT_GT(r.kahler, 0.1);
    EXPECT_LE(r.nearly_kahler, 1e-6);
    EXPECT_LE(ahg::validate_structure(s6, p).j_squared, 1e-8);
    EXPECT_LE(ahg::validate_structure(s6, p).compatibility, 1e-8);
  }
}

TEST(NablaJ, MatchesFiniteDifferenceOracle) {
  // (nabla_k J)^i_j from central differences of J and finite-difference Christoffels.
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  const std::vector<double> p{0.3, 0.1, -0.2, 0.4};
  const auto nj = ahg::nabla_j(fs, p);
  const ahg::Christoffel gamma = ahg::testing::christoffel_fd(fs, p);
  const MatrixXd j = fs.complex_structure(p);
  const double h = 1e-5;
  for (std::size_t k = 0; k < 4; ++k) {
    auto plus = p, minus = p;
    plus[k] += h;
    minus[k] -= h;
    const MatrixXd dj = (fs.complex_structure(plus) - fs.complex_structure(minus)) / (2 * h);
    MatrixXd expected = dj;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t l = 0; l < 4; ++l) expected(a, b) += gamma(a, k, l) * j(l, b) - gamma(l, k, b) * j(a, l);
    EXPECT_LE((nj[k] - expected).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(RkResidual, Models) {
  EXPECT_EQ(ahg::rk_residual(ahg::PointTensor::covariant4(4), ahg::canonical_complex_structure(2)), 0.0);
  for (const auto* name : {"product_K", "fubini_study"}) {
    const ahg::PointData d = ahg::point_data(ahg::instantiate(name), kPoint4, false);
    EXPECT_LE(ahg::rk_residual(d.riemann, *d.j), 1e-9) << name;
  }
  const ahg::PointData s6 = ahg::point_data(ahg::instantiate("s6_nearly_kahler"), std::vector<double>(6, 0.1), false);
  EXPECT_LE(ahg::rk_residual(s6.riemann, *s6.j), 1e-9);
}

TEST(RkResidual, ConstantCurvatureTensorsAreRk) {
  const MatrixXd g = MatrixXd::Identity(6, 6);
  EXPECT_LE(ahg::rk_residual(ahg::constant_curvature_tensor(g, 2.0), ahg::canonical_complex_structure(3)), 1e-12);
}

TEST(PlaneType, BasicCases) {
  const MatrixXd g = MatrixXd::Identity(4, 4);
  const MatrixXd j = ahg::canonical_complex_structure(2);
  const VectorXd e1 = vec({1, 0, 0, 0});
  const VectorXd e2 = vec({0, 0, 1, 0});
  const std::vector<VectorXd> hol{e1, j * e1};
  const std::vector<VectorXd> anti{e1, e2};
  const std::vector<VectorXd> cohol{e1, j * e1, e2};
  const std::vector<VectorXd> neither{e1, e2 + j * e1};
  EXPECT_EQ(ahg::plane_type(hol, g, j), (ahg::PlaneType{ahg::PlaneKind::Holomorphic, 0}));
  EXPECT_EQ(ahg::plane_type(anti, g, j), (ahg::PlaneType{ahg::PlaneKind::Antiholomorphic, 0}));
  EXPECT_EQ(ahg::plane_type(cohol, g, j), (ahg::PlaneType{ahg::PlaneKind::Coholomorphic, 1}));
  EXPECT_EQ(ahg::plane_type(neither, g, j).kind, ahg::PlaneKind::None);
  EXPECT_EQ(ahg::to_string(ahg::plane_type(cohol, g, j)), "coholomorphic(1)");
  const std::vector<VectorXd> dependent{e1, 2.0 * e1};
  EXPECT_THROW((void)ahg::plane_type(dependent, g, j), ahg::RankError);
}

TEST(PlaneType, InvariantUnderChangeOfBasis) {
  ahg::FrameSampler s(21, 6);
  const ManifoldChart s6 = ahg::instantiate("s6_nearly_kahler");
  const std::vector<double> p{0.2, 0.1, -0.3, 0.0, 0.1, 0.2};
  const MatrixXd g = s6.metric(p);
  const MatrixXd j = s6.complex_structure(p);
  const auto frame = ahg::adapted_hermitian_frame(g, j, s);
  const std::vector<std::vector<VectorXd>> cases{
      {frame[0], frame[1]}, {frame[0], frame[2]}, {frame[0], frame[1], frame[2]},
      {frame[0], frame[1], frame[2], frame[3], frame[4]}, {frame[0], frame[2] + frame[1]}};
  for (const auto& vs : cases) {
    const ahg::PlaneType expected = ahg::plane_type(vs, g, j);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t k = vs.size();
      MatrixXd mix(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) mix(a, b) = s.uniform() + (a == b ? 3.0 : 0.0);
      std::vector<VectorXd> re(k, VectorXd::Zero(6));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) re[a] += mix(a, b) * vs[b];
      EXPECT_EQ(ahg::plane_type(re, g, j), expected) << ahg::to_string(expected);
    }
  }
}

double entry_value(const ahg::ClassificationReport& r, const char* name) {
  const ahg::ClassificationEntry* e = r.find(name);
  EXPECT_NE(e, nullptr) << name;
  return e && e->value ? *e->value : std::nan("");
}

std::vector<std::vector<double>> sample_points(const ManifoldChart& chart, std::uint64_t seed, int count) {
  ahg::FrameSampler s(seed, chart.dim());
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) out.push_back(chart.sample_point(s));
  return out;
}

TEST(Constancy, FlatChartIsZero) {
  const ManifoldChart flat = ahg::instantiate("flat_kahler");
  ahg::FrameSampler s(1, 4);
  const auto r = ahg::constancy_report(flat, sample_points(flat, 1, 3), s, 16, 1e-8);
  for (const auto* name : {"holomorphic_sectional.global", "antiholomorphic_sectional.global", "constant_type.global"}) {
    EXPECT_EQ(entry_value(r, name), 0.0) << name;
    EXPECT_TRUE(r.find(name)->pass);
  }
}

TEST(Constancy, SixSphereHasGlobalConstantTypeOne) {
  const ManifoldChart s6 = ahg::instantiate("s6_nearly_kahler");
  ahg::FrameSampler s(2, 6);
  const auto r = ahg::constancy_report(s6, sample_points(s6, 2, 5), s, 16, 1e-6);
  EXPECT_NEAR(entry_value(r, "constant_type.global"), 1.0, 1e-6);
  EXPECT_TRUE(r.find("constant_type.pointwise")->pass);
  EXPECT_TRUE(r.find("constant_type.global")->pass);
  EXPECT_NEAR(entry_value(r, "holomorphic_sectional.global"), 1.0, 1e-6);
}

TEST(Constancy, FubiniStudyConstants) {
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  ahg::FrameSampler s(3, 4);
  const auto r = ahg::constancy_report(fs, sample_points(fs, 3, 5), s, 32, 1e-8);
  EXPECT_NEAR(entry_value(r, "holomorphic_sectional.global"), 4.0, 1e-8);
  EXPECT_NEAR(entry_value(r, "antiholomorphic_sectional.global"), 1.0, 1e-8);
  EXPECT_NEAR(entry_value(r, "constant_type.global"), 0.0, 1e-8);
  for (const auto& e : r.entries) EXPECT_TRUE(e.pass) << e.name;
}

TEST(Constancy, ProductIsNotOfConstantHolomorphicCurvature) {
  const ManifoldChart prod = ahg::instantiate("product_K");
  ahg::FrameSampler s(4, 4);
  const auto r = ahg::constancy_report(prod, sample_points(prod, 4, 3), s, 32, 1e-8);
  EXPECT_FALSE(r.find("holomorphic_sectional.pointwise")->pass);
}

TEST(Constancy, DeterministicForEqualSeeds) {
  const ManifoldChart fs = ahg::instantiate("fubini_study");
  const auto points = sample_points(fs, 5, 3);
  ahg::FrameSampler a(9, 4), b(9, 4);
  const auto ra = ahg::constancy_report(fs, points, a, 16, 1e-8);
  const auto rb = ahg::constancy_report(fs, points, b, 16, 1e-8);
  ASSERT_EQ(ra.entries.size(), rb.entries.size());
  for (std::size_t i = 0; i < ra.entries.size(); ++i) {
    EXPECT_EQ(ra.entries[i].residual, rb.entries[i].residual);
    EXPECT_EQ(ra.entries[i].value, rb.entries[i].value);
  }
}

TEST(Constancy, NeedsDimensionFour) {
  const ManifoldChart c1 = ahg::instantiate("flat_kahler", {{"m", 1}});
  ahg::FrameSampler s(1, 2);
  const std::vector<std::vector<double>> pts{{0.0, 0.0}};
  EXPECT_THROW((void)ahg::constancy_report(c1, pts, s, 4, 1e-8), ahg::DimensionError);
}

TEST(Implications, KahlerImpliesRkAndNearlyKahler) {
  ahg::FrameSampler s(6, 6);
  for (const auto& d : ahg::list_models()) {
    const ManifoldChart chart = ahg::instantiate(d.name);
    if (!chart.has_complex_structure()) continue;
    const auto p = chart.default_point();
    ahg::FrameSampler local(6, chart.dim());
    const ahg::NablaJResiduals nj = ahg::nabla_j_residuals(chart, p, local);
    if (nj.kahler > 1e-9) continue;
    const ahg::PointData pd = ahg::point_data(chart, p, false);
    EXPECT_LE(nj.nearly_kahler, 1e-9) << d.name;
    EXPECT_LE(ahg::rk_residual(pd.riemann, *pd.j), 1e-9) << d.name;
  }
}

}  // namespace

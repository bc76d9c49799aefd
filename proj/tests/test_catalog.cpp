#include <gtest/gtest.h>

#include <random>

#include "halfheat/catalog.hpp"
#include "halfheat/surface.hpp"

using namespace halfheat;

TEST(Catalog, NamesAndFactory) {
  const auto names = fixture_names();
  EXPECT_EQ(names.size(), fixtures().size());
  for (const auto& n : names) EXPECT_EQ(make_fixture(n, 1.0).name.rfind(n, 0), 0u) << n;
  EXPECT_THROW(make_fixture("moebius"), UsageError);
}

TEST(Catalog, FixturesLieOnTheirModelsAndZeroSets) {
  for (const NamedSurface& s : fixtures()) {
    const auto& b = s.sample_box;
    for (double fu : {0.1, 0.5, 0.9})
      for (double fv : {0.2, 0.8}) {
        const double u = b.u_min + fu * (b.u_max - b.u_min), v = b.v_min + fv * (b.v_max - b.v_min);
        const Point x = s.chart(u, v);
        EXPECT_TRUE(on_model(s.curvature, x)) << s.name;
        if (s.side_fn) {
          EXPECT_NEAR(s.side(x), 0.0, kOnSurfaceTol) << s.name;
        }
      }
  }
}

TEST(Catalog, NormalPointsIntoPositiveSide) {
  for (const NamedSurface& s : fixtures()) {
    if (!s.side_fn) continue;
    const FundamentalData fd = fundamental_data(s.chart, 0.3, 0.2);
    const Point p = s.curvature == Curvature::flat ? Point(fd.X + 1e-4 * fd.N) : geodesic(s.curvature, fd.X, fd.N, 1e-4);
    EXPECT_GT(s.side(p), 0.0) << s.name;
  }
}

TEST(Catalog, MinimalFlags) {
  for (const NamedSurface& s : fixtures()) {
    if (!s.minimal) continue;
    EXPECT_NEAR(fundamental_data(s.chart, 0.3, 0.2).eta, 0.0, 1e-10) << s.name;
  }
  EXPECT_FALSE(round_sphere(1.0).minimal);
}

TEST(Catalog, SymmetryHarness) {
  for (const NamedSurface& s : fixtures()) {
    if (!s.has_symmetries()) continue;
    const SymmetryReport r = symmetry_check(s, 6, 0.7, 200);
    EXPECT_TRUE(r.passed) << s.name;
    EXPECT_EQ(r.flow_side_violations, 0) << s.name;
    EXPECT_EQ(r.swap_side_violations, 0) << s.name;
    EXPECT_LT(r.witness_residual, 1e-12) << s.name;
  }
}

TEST(Catalog, HalfFixturesHaveSymmetries) {
  for (const NamedSurface& s : fixtures())
    if (s.half_domain) {
      EXPECT_TRUE(s.has_symmetries()) << s.name;
    }
  EXPECT_FALSE(catenoid().has_symmetries());
}

TEST(Catalog, RandomPointsAreOnModel) {
  std::mt19937_64 rng(3);
  for (const NamedSurface& s : fixtures())
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(on_model(s.curvature, random_model_point(s, rng))) << s.name;
}

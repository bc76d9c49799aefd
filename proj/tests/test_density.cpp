#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "halfheat/catalog.hpp"
#include "halfheat/density.hpp"

using namespace halfheat;

TEST(Density, HalfFixturesAreHalf) {
  for (const NamedSurface& s : fixtures()) {
    if (!s.half_domain) continue;
    const Point x = s.chart(0.4, 0.3);
    for (double r : {0.3, 1.0, 2.0}) EXPECT_NEAR(density(s, x, r), 0.5, 1e-7) << s.name << " r=" << r;
  }
}

TEST(Density, CatenoidWaistOracle) {
  // frozen from an independent slice integral
  EXPECT_NEAR(density(catenoid(), catenoid().chart(0.0, 0.0), 1.0), 0.501235257590981309, 1e-9);
}

TEST(Density, RoundBallOracle) {
  const double R = 1.5;
  const NamedSurface s = round_sphere(R);
  for (double r : {0.2, 0.9, 2.0}) EXPECT_NEAR(density(s, s.chart(0.3, 0.1), r), 0.5 - r / (4 * R), 1e-10);
}

TEST(Density, ClassifyModeAgrees) {
  const NamedSurface s = catenoid();
  const Point x = s.chart(0.0, 0.0);
  const double fine = density(s, x, 1.0);
  const double coarse = density(s, x, 1.0, {128, DensityMode::classify});
  EXPECT_NEAR(coarse, fine, 2e-3);
}

TEST(Density, SphereFractionOffSurface) {
  const NamedSurface s = euclidean_plane();
  // sphere of radius 1 centred at height 0.5: cap fraction (1 + 0.5) / 2
  EXPECT_NEAR(sphere_fraction(s, make_point({0, 0, 0.5}), 1.0), 0.75, 1e-10);
  EXPECT_NEAR(sphere_fraction(s, make_point({0, 0, -2.0}), 1.0), 0.0, 1e-14);
}

TEST(Density, Errors) {
  const NamedSurface plane = euclidean_plane();
  EXPECT_THROW(density(plane, make_point({0, 0, 0.1}), 1.0), UsageError);
  const NamedSurface g = great_sphere();
  EXPECT_THROW(density(g, g.chart(0.1, 0.1), 3.1), UsageError);
  EXPECT_THROW(density(spherical_helicoid(0.3), spherical_helicoid(0.3).chart(0.1, 0.1), 1.0), UsageError);
}

TEST(Density, ProfileAndFit) {
  const NamedSurface s = catenoid();
  const DensityProfile p = density_profile(s, s.chart(0.0, 0.0), {0.1, 0.15, 0.2, 0.3});
  ASSERT_EQ(p.sigma.size(), 4u);
  for (double e : p.err) EXPECT_LT(e, 1e-9);
  const ExpansionFit fit = expansion_fit(p);
  EXPECT_FALSE(fit.inconclusive);
  EXPECT_NEAR(fit.slope, 5.0, 0.5);
  EXPECT_GT(fit.coefficient, 0.0);

  const DensityProfile flat = density_profile(euclidean_plane(), make_point({0, 0, 0}), {0.1, 0.2, 0.3});
  EXPECT_TRUE(expansion_fit(flat).inconclusive);
}

TEST(Density, BallSplit) {
  const NamedSurface s = hyperbolic_plane();
  const BallSplit b = ball_split(s, s.chart(0.2, 0.1), 1.2);
  EXPECT_NEAR(b.vol_plus + b.vol_minus, b.ball_volume, 1e-10 * b.ball_volume);
  EXPECT_NEAR(b.vol_plus, b.vol_minus, 1e-10 * b.ball_volume);
  EXPECT_NEAR(ball_volume(Curvature::flat, 1.0), 4 * std::numbers::pi / 3, 1e-14);
  EXPECT_NEAR(ball_volume(Curvature::spherical, std::numbers::pi), 2 * std::numbers::pi * std::numbers::pi, 1e-12);
}

TEST(Density, TangentFrameIsOrthonormal) {
  const NamedSurface s = hyperbolic_helicoid(0.4);
  const Point x = s.chart(0.3, 0.2);
  const auto e = tangent_frame(s, x);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(ambient_form(s.curvature, e[i], x), 0.0, 1e-12);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(metric(s.curvature, e[i], e[j]), i == j ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_GT(s.side(geodesic(s.curvature, x, e[2], 1e-3)), 0.0);
}

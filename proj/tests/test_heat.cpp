#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "halfheat/catalog.hpp"
#include "halfheat/heat.hpp"

using namespace halfheat;

namespace {
const char* model_label(Curvature c) {
  return c == Curvature::flat ? "flat" : c == Curvature::spherical ? "spherical" : "hyperbolic";
}
}  // namespace

class Kernel : public ::testing::TestWithParam<Curvature> {};

TEST_P(Kernel, MassIsOne) {
  for (double t : {0.01, 0.3, 1.0, 4.0}) EXPECT_NEAR(kernel_mass(GetParam(), t), 1.0, 1e-10) << t;
}

TEST_P(Kernel, Semigroup) {
  for (double t : {0.1, 0.7}) EXPECT_LT(semigroup_residual(GetParam(), t, 0.5), 1e-8) << t;
}

INSTANTIATE_TEST_SUITE_P(All, Kernel, ::testing::Values(Curvature::flat, Curvature::spherical, Curvature::hyperbolic),
                         [](const auto& info) { return std::string(model_label(info.param)); });

TEST(HeatKernel, ClosedForms) {
  const double t = 0.4, r = 0.9;
  EXPECT_NEAR(heat_kernel(Curvature::flat, t, r), std::exp(-r * r / (4 * t)) / std::pow(4 * std::numbers::pi * t, 1.5),
              1e-15);
  EXPECT_NEAR(heat_kernel(Curvature::hyperbolic, t, r),
              r / std::sinh(r) * std::exp(-t - r * r / (4 * t)) / std::pow(4 * std::numbers::pi * t, 1.5), 1e-15);
  // the two spherical representations meet at t = 1
  EXPECT_NEAR(heat_kernel(Curvature::spherical, 1.0 - 1e-12, r), heat_kernel(Curvature::spherical, 1.0, r), 1e-10);
  EXPECT_TRUE(std::isfinite(heat_kernel(Curvature::spherical, 0.5, std::numbers::pi)));
}

TEST(HeatKernel, Errors) {
  EXPECT_THROW(heat_kernel(Curvature::flat, 0.0, 1.0), UsageError);
  EXPECT_THROW(heat_kernel(Curvature::flat, 1.0, -0.1), UsageError);
  EXPECT_THROW(heat_kernel(Curvature::spherical, 1.0, 4.0), UsageError);
}

TEST(HalfSpace, Oracles) {
  for (double t : {0.05, 0.5, 2.0}) {
    EXPECT_DOUBLE_EQ(halfspace_cauchy(t, 0.0), 0.5);
    EXPECT_NEAR(halfspace_dirichlet(t, 0.3), 2 * halfspace_cauchy(t, 0.3) - 1, 1e-15);
  }
  EXPECT_DOUBLE_EQ(halfspace_flux(0.25), 2 / std::sqrt(std::numbers::pi));
}

TEST(Temperature, PlaneMatchesErf) {
  const NamedSurface s = euclidean_plane();
  const TemperatureOptions opt = precise_temperature_options();
  for (double rho : {0.0, 0.2, -0.5}) {
    const Point x = make_point({0.1, 0.2, rho});
    EXPECT_NEAR(cauchy_temperature(s, 0.5, x, opt), halfspace_cauchy(0.5, rho), 1e-9) << rho;
  }
  EXPECT_NEAR(image_dirichlet_temperature(s, 0.5, make_point({0, 0, 0.3}), opt), halfspace_dirichlet(0.5, 0.3), 1e-9);
  EXPECT_NEAR(image_dirichlet_flux(s, 0.25, 0.0, 0.0, 1e-2, opt), halfspace_flux(0.25), 1e-6);
}

TEST(Temperature, HalfOnHelicoid) {
  const NamedSurface s = right_helicoid();
  EXPECT_NEAR(cauchy_temperature(s, 0.5, s.chart(0.3, 0.7)), 0.5, 1e-5);
}

TEST(Temperature, HelicoidCoAreaOffSurface) {
  // full 3-D reduction against the z-slice oracle at a point inside the domain
  const NamedSurface s = right_helicoid();
  const Point x = make_point({0.3, -0.4, 0.2});
  ASSERT_GT(std::abs(s.side(x)), 1e-3);
  EXPECT_NEAR(cauchy_temperature(s, 0.3, x), helicoid_slice_temperature(0.3, x), 1e-4);
}

TEST(Temperature, DensityCacheMemoises) {
  const NamedSurface s = euclidean_plane();
  DensityCache cache(s, make_point({0, 0, 0.2}), {32, DensityMode::refined, 1e-10});
  const double a = cache(0.5);
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(cache(0.5), a);
  EXPECT_EQ(cache.hits(), 1u);
  cauchy_temperature(cache, s.curvature, 0.2);
  EXPECT_GT(cache.size(), 1u);
}

TEST(Temperature, ImageMethodNeedsTotallyGeodesic) {
  const NamedSurface s = right_helicoid();
  EXPECT_THROW(image_dirichlet_temperature(s, 0.5, make_point({0.3, -0.4, 0.2})), UsageError);
}

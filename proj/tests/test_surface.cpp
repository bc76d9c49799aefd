#include <gtest/gtest.h>

#include <cmath>

#include "halfheat/catalog.hpp"
#include "halfheat/surface.hpp"

using namespace halfheat;

TEST(Surface, HelicoidCurvature) {
  const NamedSurface s = right_helicoid();
  for (double v : {-1.0, 0.0, 0.5}) {
    const FundamentalData fd = fundamental_data(s.chart, 0.3, v);
    EXPECT_NEAR(fd.K, -1.0 / std::pow(1 + v * v, 2), 1e-12);
    EXPECT_NEAR(fd.eta, 0.0, 1e-12);
    EXPECT_NEAR(brioschi_curvature(s.chart, 0.3, v), fd.K, 1e-10);
  }
}

TEST(Surface, RoundSphereWithInnerNormal) {
  const double R = 2.0;
  const NamedSurface s = round_sphere(R);
  const FundamentalData fd = fundamental_data(s.chart, 0.4, 0.2);
  EXPECT_NEAR(fd.K, 1 / (R * R), 1e-12);
  EXPECT_NEAR(fd.eta, 2 / R, 1e-12);
  EXPECT_NEAR(fd.k_principal[0], 1 / R, 1e-12);
  EXPECT_GT(s.side(s.chart(0.4, 0.2) + 1e-3 * fd.N), 0.0);
}

TEST(Surface, CliffordTorusIsFlatAndMinimal) {
  const NamedSurface s = clifford_torus();
  const FundamentalData fd = fundamental_data(s.chart, 1.0, 2.0);
  EXPECT_NEAR(fd.K, 0.0, 1e-12);
  EXPECT_NEAR(fd.eta, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(fd.k_principal[0]), 1.0, 1e-12);
}

TEST(Surface, FiniteDifferenceJetsAgree) {
  const NamedSurface s = hyperbolic_helicoid(0.4);
  const auto exact = s.chart.jet(0.2, 0.3, 4);
  const auto fd = s.chart.finite_difference_jet(0.2, 0.3, 4);
  for (int i = 0; i < exact.size(); ++i)
    for (int k = 0; k < Jet2d::size_for(2); ++k) EXPECT_NEAR(exact[i][k], fd[i][k], 1e-6);
}

TEST(Surface, BlackBoxChartMatchesAnalytic) {
  const NamedSurface s = catenoid();
  const Chart bb = Chart::black_box("bb", s.chart.curvature(), s.chart.domain(),
                                    [&](double u, double v) { return s.chart(u, v); });
  EXPECT_FALSE(bb.has_jets());
  EXPECT_NEAR(fundamental_data(bb, 0.1, 0.2).K, fundamental_data(s.chart, 0.1, 0.2).K, 1e-5);
  EXPECT_ANY_THROW(bb.jet(0.1, 0.2, 6));
}

TEST(Surface, TangentialCalculusOfCoordinateFunction) {
  // On the plane z = 0, phi = u^2 + v^2 has positive Laplacian -4.
  const NamedSurface s = euclidean_plane();
  const auto r = tangential_calculus(s.chart, 0.5, -0.5, [](const Jet2d& u, const Jet2d& v) { return u * u + v * v; });
  EXPECT_NEAR(r.laplacian, -4.0, 1e-12);
  EXPECT_NEAR(r.gradient[0], 1.0, 1e-12);
  EXPECT_NEAR(r.gradient[1], -1.0, 1e-12);
  EXPECT_NEAR(r.divergence, 4.0, 1e-12);
}

TEST(Surface, CatenoidWaistDivergence) {
  const NamedSurface s = catenoid();
  for (double v : {0.0, 0.3}) {
    const double ch = std::cosh(v), sh = std::sinh(v);
    const double closed = 4 * (ch * ch - 7 * sh * sh) / std::pow(ch, 10);
    EXPECT_NEAR(divergence_residual(s.chart, 0.7, v), closed, 1e-9);
  }
}

TEST(Surface, AsymptoticIsothermalChart) {
  const NamedSurface s = right_helicoid();
  ASSERT_TRUE(s.asymptotic_chart.has_value());
  const auto d = isothermal_diagnostics(*s.asymptotic_chart, 0.4, 0.8);
  EXPECT_NEAR(d.E, std::pow(std::cosh(0.8), 2), 1e-12);
  EXPECT_LT(d.F_residual, 1e-12);
  EXPECT_LT(d.G_residual, 1e-12);
  EXPECT_LT(d.l_diagonal_residual, 1e-12);
  EXPECT_LT(std::abs(d.E_identity), 1e-10);
  EXPECT_LT(std::abs(d.Q_uv), 1e-10);
  EXPECT_LT(std::abs(d.logE_pde_residual), 1e-8);
}

TEST(Surface, HelicoidRulingsAreGeodesics) {
  for (const NamedSurface& s : {right_helicoid(), hyperbolic_helicoid(0.4), spherical_helicoid(1.0)}) {
    ASSERT_TRUE(s.ruling.has_value()) << s.name;
    const auto r = geodesic_ruling_check(s.chart, *s.ruling, 0.3, {-0.5, 0.0, 0.5});
    EXPECT_LT(r.ambient_geodesic_residual, 1e-8) << s.name;
    EXPECT_LT(r.geodesic_curvature, 1e-8) << s.name;
  }
}

TEST(Surface, OrientationFlipNegatesEta) {
  const NamedSurface s = round_sphere(1.0);
  EXPECT_NEAR(fundamental_data(s.chart.flipped(), 0.1, 0.1).eta, -fundamental_data(s.chart, 0.1, 0.1).eta, 1e-12);
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "halfheat/catalog.hpp"
#include "halfheat/invariants.hpp"
#include "halfheat/surface.hpp"

using namespace halfheat;

TEST(Invariants, CatenoidWaistGamma4) {
  const GammaReport r = gamma_report(catenoid().chart, 0.0, 0.0);
  EXPECT_NEAR(r.divergence, 4.0, 1e-10);
  EXPECT_NEAR(r.gamma4, 1.25, 1e-9);
  EXPECT_NEAR(r.gamma4, r.predicted_gamma4, 1e-9);
  EXPECT_NEAR(r.gamma4_reduced, r.gamma4, 1e-9);
  EXPECT_NEAR(r.gamma0, 0.0, 1e-12);
  EXPECT_NEAR(r.gamma2, 0.0, 1e-10);
}

TEST(Invariants, HelicoidsHaveVanishingGammas) {
  for (const NamedSurface& s : {right_helicoid(), hyperbolic_helicoid(0.4), clifford_torus()}) {
    const GammaReport r = gamma_report(s.chart, 0.3, 0.4);
    EXPECT_LT(std::abs(r.gamma0), 1e-9) << s.name;
    EXPECT_LT(std::abs(r.gamma2), 1e-9) << s.name;
    EXPECT_LT(std::abs(r.gamma4), 1e-8) << s.name;
    EXPECT_LT(std::abs(r.divergence), 1e-8) << s.name;
  }
}

TEST(Invariants, EvenNormalDerivativesOfEtaVanish) {
  const Collar c(right_helicoid().chart, 0.2, 0.5, 6);
  const Jet1d eta = Collar::along_normal(c.eta());
  EXPECT_LT(std::abs(eta.coeff({0})), 1e-10);
  EXPECT_LT(std::abs(eta.coeff({2})), 1e-9);
  EXPECT_LT(std::abs(eta.coeff({4})), 1e-8);
  EXPECT_LT(c.gauss_lemma_defect(), 1e-12);
}

TEST(Invariants, UnitBallEtaMatchesRiccati) {
  // Inner parallel spheres of the unit ball: eta(rho) = 2 / (1 - rho).
  const Collar c(round_sphere(1.0).chart, 0.3, 0.2, 6);
  const Jet1d eta = Collar::along_normal(c.eta());
  for (int k = 0; k < eta.size(); ++k) EXPECT_NEAR(eta.coeff({k}), 2.0, 1e-10) << k;
}

TEST(Invariants, TechnicalIdentityOnCatenoid) {
  const IdentityReport r = identity_checks(catenoid().chart, 0.4, 0.3);
  EXPECT_NEAR(r.technical_lhs, r.technical_rhs, 1e-6 * std::max(1.0, std::abs(r.technical_rhs)));
  EXPECT_NEAR(r.lemma_lhs, r.lemma_rhs, 1e-6 * std::max(1.0, std::abs(r.lemma_rhs)));
  EXPECT_LT(r.commutation_residual, 1e-9);
  EXPECT_LT(r.riccati_trace_residual, 1e-9);
}

TEST(Invariants, OperatorWordsNeedJetOrder) {
  const Collar c(catenoid().chart, 0.0, 0.0, 4);
  EXPECT_THROW(apply_operator(operator_D6(), c, Jet3d(1.0)), UsageError);
}

TEST(Riccati, ClosedFormMatchesRungeKutta) {
  Eigen::Matrix2d S0;
  S0 << 0.3, 0.1, 0.1, -0.2;
  for (Curvature c : {Curvature::flat, Curvature::spherical, Curvature::hyperbolic}) {
    const Eigen::Matrix2d a = riccati_closed_form(c, S0, 0.5), b = riccati_rk4(c, S0, 0.5);
    EXPECT_LT((a - b).norm(), 1e-10);
  }
}

TEST(Riccati, FocalDistanceAndCollarWidth) {
  const Eigen::Matrix2d S0 = Eigen::Vector2d(1.0, 0.0).asDiagonal();
  EXPECT_NEAR(focal_distance(Curvature::flat, S0), 1.0, 1e-12);
  EXPECT_NEAR(focal_distance(Curvature::spherical, Eigen::Matrix2d::Zero()), std::numbers::pi / 2, 1e-12);
  EXPECT_EQ(focal_distance(Curvature::hyperbolic, Eigen::Matrix2d::Zero()), std::numeric_limits<double>::infinity());
  EXPECT_NO_THROW(require_collar_width(Curvature::flat, S0, 0.5));
  EXPECT_THROW(require_collar_width(Curvature::flat, S0, 2.0), CollarTooWideError);
}

TEST(Riccati, FixturesOverCollarWindow) {
  std::vector<NamedSurface> list = fixtures();
  for (double a : {0.14, 0.2, 1.0}) list.push_back(hyperbolic_helicoid(a));
  for (const NamedSurface& s : list) {
    for (const auto& [u, v] : {std::pair{0.3, 0.2}, std::pair{-1.0, 1.0}}) {
      const Eigen::Matrix2d S0 = fundamental_data(s.chart, u, v).S;
      const double width = std::min(0.3, 0.5 * focal_distance(s.curvature, S0));
      for (double rho : {0.25 * width, width}) {
        const Eigen::Matrix2d a = riccati_closed_form(s.curvature, S0, rho);
        const Eigen::Matrix2d b = riccati_rk4(s.curvature, S0, rho);
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8) << s.name << " rho=" << rho;
      }
    }
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "halfheat/spaceform.hpp"

using namespace halfheat;

namespace {
const char* model_label(Curvature c) {
  return c == Curvature::flat ? "flat" : c == Curvature::spherical ? "spherical" : "hyperbolic";
}
}  // namespace
using std::numbers::pi;

namespace {

Point base(Curvature c) {
  return c == Curvature::flat ? make_point({0.2, -0.1, 0.4}) : make_point({1, 0, 0, 0});
}

Point some_tangent(Curvature c) {
  return c == Curvature::flat ? make_point({0.6, 0.0, 0.8}) : make_point({0, 0.6, 0.0, 0.8});
}

}  // namespace

class SpaceForm : public ::testing::TestWithParam<Curvature> {};

TEST_P(SpaceForm, GeodesicsAreUnitSpeed) {
  const Curvature c = GetParam();
  const Point p = base(c), xi = some_tangent(c);
  for (double s : {0.1, 0.7, 1.3}) {
    const Point q = geodesic(c, p, xi, s);
    EXPECT_TRUE(on_model(c, q));
    EXPECT_NEAR(distance(c, p, q), s, 1e-12);
    EXPECT_NEAR(metric(c, direction_to(c, p, q), xi), 1.0, 1e-12);
  }
}

TEST_P(SpaceForm, ProjectionIsTangent) {
  const Curvature c = GetParam();
  const Point p = base(c);
  Point v = p;
  v.setConstant(0.3);
  const Point t = project_to_tangent(c, p, v);
  if (c != Curvature::flat) {
    EXPECT_NEAR(ambient_form(c, t, p), 0.0, 1e-15);
  }
}

INSTANTIATE_TEST_SUITE_P(All, SpaceForm,
                         ::testing::Values(Curvature::flat, Curvature::spherical, Curvature::hyperbolic),
                         [](const auto& info) { return std::string(model_label(info.param)); });

TEST(SpaceFormBasics, SphereAreas) {
  EXPECT_NEAR(sphere_area(Curvature::flat, 2.0), 16 * pi, 1e-12);
  EXPECT_NEAR(sphere_area(Curvature::spherical, 1.0), 4 * pi * std::sin(1.0) * std::sin(1.0), 1e-12);
  EXPECT_NEAR(sphere_area(Curvature::hyperbolic, 1.0), 4 * pi * std::sinh(1.0) * std::sinh(1.0), 1e-12);
}

TEST(SpaceFormBasics, CurvatureNames) {
  EXPECT_EQ(curvature_from_int(-1), Curvature::hyperbolic);
  EXPECT_ANY_THROW(curvature_from_int(2));
  EXPECT_NE(curvature_name(Curvature::flat), curvature_name(Curvature::spherical));
}

TEST(SpaceFormBasics, HyperboloidConvention) {
  const Point p = make_point({std::cosh(1.0), std::sinh(1.0), 0, 0});
  EXPECT_TRUE(on_model(Curvature::hyperbolic, p));
  EXPECT_FALSE(on_model(Curvature::hyperbolic, -p));  // lower sheet
  EXPECT_NEAR(ambient_form(Curvature::hyperbolic, p, p), 1.0, 1e-14);
}

TEST(SpaceFormBasics, PoincareRoundTrip) {
  const Point p = geodesic(Curvature::hyperbolic, make_point({1, 0, 0, 0}), make_point({0, 0.48, 0.6, 0.64}), 2.0);
  const Eigen::Vector3d b = poincare_from_hyperboloid(p);
  EXPECT_LT(b.norm(), 1.0);
  EXPECT_LT((hyperboloid_from_poincare(b) - p).norm(), 1e-12);
}

TEST(SpaceFormBasics, WrongDimensionIsUsageError) {
  EXPECT_THROW(ambient_form(Curvature::spherical, make_point({1, 0, 0}), make_point({1, 0, 0})), UsageError);
}

TEST(Isometry, BoostAndRotationPreserveTheForm) {
  const double b = 0.8;
  Eigen::MatrixXd boost = Eigen::MatrixXd::Identity(4, 4);
  boost(0, 0) = boost(1, 1) = std::cosh(b);
  boost(0, 1) = boost(1, 0) = std::sinh(b);
  const Isometry B(Curvature::hyperbolic, boost);
  EXPECT_LT(B.form_defect(), 1e-14);
  const Point p = make_point({1, 0, 0, 0});
  EXPECT_NEAR(distance(Curvature::hyperbolic, p, B(p)), b, 1e-12);
  EXPECT_LT(((B.inverse() * B)(make_point({2, 1, 1, 1})) - make_point({2, 1, 1, 1})).norm(), 1e-12);

  const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.3, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  const Isometry R(Curvature::flat, rot, Eigen::Vector3d(1, 0, -1));
  EXPECT_LT(R.form_defect(), 1e-14);
  const Point q = make_point({0.5, 0.5, 0.5});
  EXPECT_NEAR(distance(Curvature::flat, R(p.head(3)), R(q)), distance(Curvature::flat, p.head(3), q), 1e-14);
}

TEST(Isometry, ShearIsNotAnIsometry) {
  Eigen::MatrixXd shear = Eigen::MatrixXd::Identity(3, 3);
  shear(0, 1) = 0.5;
  EXPECT_GT(Isometry(Curvature::flat, shear).form_defect(), 0.1);
}

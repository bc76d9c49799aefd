#include <gtest/gtest.h>

#include <cmath>

#include "halfheat/jet.hpp"
#include "halfheat/rational.hpp"

using namespace halfheat;

TEST(Jet, ExpCoefficientsAreInverseFactorials) {
  const Jet1d x = Jet1d::variable(0, 0.0, 6);
  const Jet1d e = exp(x);
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    EXPECT_NEAR(e.coeff({k}), 1.0 / fact, 1e-15);
  }
}

TEST(Jet, PythagoreanIdentity) {
  const Jet2d u = Jet2d::variable(0, 0.3, 8), v = Jet2d::variable(1, -0.7, 8);
  const Jet2d w = u * v + u;
  const Jet2d one = sin(w) * sin(w) + cos(w) * cos(w);
  EXPECT_NEAR(one.constant(), 1.0, 1e-15);
  for (int i = 1; i < one.size(); ++i) EXPECT_NEAR(one[i], 0.0, 1e-13);
}

TEST(Jet, ReciprocalAndLog) {
  const Jet1d x = Jet1d::variable(0, 2.0, 6);
  const Jet1d r = x * reciprocal(x);
  EXPECT_NEAR(r.constant(), 1.0, 1e-15);
  for (int i = 1; i < r.size(); ++i) EXPECT_NEAR(r[i], 0.0, 1e-15);
  const Jet1d back = exp(log(x));
  for (int i = 0; i < back.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-14);
}

TEST(Jet, BinaryOpsTakeTheSmallerOrder) {
  const Jet2d a = Jet2d::variable(0, 1.0, 3), b = Jet2d::variable(1, 1.0, 5);
  EXPECT_EQ((a * b).order(), 3);
  EXPECT_EQ((a + b).order(), 3);
  EXPECT_EQ(differentiate(b, 1).order(), 4);
}

TEST(Jet, DifferentiateIntegrateRoundTrip) {
  const Jet2d u = Jet2d::variable(0, 0.0, 6), v = Jet2d::variable(1, 0.0, 6);
  const Jet2d f = u * u * v + 3.0 * v * v * v;
  EXPECT_DOUBLE_EQ(differentiate(f, 0).coeff({1, 1}), 2.0);
  EXPECT_DOUBLE_EQ(differentiate(f, 1).coeff({0, 2}), 9.0);
  const Jet2d g = integrate(differentiate(f, 1), 1);
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], f[i], 1e-15);
  EXPECT_DOUBLE_EQ(derivative_at_base(f, {2, 1}), 2.0);
}

TEST(Jet, EvaluateMatchesTaylorPolynomial) {
  const Jet1d x = Jet1d::variable(0, 0.0, 8);
  EXPECT_NEAR(evaluate(exp(x), {0.1}), std::exp(0.1), 1e-12);
}

TEST(Jet, SliceAndEmbed) {
  const Jet2d u = Jet2d::variable(0, 0.0, 4), v = Jet2d::variable(1, 0.0, 4);
  const Jet2d f = 1.0 + u + 2.0 * v + u * v;
  const Jet1d fu = slice<1>(f, std::array<int, 1>{0});
  EXPECT_DOUBLE_EQ(fu.coeff({1}), 1.0);
  const Jet3d g = embed<3>(f, {0, 2});
  EXPECT_DOUBLE_EQ(g.coeff({1, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(g.coeff({0, 0, 1}), 2.0);
}

TEST(Jet, Errors) {
  EXPECT_THROW(reciprocal(Jet1d::variable(0, 0.0, 4)), DomainError);
  EXPECT_THROW(log(Jet1d::variable(0, -1.0, 4)), DomainError);
  EXPECT_THROW(differentiate(Jet1d(1.0, 0), 0), UsageError);
  Jet1d a = Jet1d::zero(2);
  EXPECT_THROW(a.set_coeff({3}, 1.0), UsageError);
}

TEST(Jet, ExactCoefficients) {
  using JR = Jet<Rational, 1>;
  const JR x = JR::variable(0, Rational(0), 5);
  const JR r = reciprocal(JR(Rational(1)) - x);  // geometric series
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(r.coeff({k}), Rational(1));
}

#include <gtest/gtest.h>

#include "halfheat/exact_poly.hpp"

using namespace halfheat;

TEST(ExactPoly, ExpansionAndCancellation) {
  const ExactPoly a = ExactPoly::a(1), b = ExactPoly::b(1);
  const ExactPoly sq = (a + b) * (a + b);
  EXPECT_EQ(sq - a * a - b * b, 2 * a * b);
  EXPECT_TRUE(((a - b) * (a + b) - (a * a - b * b)).is_zero());
  EXPECT_EQ(sq.degree_in(Var::a1), 2);
}

TEST(ExactPoly, Evaluate) {
  const ExactPoly p = ExactPoly::gamma(2) - 2 * ExactPoly::gamma(1);
  EXPECT_EQ(p.evaluate(std::map<Var, Rational>{{Var::G1, Rational(1, 3)}, {Var::G2, Rational(2, 3)}}), Rational(0));
  EXPECT_DOUBLE_EQ(p.evaluate(std::map<Var, double>{{Var::G1, 1.0}, {Var::G2, 5.0}}), 3.0);
}

TEST(ExactPoly, Substitute) {
  const ExactPoly k = ExactPoly::var(Var::k);
  const ExactPoly p = k * k + ExactPoly::var(Var::sigma);
  const ExactPoly q = p.substitute(Var::k, ExactPoly(Rational(1, 2)));
  EXPECT_EQ(q, ExactPoly(Rational(1, 4)) + ExactPoly::var(Var::sigma));
}

TEST(ExactPoly, LaurentMonomials) {
  const ExactPoly k = ExactPoly::var(Var::k);
  const ExactPoly inv = ExactPoly::var(Var::k, -1);
  EXPECT_EQ(k * inv, ExactPoly(1));
  EXPECT_EQ((k * k + k) / k, k + 1);
  EXPECT_ANY_THROW(k / (k + 1));
}

TEST(ExactPoly, Constants) {
  EXPECT_TRUE(ExactPoly(Rational(3, 5)).is_constant());
  EXPECT_EQ(ExactPoly(Rational(3, 5)).constant(), Rational(3, 5));
  EXPECT_FALSE(ExactPoly::a(2).is_constant());
  EXPECT_TRUE(ExactPoly().is_zero());
}

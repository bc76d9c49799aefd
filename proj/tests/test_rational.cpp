#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "halfheat/rational.hpp"

using halfheat::Rational;

TEST(Rational, NormalisesSignAndGcd) {
  const Rational r(2, -4);
  EXPECT_EQ(r.num(), -1);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, -7), Rational(0));
}

TEST(Rational, FieldOperations) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(3, 4) * Rational(-2, 9), Rational(-1, 6));
  EXPECT_EQ(Rational(3, 4) / Rational(3, 8), Rational(2));
  EXPECT_EQ(-Rational(5, 7), Rational(-5, 7));
  EXPECT_DOUBLE_EQ(Rational(1, 8).to_double(), 0.125);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(10, 7).str(), "10/7");
  EXPECT_EQ(Rational(-4).str(), "-4");
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_ANY_THROW(Rational(1, 0));
  EXPECT_ANY_THROW(Rational(1) / Rational(0));
}

TEST(Rational, OverflowIsReportedNotWrapped) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big * Rational(2), std::overflow_error);
  // large intermediates that reduce back into range are fine
  EXPECT_EQ(Rational(std::numeric_limits<std::int64_t>::max(), 3) * Rational(3, std::numeric_limits<std::int64_t>::max()),
            Rational(1));
}

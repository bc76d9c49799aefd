#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "halfheat/quadrature.hpp"

using namespace halfheat;

TEST(Quadrature, GaussLegendreIsExactToDegree2nMinus1) {
  for (int n : {1, 3, 8, 24}) {
    const QuadratureRule q = gauss_legendre(n, 0.0, 2.0);
    EXPECT_NEAR(std::accumulate(q.weights.begin(), q.weights.end(), 0.0), 2.0, 1e-14);
    double s = 0.0;
    const int deg = 2 * n - 1;
    for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], deg);
    EXPECT_NEAR(s, std::pow(2.0, deg + 1) / (deg + 1), 1e-12 * std::pow(2.0, deg + 1));
    EXPECT_TRUE(std::is_sorted(q.nodes.begin(), q.nodes.end()));
  }
}

TEST(Quadrature, AdaptiveHandlesEndpointSingularity) {
  const IntegralResult r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-12);
  EXPECT_GT(r.evaluations, 15);
}

TEST(Quadrature, AdaptiveOscillatory) {
  const IntegralResult r = integrate_adaptive([](double x) { return std::cos(20 * x); }, 0.0, std::numbers::pi / 2);
  EXPECT_NEAR(r.value, std::sin(10 * std::numbers::pi) / 20, 1e-12);
}

TEST(Quadrature, FindRoot) {
  const auto f = [](double x) { return std::cos(x); };
  EXPECT_NEAR(find_root(f, 0.0, 2.0, f(0.0), f(2.0)), std::numbers::pi / 2, 1e-13);
}

TEST(Quadrature, FornbergCentralDifferences) {
  const double h = 0.1;
  const auto w = fornberg_weights(0.0, {-h, 0.0, h}, 2);
  EXPECT_NEAR(w[1][0], -0.5 / h, 1e-12);
  EXPECT_NEAR(w[1][2], 0.5 / h, 1e-12);
  EXPECT_NEAR(w[2][0], 1 / (h * h), 1e-9);
  EXPECT_NEAR(w[2][1], -2 / (h * h), 1e-9);
  EXPECT_NEAR(w[0][1], 1.0, 1e-15);
}

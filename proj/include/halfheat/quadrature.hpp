#pragma once

#include <functional>
#include <vector>

namespace halfheat {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b]; nodes ascending.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b].
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol = 1e-13, double rel_tol = 1e-12,
                                  int max_intervals = 2000);

// Root of f in [a, b] given a sign change (Illinois false position with a
// bisection safeguard).
double find_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double x_tol = 1e-14, int max_iter = 200);

// Finite-difference weights for the derivatives 0..max_deriv at x0 from the
// given nodes (Fornberg's recursion). Result[k][j] is the weight of node j in
// the k-th derivative.
std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& nodes,
                                                  int max_deriv);

}  // namespace halfheat

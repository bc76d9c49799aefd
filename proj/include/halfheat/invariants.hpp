#pragma once

// Heat-flow invariants through the N / Delta operator algebra on a collar of
// parallel surfaces. The collar is represented in Fermi coordinates (u, v, rho):
// P(u,v,rho) = cs(rho) X(u,v) + sn(rho) N(u,v), expanded as a trivariate jet at
// (u, v, 0). The leaf metric, its inverse, the leaf shape operator and the
// leaf mean curvature are all jets, so normal and tangential derivatives are
// exact to the jet order.

#include <Eigen/Core>

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "halfheat/chart.hpp"
#include "halfheat/rational.hpp"
#include "halfheat/surface.hpp"

namespace halfheat {

using Mat2J3 = std::array<std::array<Jet3d, 2>, 2>;
using Vec2J3 = std::array<Jet3d, 2>;

inline constexpr int kRhoVar = 2;

class Collar {
 public:
  // order is the jet order of the parallel map P (6 suffices for D_6).
  Collar(const Chart& chart, double u, double v, int order = 6);

  Curvature curvature() const { return c_; }
  double u() const { return u_; }
  double v() const { return v_; }
  int order() const { return order_; }

  const Mat2J3& metric() const { return g_; }
  const Mat2J3& inverse_metric() const { return ginv_; }
  const Mat2J3& shape() const { return S_; }  // S_rho = -1/2 g^{-1} d_rho g
  const Jet3d& sqrt_det() const { return sqrt_det_; }
  const Jet3d& eta() const { return eta_; }   // -d_rho log sqrt(det g)

  // A surface field extended constantly along the normal geodesics.
  Jet3d lift(const Jet2d& f) const;
  Jet3d rho() const { return Jet3d::variable(kRhoVar, 0.0, kMaxJetOrder); }
  static Jet3d coordinate(int var, double base) { return Jet3d::variable(var, base, kMaxJetOrder); }

  Jet3d normal_operator(const Jet3d& phi) const;   // 2 d_rho phi - eta phi
  Jet3d laplacian(const Jet3d& phi) const;         // leaf + radial
  Jet3d leaf_laplacian(const Jet3d& phi) const;
  Jet3d radial_laplacian(const Jet3d& phi) const;  // -phi'' + eta phi'
  Vec2J3 leaf_gradient(const Jet3d& phi) const;
  Jet3d leaf_divergence(const Vec2J3& field) const;
  Vec2J3 apply_shape(const Vec2J3& field) const;

  // Restriction of a collar jet to the normal geodesic through (u, v).
  static Jet1d along_normal(const Jet3d& f);

  // |metric(P_rho, P_rho) - 1| + |metric(P_rho, P_u)| + |metric(P_rho, P_v)| at the base.
  double gauss_lemma_defect() const { return gauss_lemma_defect_; }

 private:
  Curvature c_;
  double u_, v_;
  int order_;
  Mat2J3 g_, ginv_, S_;
  Jet3d sqrt_det_, eta_;
  double gauss_lemma_defect_ = 0.0;
};

enum class Letter { N, Delta };

struct OperatorWord {
  Rational coefficient;
  std::vector<Letter> letters;  // applied right to left
  std::string str() const;
};

struct OperatorPolynomial {
  std::string name;
  std::vector<OperatorWord> words;
};

OperatorPolynomial operator_D2();
OperatorPolynomial operator_D4();
OperatorPolynomial operator_D6();

// Throws UsageError if the jet runs out of order along the word.
Jet3d apply_operator(const OperatorWord& word, const Collar& collar, const Jet3d& phi);
Jet3d apply_operator(const OperatorPolynomial& op, const Collar& collar, const Jet3d& phi);

struct GammaReport {
  double gamma0 = 0.0;
  double gamma2 = 0.0;
  double gamma4 = 0.0;          // 3 D_6 1 from the seven words
  double gamma4_reduced = 0.0;  // 3 D_6 1 from the four-term form in eta
  double divergence = 0.0;      // div(S grad K)
  double predicted_gamma4 = 0.0;  // 5/16 div(S grad K)
  double scale = 1.0;
};

double gamma(const Chart& chart, double u, double v, int k);
GammaReport gamma_report(const Chart& chart, double u, double v);
double reduced_D6_one(const Collar& collar);

struct IdentityReport {
  double technical_lhs = 0.0;   // d^2/dN^2 leaf-Laplacian(eta)
  double technical_rhs = 0.0;   // -8 delta(S grad K) = 8 div(S grad K)
  double lemma_lhs = 0.0;       // d^2/dN^2 leaf-Laplacian(phi)
  double lemma_rhs = 0.0;       // lap(phi'') + 4 delta(S grad phi')
  double commutation_residual = 0.0;  // |nabla_N grad phi - grad phi' - S grad phi|
  double riccati_trace_residual = 0.0;  // max_k |[d eta - tr S^2 - 2 sigma]_k|
};

// Test field for the lemma: phi = h(rho) + rho f(u,v) + rho^2 q(u,v) with h
// given by Taylor coefficients; defaults exercise every term.
struct LemmaField {
  std::vector<double> h = {0.7, 0.3, -1.1, 0.5, 0.2};
  ChartField f;
  ChartField q;
};

IdentityReport identity_checks(const Chart& chart, double u, double v, const LemmaField& field = {});

// ---------------------------------------------------------------------------
// Riccati transport of the shape operator along normal geodesics,
// dS/drho = S^2 + sigma I.

Eigen::Matrix2d riccati_closed_form(Curvature c, const Eigen::Matrix2d& S0, double rho);
Eigen::Matrix2d riccati_rk4(Curvature c, const Eigen::Matrix2d& S0, double rho, int steps = 2000);
// Smallest rho > 0 at which a principal curvature blows up (infinity if none).
double focal_distance(Curvature c, const Eigen::Matrix2d& S0);
// Throws CollarTooWideError if a focal point lies in [0, width].
void require_collar_width(Curvature c, const Eigen::Matrix2d& S0, double width);
// tr of the closed form as a rho-jet.
Jet1d riccati_mean_curvature_jet(Curvature c, const Eigen::Matrix2d& S0, int order);

}  // namespace halfheat

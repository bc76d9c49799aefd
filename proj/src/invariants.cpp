#include "halfheat/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace halfheat {
namespace {

Jet3d to3(const Jet2d& f) { return embed<3>(f, {0, 1}); }

double coeff_rho(const Jet3d& f, int k) { return f.coeff({0, 0, k}); }

// sn(rho) / rho as an even rho-series.
Jet3d sn_over_rho(Curvature c) {
  Jet3d r(1.0, kMaxJetOrder);
  const double s = sigma_of(c);
  double term = 1.0;
  for (int k = 1; 2 * k <= kMaxJetOrder; ++k) {
    term *= -s / ((2.0 * k) * (2.0 * k + 1.0));
    r.set_coeff({0, 0, 2 * k}, term);
  }
  return r;
}

}  // namespace

Collar::Collar(const Chart& chart, double u, double v, int order)
    : c_(chart.curvature()), u_(u), v_(v), order_(order) {
  if (order < 2 || order > kMaxJetOrder) throw UsageError("collar order must be in [2, 8]");
  const AmbientVector<Jet2d> X = chart.jet(u, v, order);
  const int n = ambient_dim(c_);
  AmbientVector<Jet2d> Xu(n), Xv(n);
  for (int k = 0; k < n; ++k) {
    Xu[k] = differentiate(X[k], 0);
    Xv[k] = differentiate(X[k], 1);
  }
  AmbientVector<Jet2d> N = normal_direction(c_, X, Xu, Xv);
  const double flip = chart.orientation();

  // P = cs(rho) X + rho * (sn(rho)/rho) N: N is one order short of X, and the
  // explicit factor rho restores the full order.
  const Jet3d rho = Jet3d::variable(kRhoVar, 0.0, kMaxJetOrder);
  const Jet3d c_rho = cs(c_, rho);
  const Jet3d s_tilde = sn_over_rho(c_);
  AmbientVector<Jet3d> P(n);
  for (int k = 0; k < n; ++k)
    P[k] = c_rho * to3(X[k]) + multiply_by_variable(s_tilde * to3(N[k]) * flip, kRhoVar);

  std::array<AmbientVector<Jet3d>, 3> dP;
  for (int a = 0; a < 3; ++a) {
    dP[a] = AmbientVector<Jet3d>(n);
    for (int k = 0; k < n; ++k) dP[a][k] = differentiate(P[k], a);
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) g_[a][b] = halfheat::metric(c_, dP[a], dP[b]);
  gauss_lemma_defect_ = std::abs(halfheat::metric(c_, dP[2], dP[2]).constant() - 1.0) +
                        std::abs(halfheat::metric(c_, dP[2], dP[0]).constant()) +
                        std::abs(halfheat::metric(c_, dP[2], dP[1]).constant());

  const Jet3d det = g_[0][0] * g_[1][1] - g_[0][1] * g_[1][0];
  if (!(det.constant() > kDegenerateDetG)) throw SingularChartError("collar: degenerate chart");
  sqrt_det_ = sqrt(det);
  const Jet3d inv_det = 1.0 / det;
  ginv_[0][0] = g_[1][1] * inv_det;
  ginv_[1][1] = g_[0][0] * inv_det;
  ginv_[0][1] = -g_[0][1] * inv_det;
  ginv_[1][0] = ginv_[0][1];

  eta_ = -differentiate(sqrt_det_, kRhoVar) / sqrt_det_;
  Mat2J3 dg;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) dg[a][b] = differentiate(g_[a][b], kRhoVar);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) S_[a][b] = -0.5 * (ginv_[a][0] * dg[0][b] + ginv_[a][1] * dg[1][b]);
}

Jet3d Collar::lift(const Jet2d& f) const { return to3(f); }

Jet3d Collar::normal_operator(const Jet3d& phi) const {
  return 2.0 * differentiate(phi, kRhoVar) - eta_ * phi;
}

Vec2J3 Collar::leaf_gradient(const Jet3d& phi) const {
  const Jet3d pu = differentiate(phi, 0), pv = differentiate(phi, 1);
  return {ginv_[0][0] * pu + ginv_[0][1] * pv, ginv_[1][0] * pu + ginv_[1][1] * pv};
}

Jet3d Collar::leaf_divergence(const Vec2J3& field) const {
  const Jet3d flux = differentiate(sqrt_det_ * field[0], 0) + differentiate(sqrt_det_ * field[1], 1);
  return flux / sqrt_det_;
}

Vec2J3 Collar::apply_shape(const Vec2J3& field) const {
  return {S_[0][0] * field[0] + S_[0][1] * field[1], S_[1][0] * field[0] + S_[1][1] * field[1]};
}

Jet3d Collar::leaf_laplacian(const Jet3d& phi) const { return -leaf_divergence(leaf_gradient(phi)); }

Jet3d Collar::radial_laplacian(const Jet3d& phi) const {
  const Jet3d d1 = differentiate(phi, kRhoVar);
  return -differentiate(d1, kRhoVar) + eta_ * d1;
}

Jet3d Collar::laplacian(const Jet3d& phi) const { return leaf_laplacian(phi) + radial_laplacian(phi); }

Jet1d Collar::along_normal(const Jet3d& f) { return slice<1>(f, {kRhoVar}); }

std::string OperatorWord::str() const {
  std::string s = coefficient.str() + " ";
  for (Letter l : letters) s += (l == Letter::N ? "N" : "L");
  return s;
}

OperatorPolynomial operator_D2() {
  return {"D2", {{Rational(1, 2), {Letter::N}}}};
}

OperatorPolynomial operator_D4() {
  const Rational c(-1, 16);
  return {"D4", {{c, {Letter::Delta, Letter::N}}, {c * Rational(3), {Letter::N, Letter::Delta}}}};
}

OperatorPolynomial operator_D6() {
  const Rational c(1, 768);
  using L = Letter;
  return {"D6",
          {{c, {L::Delta, L::N, L::N, L::N}},
           {-c, {L::N, L::N, L::N, L::Delta}},
           {c, {L::N, L::Delta, L::N, L::N}},
           {-c, {L::N, L::N, L::Delta, L::N}},
           {c * Rational(40), {L::N, L::Delta, L::Delta}},
           {c * Rational(8), {L::Delta, L::Delta, L::N}},
           {c * Rational(16), {L::Delta, L::N, L::Delta}}}};
}

Jet3d apply_operator(const OperatorWord& word, const Collar& collar, const Jet3d& phi) {
  Jet3d r = phi;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    const int need = *it == Letter::N ? 1 : 2;
    if (r.order() < need)
      throw UsageError("operator word " + word.str() + ": jet order exhausted; use a deeper collar");
    r = *it == Letter::N ? collar.normal_operator(r) : collar.laplacian(r);
  }
  return r * word.coefficient.to_double();
}

Jet3d apply_operator(const OperatorPolynomial& op, const Collar& collar, const Jet3d& phi) {
  Jet3d sum = Jet3d::zero(kMaxJetOrder);
  for (const auto& w : op.words) sum += apply_operator(w, collar, phi);
  return sum;
}

double reduced_D6_one(const Collar& col) {
  const Jet3d& eta = col.eta();
  const Jet3d Neta = col.normal_operator(eta);
  const Jet3d Leta = col.laplacian(eta);
  const Jet3d t1 = col.laplacian(col.normal_operator(Neta));
  const Jet3d t2 = col.normal_operator(col.laplacian(Neta));
  const Jet3d t3 = col.normal_operator(col.normal_operator(Leta));
  const Jet3d t4 = col.laplacian(Leta);
  return (-t1.constant() - t2.constant() + t3.constant() - 8.0 * t4.constant()) / 768.0;
}

double gamma(const Chart& chart, double u, double v, int k) {
  const Collar col(chart, u, v);
  const Jet3d one(1.0);
  switch (k) {
    case 0: return -0.5 * col.eta().constant();
    case 2: return 2.0 * apply_operator(operator_D4(), col, one).constant();
    case 4: return 3.0 * apply_operator(operator_D6(), col, one).constant();
    default: throw UsageError("gamma: only k = 0, 2, 4 are implemented");
  }
}

GammaReport gamma_report(const Chart& chart, double u, double v) {
  const Collar col(chart, u, v);
  const Jet3d one(1.0);
  GammaReport r;
  r.gamma0 = -0.5 * col.eta().constant();
  r.gamma2 = 2.0 * apply_operator(operator_D4(), col, one).constant();
  r.gamma4 = 3.0 * apply_operator(operator_D6(), col, one).constant();
  r.gamma4_reduced = 3.0 * reduced_D6_one(col);
  r.divergence = divergence_residual(chart, u, v);
  r.predicted_gamma4 = 5.0 / 16.0 * r.divergence;
  r.scale = residual_scale(chart, u, v);
  return r;
}

IdentityReport identity_checks(const Chart& chart, double u, double v, const LemmaField& field) {
  const int order = 6;
  const Collar col(chart, u, v, order);
  const LocalGeometry geo = local_geometry(chart, u, v, order);
  IdentityReport rep;

  rep.technical_lhs = 2.0 * coeff_rho(col.leaf_laplacian(col.eta()), 2);
  rep.technical_rhs = 8.0 * divergence_residual(chart, u, v);

  const ChartField f = field.f ? field.f : [](const Jet2d& a, const Jet2d& b) { return sin(a) * cos(b) + 0.3 * a * b; };
  const ChartField q = field.q ? field.q : [](const Jet2d& a, const Jet2d& b) { return cosh(0.5 * a) + b * b; };
  const Jet2d U = Jet2d::variable(0, u, order), V = Jet2d::variable(1, v, order);
  const Jet2d f2 = f(U, V), q2 = q(U, V);
  const Jet3d rho = col.rho();
  Jet3d h(0.0, kMaxJetOrder);
  for (std::size_t k = 0; k < field.h.size() && static_cast<int>(k) <= kMaxJetOrder; ++k)
    h.set_coeff({0, 0, static_cast<int>(k)}, field.h[k]);
  const Jet3d phi = h + rho * col.lift(f2) + rho * rho * col.lift(q2);
  rep.lemma_lhs = 2.0 * coeff_rho(col.leaf_laplacian(phi), 2);
  const double h1 = field.h.size() > 1 ? field.h[1] : 0.0;
  const double h2 = field.h.size() > 2 ? field.h[2] : 0.0;
  // On Sigma: phi_NN = 2 h2 + 2 q and phi_N = h1 + f; delta = -div.
  const Jet2d phi_nn = 2.0 * q2 + 2.0 * h2;
  const Jet2d phi_n = f2 + h1;
  rep.lemma_rhs = surface_laplacian(geo, phi_nn).constant() -
                  4.0 * surface_divergence(geo, apply_shape_operator(geo, surface_gradient(geo, phi_n))).constant();

  // nabla_N of a tangential field Y = Y^i d_i is (d_rho Y - S Y)^i d_i in Fermi coordinates.
  const Jet3d psi = col.lift(f2) + rho * col.lift(q2) + rho * rho;
  const Vec2J3 Y = col.leaf_gradient(psi);
  const Vec2J3 SY = col.apply_shape(Y);
  const Vec2J3 Yn = col.leaf_gradient(differentiate(psi, kRhoVar));
  Eigen::Vector2d res;
  for (int i = 0; i < 2; ++i)
    res[i] = (differentiate(Y[i], kRhoVar) - SY[i]).constant() - (Yn[i] + SY[i]).constant();
  Eigen::Matrix2d g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = col.metric()[i][j].constant();
  rep.commutation_residual = std::sqrt(std::max(0.0, res.dot(g * res)));

  const Mat2J3& S = col.shape();
  const Jet3d trS2 = S[0][0] * S[0][0] + 2.0 * S[0][1] * S[1][0] + S[1][1] * S[1][1];
  const Jet1d defect = Collar::along_normal(differentiate(col.eta(), kRhoVar) - trS2 -
                                            2.0 * sigma_of(col.curvature()));
  for (int k = 0; k < defect.size(); ++k)
    rep.riccati_trace_residual = std::max(rep.riccati_trace_residual, std::abs(defect[k]));
  return rep;
}

Eigen::Matrix2d riccati_closed_form(Curvature c, const Eigen::Matrix2d& S0, double rho) {
  const double cr = cs(c, rho), sr = sn(c, rho);
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d A = cr * I - sr * S0;
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if (std::abs(A.determinant()) < 1e-12 * scale * scale)
    throw CollarTooWideError("Riccati transport reached a focal point");
  return (cr * S0 + sigma_of(c) * sr * I) * A.inverse();
}

Eigen::Matrix2d riccati_rk4(Curvature c, const Eigen::Matrix2d& S0, double rho, int steps) {
  const double sig = sigma_of(c);
  auto rhs = [sig](const Eigen::Matrix2d& S) -> Eigen::Matrix2d {
    return S * S + sig * Eigen::Matrix2d::Identity();
  };
  Eigen::Matrix2d S = S0;
  const double h = rho / steps;
  for (int i = 0; i < steps; ++i) {
    const Eigen::Matrix2d k1 = rhs(S);
    const Eigen::Matrix2d k2 = rhs(S + 0.5 * h * k1);
    const Eigen::Matrix2d k3 = rhs(S + 0.5 * h * k2);
    const Eigen::Matrix2d k4 = rhs(S + h * k3);
    S += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return S;
}

double focal_distance(Curvature c, const Eigen::Matrix2d& S0) {
  const double half = 0.5 * S0.trace();
  const double disc = std::sqrt(std::max(0.0, half * half - S0.determinant()));
  double best = std::numeric_limits<double>::infinity();
  for (double k : {half + disc, half - disc}) {
    double r = std::numeric_limits<double>::infinity();
    switch (c) {
      case Curvature::flat:
        if (k > 0) r = 1.0 / k;
        break;
      case Curvature::spherical: r = std::atan2(1.0, k); break;
      case Curvature::hyperbolic:
        if (k > 1) r = std::atanh(1.0 / k);
        break;
    }
    best = std::min(best, r);
  }
  return best;
}

void require_collar_width(Curvature c, const Eigen::Matrix2d& S0, double width) {
  const double f = focal_distance(c, S0);
  if (f <= width)
    throw CollarTooWideError("collar width " + std::to_string(width) + " reaches a focal point at rho = " +
                             std::to_string(f));
}

Jet1d riccati_mean_curvature_jet(Curvature c, const Eigen::Matrix2d& S0, int order) {
  const Jet1d r = Jet1d::variable(0, 0.0, order);
  const Jet1d cr = cs(c, r), sr = sn(c, r);
  const double sig = sigma_of(c);
  // A = cs I - sn S0, B = cs S0 + sigma sn I; eta = tr(B A^{-1}).
  Jet1d A[2][2], B[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double id = i == j ? 1.0 : 0.0;
      A[i][j] = cr * id - sr * S0(i, j);
      B[i][j] = cr * S0(i, j) + sr * (sig * id);
    }
  }
  const Jet1d det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const Jet1d inv_det = 1.0 / det;
  const Jet1d Ai[2][2] = {{A[1][1] * inv_det, -A[0][1] * inv_det}, {-A[1][0] * inv_det, A[0][0] * inv_det}};
  Jet1d tr = Jet1d::zero(order);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) tr += B[i][k] * Ai[k][i];
  return tr;
}

}  // namespace halfheat

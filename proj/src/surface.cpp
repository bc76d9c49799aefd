#include "halfheat/surface.hpp"

#include <algorithm>
#include <cmath>

namespace halfheat {
namespace {

AmbientVector<Jet2d> d(const AmbientVector<Jet2d>& x, int var) {
  AmbientVector<Jet2d> r(x.size());
  for (int k = 0; k < x.size(); ++k) r[k] = differentiate(x[k], var);
  return r;
}

double at(const Jet2d& j, int i, int k) { return derivative_at_base(j, {i, k}); }

// The chart's best jet order: analytic charts get 6, black boxes the FD limit.
int default_order(const Chart& chart) { return chart.has_jets() ? 6 : Chart::kMaxFiniteDifferenceOrder; }

}  // namespace

LocalGeometry local_geometry(const Chart& chart, double u, double v, int order) {
  if (order < 2) throw UsageError("local_geometry: need jets of order >= 2");
  LocalGeometry geo;
  geo.c = chart.curvature();
  geo.u = u;
  geo.v = v;
  geo.X = chart.jet(u, v, order);
  geo.Xu = d(geo.X, 0);
  geo.Xv = d(geo.X, 1);
  const Curvature c = geo.c;

  geo.g[0][0] = metric(c, geo.Xu, geo.Xu);
  geo.g[0][1] = metric(c, geo.Xu, geo.Xv);
  geo.g[1][0] = geo.g[0][1];
  geo.g[1][1] = metric(c, geo.Xv, geo.Xv);
  const Jet2d det = geo.g[0][0] * geo.g[1][1] - geo.g[0][1] * geo.g[0][1];
  if (!(det.constant() > kDegenerateDetG))
    throw SingularChartError("chart '" + chart.name() + "' is degenerate at (" + std::to_string(u) +
                             ", " + std::to_string(v) + ")");
  geo.sqrt_det_g = sqrt(det);
  const Jet2d inv_det = 1.0 / det;
  geo.ginv[0][0] = geo.g[1][1] * inv_det;
  geo.ginv[1][1] = geo.g[0][0] * inv_det;
  geo.ginv[0][1] = -geo.g[0][1] * inv_det;
  geo.ginv[1][0] = geo.ginv[0][1];

  geo.N = normal_direction(c, geo.X, geo.Xu, geo.Xv);
  if (chart.orientation() < 0)
    for (int k = 0; k < geo.N.size(); ++k) geo.N[k] = -geo.N[k];

  const AmbientVector<Jet2d> Xuu = d(geo.Xu, 0), Xuv = d(geo.Xu, 1), Xvv = d(geo.Xv, 1);
  geo.l[0][0] = metric(c, Xuu, geo.N);
  geo.l[0][1] = metric(c, Xuv, geo.N);
  geo.l[1][0] = geo.l[0][1];
  geo.l[1][1] = metric(c, Xvv, geo.N);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) geo.S[i][j] = geo.ginv[i][0] * geo.l[0][j] + geo.ginv[i][1] * geo.l[1][j];
  geo.eta = geo.S[0][0] + geo.S[1][1];
  geo.K = (geo.S[0][0] * geo.S[1][1] - geo.S[0][1] * geo.S[1][0]) + static_cast<double>(sigma_of(c));
  return geo;
}

FundamentalData fundamental_data(const Chart& chart, double u, double v) {
  const LocalGeometry geo = local_geometry(chart, u, v, 2);
  FundamentalData fd;
  const int n = ambient_dim(geo.c);
  fd.X = Point(n);
  fd.Xu = Point(n);
  fd.Xv = Point(n);
  fd.N = Point(n);
  for (int k = 0; k < n; ++k) {
    fd.X[k] = geo.X[k].constant();
    fd.Xu[k] = geo.Xu[k].constant();
    fd.Xv[k] = geo.Xv[k].constant();
    fd.N[k] = geo.N[k].constant();
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      fd.g(i, j) = geo.g[i][j].constant();
      fd.l(i, j) = geo.l[i][j].constant();
      fd.S(i, j) = geo.S[i][j].constant();
    }
  }
  fd.K = geo.K.constant();
  fd.eta = geo.eta.constant();
  const double half = fd.eta / 2.0;
  const double disc = std::sqrt(std::max(0.0, half * half - fd.S.determinant()));
  fd.k_principal = Eigen::Vector2d(half + disc, half - disc);
  return fd;
}

Vec2J surface_gradient(const LocalGeometry& geo, const Jet2d& phi) {
  const Jet2d pu = differentiate(phi, 0), pv = differentiate(phi, 1);
  return {geo.ginv[0][0] * pu + geo.ginv[0][1] * pv, geo.ginv[1][0] * pu + geo.ginv[1][1] * pv};
}

Jet2d surface_divergence(const LocalGeometry& geo, const Vec2J& field) {
  const Jet2d flux = differentiate(geo.sqrt_det_g * field[0], 0) + differentiate(geo.sqrt_det_g * field[1], 1);
  return flux / geo.sqrt_det_g;
}

Jet2d surface_laplacian(const LocalGeometry& geo, const Jet2d& phi) {
  return -surface_divergence(geo, surface_gradient(geo, phi));
}

Vec2J apply_shape_operator(const LocalGeometry& geo, const Vec2J& field) {
  return {geo.S[0][0] * field[0] + geo.S[0][1] * field[1], geo.S[1][0] * field[0] + geo.S[1][1] * field[1]};
}

TangentialReport tangential_calculus(const Chart& chart, double u, double v, const ChartField& phi) {
  const int order = default_order(chart);
  const LocalGeometry geo = local_geometry(chart, u, v, order);
  const Jet2d f = phi(Jet2d::variable(0, u, order), Jet2d::variable(1, v, order));
  const Vec2J grad = surface_gradient(geo, f);
  TangentialReport rep;
  rep.gradient = Eigen::Vector2d(grad[0].constant(), grad[1].constant());
  rep.divergence = surface_divergence(geo, grad).constant();
  rep.laplacian = -rep.divergence;
  return rep;
}

double divergence_residual(const Chart& chart, double u, double v) {
  const LocalGeometry geo = local_geometry(chart, u, v, default_order(chart));
  return surface_divergence(geo, apply_shape_operator(geo, surface_gradient(geo, geo.K))).constant();
}

double residual_scale(const Chart& chart, double u, double v) {
  const FundamentalData fd = fundamental_data(chart, u, v);
  const double s2 = fd.k_principal.squaredNorm();
  return std::max({1.0, std::abs(fd.K), s2});
}

double brioschi_curvature(const Chart& chart, double u, double v) {
  const LocalGeometry geo = local_geometry(chart, u, v, std::min(4, default_order(chart)));
  const Jet2d &E = geo.g[0][0], &F = geo.g[0][1], &G = geo.g[1][1];
  const double e = E.constant(), f = F.constant(), g = G.constant();
  const double Eu = at(E, 1, 0), Ev = at(E, 0, 1), Fu = at(F, 1, 0), Fv = at(F, 0, 1);
  const double Gu = at(G, 1, 0), Gv = at(G, 0, 1);
  const double Evv = at(E, 0, 2), Fuv = at(F, 1, 1), Guu = at(G, 2, 0);
  Eigen::Matrix3d A, B;
  A << -Evv / 2 + Fuv - Guu / 2, Eu / 2, Fu - Ev / 2,
       Fv - Gu / 2, e, f,
       Gv / 2, f, g;
  B << 0, Ev / 2, Gu / 2,
       Ev / 2, e, f,
       Gu / 2, f, g;
  const double w = e * g - f * f;
  return (A.determinant() - B.determinant()) / (w * w);
}

IsothermalDiagnostics isothermal_diagnostics(const Chart& chart, double u, double v) {
  const LocalGeometry geo = local_geometry(chart, u, v, std::min(4, default_order(chart)));
  const Jet2d& E = geo.g[0][0];
  IsothermalDiagnostics diag;
  diag.E = E.constant();
  diag.F_residual = std::abs(geo.g[0][1].constant()) / diag.E;
  diag.G_residual = std::abs(geo.g[1][1].constant() - diag.E) / diag.E;
  diag.l_diagonal_residual =
      std::max(std::abs(geo.l[0][0].constant()), std::abs(geo.l[1][1].constant())) / diag.E;
  diag.l_offdiag = geo.l[0][1].constant();
  diag.E_identity = diag.E * at(E, 1, 1) - 4.0 * at(E, 1, 0) * at(E, 0, 1);
  diag.Q_uv = at(pow(E, -3.0), 1, 1);
  const Jet2d logE = log(E);
  const double lap_flat = -(at(logE, 2, 0) + at(logE, 0, 2));
  diag.logE_pde_residual = lap_flat - 2.0 * sigma_of(geo.c) * diag.E + 2.0 / diag.E;
  return diag;
}

RulingCheck geodesic_ruling_check(const Chart& chart, CoordinateLine line, double c,
                                  const std::vector<double>& samples) {
  const Curvature cv = chart.curvature();
  const double sig = sigma_of(cv);
  // Index of the running coordinate.
  const int a = line == CoordinateLine::u_line ? 0 : 1;
  RulingCheck worst;
  for (double s : samples) {
    const double u = line == CoordinateLine::u_line ? s : c;
    const double v = line == CoordinateLine::u_line ? c : s;
    const LocalGeometry geo = local_geometry(chart, u, v, std::min(3, default_order(chart)));
    const int n = ambient_dim(cv);
    Point T(n), Tb(n), acc(n), X(n);
    const AmbientVector<Jet2d>& Xa = a == 0 ? geo.Xu : geo.Xv;
    const AmbientVector<Jet2d>& Xb = a == 0 ? geo.Xv : geo.Xu;
    for (int k = 0; k < n; ++k) {
      T[k] = Xa[k].constant();
      Tb[k] = Xb[k].constant();
      acc[k] = derivative_at_base(Xa[k], a == 0 ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1});
      X[k] = geo.X[k].constant();
    }
    const double speed2 = metric(cv, T, T);

    // Christoffel symbols Gamma^k_aa from the metric jets.
    auto gd = [&](int i, int j, int var) { return derivative_at_base(geo.g[i][j], var == 0 ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1}); };
    double gamma[2];
    for (int k = 0; k < 2; ++k) {
      double s_k = 0.0;
      for (int l = 0; l < 2; ++l) {
        const double christoffel_first = gd(a, l, a) - 0.5 * gd(a, a, l);  // Gamma_{aa,l}
        s_k += geo.ginv[k][l].constant() * christoffel_first;
      }
      gamma[k] = s_k;
    }
    const Point cov = gamma[0] * (a == 0 ? T : Tb) + gamma[1] * (a == 0 ? Tb : T);
    Point nrm = Tb - (metric(cv, Tb, T) / speed2) * T;
    nrm /= std::sqrt(metric(cv, nrm, nrm));
    const double kg = metric(cv, cov, nrm) / speed2;
    const double asym = geo.l[a][a].constant() / speed2;

    Point dcov = acc + sig * speed2 * X;
    dcov -= (metric(cv, dcov, T) / speed2) * T;
    const double amb = std::sqrt(std::max(0.0, metric(cv, dcov, dcov))) / speed2;

    worst.geodesic_curvature = std::max(worst.geodesic_curvature, std::abs(kg));
    worst.asymptotic_residual = std::max(worst.asymptotic_residual, std::abs(asym));
    worst.ambient_geodesic_residual = std::max(worst.ambient_geodesic_residual, amb);
  }
  return worst;
}

}  // namespace halfheat

#pragma once

// Surface calculus on a chart, evaluated through jets expanded at a point.
// Conventions: S = g^{-1} l with l_ij = metric(X_ij, N), so S = -dN and a
// convex ball boundary with inner normal has eta > 0; the Laplacian is the
// positive one, lap = -div grad.

#include <Eigen/Core>

#include <array>
#include <functional>
#include <vector>

#include "halfheat/chart.hpp"

namespace halfheat {

using Mat2J = std::array<std::array<Jet2d, 2>, 2>;
using Vec2J = std::array<Jet2d, 2>;

struct FundamentalData {
  Point X, Xu, Xv, N;
  Eigen::Matrix2d g, l, S;
  double K = 0.0;
  double eta = 0.0;
  Eigen::Vector2d k_principal;
};

// Jet-valued geometry of the chart around one point. With X of order m, the
// first form is exact to order m-1, the second form and S to order m-2.
struct LocalGeometry {
  Curvature c = Curvature::flat;
  double u = 0.0, v = 0.0;
  AmbientVector<Jet2d> X, Xu, Xv, N;
  Mat2J g, ginv, l, S;
  Jet2d sqrt_det_g, K, eta;
};

inline constexpr double kDegenerateDetG = 1e-14;

LocalGeometry local_geometry(const Chart& chart, double u, double v, int order);
FundamentalData fundamental_data(const Chart& chart, double u, double v);

// Tangential operators on jets expanded at the geometry's base point.
Vec2J surface_gradient(const LocalGeometry& geo, const Jet2d& phi);
Jet2d surface_divergence(const LocalGeometry& geo, const Vec2J& field);
Jet2d surface_laplacian(const LocalGeometry& geo, const Jet2d& phi);
Vec2J apply_shape_operator(const LocalGeometry& geo, const Vec2J& field);

// A scalar field given as a function of the chart coordinates.
using ChartField = std::function<Jet2d(const Jet2d& u, const Jet2d& v)>;

struct TangentialReport {
  Eigen::Vector2d gradient;  // contravariant components g^{ij} d_j phi
  double laplacian = 0.0;    // positive Laplace-Beltrami
  double divergence = 0.0;   // of the gradient field, = -laplacian
};

TangentialReport tangential_calculus(const Chart& chart, double u, double v, const ChartField& phi);

// div(S grad K) at (u, v).
double divergence_residual(const Chart& chart, double u, double v);
// Local scale max(1, |K|, |S|^2) used to normalize "is zero" assertions.
double residual_scale(const Chart& chart, double u, double v);

// Intrinsic (metric-only) Gauss curvature from the Brioschi formula.
double brioschi_curvature(const Chart& chart, double u, double v);

struct IsothermalDiagnostics {
  double E = 0.0;
  double F_residual = 0.0;          // |F| / E
  double G_residual = 0.0;          // |E - G| / E
  double l_diagonal_residual = 0.0; // max(|l11|, |l22|) / E: asymptotic coordinate lines
  double l_offdiag = 0.0;
  double E_identity = 0.0;          // E E_uv - 4 E_u E_v
  double Q_uv = 0.0;                // (E^{-3})_uv
  double logE_pde_residual = 0.0;   // lap_flat log E - 2 sigma E + 2/E, lap_flat = -d_uu - d_vv
};

IsothermalDiagnostics isothermal_diagnostics(const Chart& chart, double u, double v);

enum class CoordinateLine { u_line, v_line };  // u_line: v = c fixed, u varies

struct RulingCheck {
  double geodesic_curvature = 0.0;
  double asymptotic_residual = 0.0;
  double ambient_geodesic_residual = 0.0;
};

// Worst residuals over the sample parameters along the coordinate line.
RulingCheck geodesic_ruling_check(const Chart& chart, CoordinateLine line, double c,
                                  const std::vector<double>& samples);

}  // namespace halfheat

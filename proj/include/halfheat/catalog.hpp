#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "halfheat/chart.hpp"
#include "halfheat/spaceform.hpp"
#include "halfheat/surface.hpp"

namespace halfheat {

// A fixture surface Sigma with its chart, a side function (side > 0 on the
// domain Omega_+, zero on Sigma) and, where known, the isometries used by the
// symmetry argument: a flow T_beta with T_beta(X(u,v)) = X(u+beta, v), a swap
// Psi exchanging the two sides, and for each point of Sigma an element of the
// flow group agreeing with Psi there.
struct NamedSurface {
  std::string name;
  Curvature curvature = Curvature::flat;
  double alpha = 1.0;
  Chart chart;
  std::optional<Chart> asymptotic_chart;  // isothermal, asymptotic coordinate lines
  ChartDomain sample_box;                 // region used for grid sweeps
  bool half_domain = false;
  bool embedded = true;
  bool minimal = true;
  bool totally_geodesic = false;
  std::optional<CoordinateLine> ruling;   // coordinate lines that are geodesics of M

  std::function<double(const Point&)> side_fn;
  std::function<Isometry(double)> flow;
  std::optional<Isometry> swap;
  std::function<std::pair<double, double>(double, double)> swap_chart;  // Psi(X(u,v)) = X(swap_chart(u,v))
  std::function<Isometry(double, double)> witness;

  // Refuses when the surface does not bound a domain.
  double side(const Point& p) const;
  void require_domain() const;
  bool has_symmetries() const { return static_cast<bool>(flow) && swap.has_value(); }
};

inline constexpr double kOnSurfaceTol = 1e-9;

std::vector<std::string> fixture_names();
NamedSurface make_fixture(const std::string& name, double alpha = 0.4);
// The default list: every fixture with its canonical parameter.
std::vector<NamedSurface> fixtures();

NamedSurface euclidean_plane();
NamedSurface right_helicoid();
NamedSurface catenoid();
NamedSurface round_sphere(double radius);
NamedSurface hyperbolic_plane();
NamedSurface hyperbolic_helicoid(double alpha);
NamedSurface great_sphere();
NamedSurface clifford_torus();
NamedSurface spherical_helicoid(double alpha);

// Sets the chart orientation so that the normal points into side > 0.
void orient_towards_positive_side(NamedSurface& s);

// Point residuals are relative to max(1, |x|).
struct SymmetryReport {
  std::string surface;
  double flow_chart_residual = 0.0;     // |T_beta(X(u,v)) - X(u+beta,v)|
  double swap_chart_residual = 0.0;     // |Psi(X(u,v)) - X(swap(u,v))|
  double witness_residual = 0.0;        // |Psi(x) - T(x)| on Sigma
  double side_on_surface = 0.0;         // max |side(X(u,v))|
  double isometry_form_defect = 0.0;
  int random_points = 0;
  int flow_side_violations = 0;         // side(T p) * side(p) <= 0
  int swap_side_violations = 0;         // side(Psi p) * side(p) >= 0
  bool passed = false;
};

// Grid identities on an n x n grid of the sample box, plus side
// preservation / exchange on random off-surface points (deterministic seed).
// Throws FixtureDefectError if an identity fails beyond tol.
SymmetryReport symmetry_check(const NamedSurface& s, int grid = 10, double beta = 0.7,
                              int random_points = 1000, unsigned seed = 12345, double tol = 1e-10);

// A random model point in a bounded region around the fixture.
Point random_model_point(const NamedSurface& s, std::mt19937_64& rng);

}  // namespace halfheat

#pragma once

#include <map>
#include <mutex>

#include "halfheat/catalog.hpp"
#include "halfheat/density.hpp"

namespace halfheat {

// Heat kernel p(t, r) of the space form (Laplacian with positive spectrum).
// t <= 0 or r < 0 throws UsageError; on the sphere r must lie in [0, pi].
double heat_kernel(Curvature c, double t, double r);

// p(t, r) |dB_r|: the radial mass density. Regular at r = pi on the sphere.
double radial_heat_density(Curvature c, double t, double r);

// Radius beyond which the radial mass is negligible (pi on the sphere).
double kernel_radius(Curvature c, double t);

// int_0^R radial_heat_density dr; equals 1 up to quadrature error.
double kernel_mass(Curvature c, double t);

// sigma(r, x) memoised by radius for one surface and base point.
class DensityCache {
 public:
  DensityCache(const NamedSurface& s, Point x, DensityOptions opt = {});
  double operator()(double r);
  const Point& point() const { return x_; }
  std::size_t size() const;
  std::size_t hits() const;

 private:
  const NamedSurface& s_;
  Point x_;
  DensityOptions opt_;
  mutable std::mutex mu_;
  std::map<double, double> memo_;
  std::size_t hits_ = 0;
};

// The radial integral cannot resolve below the noise of sigma, so abs_tol
// should stay well above density.tol.
struct TemperatureOptions {
  DensityOptions density{64, DensityMode::refined, 1e-6};
  double abs_tol = 1e-5;
};

// Tight settings for surfaces whose sphere fractions are smooth in the
// azimuth (totally geodesic planes).
inline TemperatureOptions precise_temperature_options() { return {{64, DensityMode::refined, 1e-12}, 1e-11}; }

// u_C(t, x) = int p(t, r) |dB_r| sigma(r, x) dr for any model point x.
double cauchy_temperature(const NamedSurface& s, double t, const Point& x, const TemperatureOptions& opt = {});
double cauchy_temperature(DensityCache& cache, Curvature c, double t, const TemperatureOptions& opt = {});

// Half-space oracles; rho is the signed distance into side > 0.
double halfspace_cauchy(double t, double rho);
double halfspace_dirichlet(double t, double rho);
double halfspace_flux(double t);  // d/drho u_D at rho = 0

// Dirichlet temperature of a totally geodesic plane by the method of images,
// u_C(x) - u_C(Psi x). Requires a fixture whose swap is the reflection.
double image_dirichlet_temperature(const NamedSurface& s, double t, const Point& x,
                                   const TemperatureOptions& opt = {});

// Normal derivative of the image Dirichlet temperature at a point of Sigma,
// by a symmetric 4-point stencil along the unit normal.
double image_dirichlet_flux(const NamedSurface& s, double t, double u, double v, double h = 1e-3,
                            const TemperatureOptions& opt = {});

// |p(2t, d) - int p(t, d(x,z)) p(t, d(z,y)) dz| for points at distance d.
double semigroup_residual(Curvature c, double t, double d);

// u_C on the right helicoid by slicing in z: each horizontal slice of the
// domain is a half-plane, so u_C reduces to a one-dimensional integral.
double helicoid_slice_temperature(double t, const Point& x);

}  // namespace halfheat

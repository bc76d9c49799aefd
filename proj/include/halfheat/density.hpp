#pragma once

#include <array>
#include <string>
#include <vector>

#include "halfheat/catalog.hpp"

namespace halfheat {

enum class DensityMode {
  // Per azimuth, locate the polar angles where the geodesic sphere crosses
  // Sigma and integrate sin(theta) exactly between crossings; the azimuth is
  // integrated adaptively.
  refined,
  // Plain product rule: Gauss-Legendre in cos(theta) x uniform azimuth,
  // weight 1 / 1/2 / 0 by side class.
  classify
};

struct DensityOptions {
  int order = 64;       // polar nodes (classify: azimuth uses 2 * order points)
  DensityMode mode = DensityMode::refined;
  double tol = 1e-10;   // absolute tolerance of the adaptive azimuth (refined)
};

// Fraction of the geodesic sphere of radius r about x lying in side > 0. Any
// model point x is accepted.
double sphere_fraction(const NamedSurface& s, const Point& x, double r, const DensityOptions& opt = {});

// The density function: x must lie on Sigma (|side| < 1e-9); on the sphere r
// is restricted to (0, pi - 0.1].
double density(const NamedSurface& s, const Point& x, double r, const DensityOptions& opt = {});

struct DensityProfile {
  std::string surface;
  Point x;
  std::vector<double> r;
  std::vector<double> sigma;
  std::vector<double> err;  // |sigma(order) - sigma(2 order)|
  int order = 0;
};

DensityProfile density_profile(const NamedSurface& s, const Point& x, const std::vector<double>& radii,
                               const DensityOptions& opt = {});

struct ExpansionFit {
  double slope = 0.0;        // p in sigma - 1/2 ~ c r^p
  double coefficient = 0.0;  // c, signed
  double residual = 0.0;     // rms of the log-log regression
  bool inconclusive = false;
};

ExpansionFit expansion_fit(const DensityProfile& profile, double max_residual = 0.05);

struct BallSplit {
  double vol_plus = 0.0;
  double vol_minus = 0.0;
  double ball_volume = 0.0;
};

BallSplit ball_split(const NamedSurface& s, const Point& x, double R, const DensityOptions& opt = {},
                     int radial_nodes = 24);

// Volume of a geodesic ball.
double ball_volume(Curvature c, double R);

// Orthonormal frame (e1, e2, e3) of the tangent space at x with e3 along the
// side gradient.
std::array<Point, 3> tangent_frame(const NamedSurface& s, const Point& x);

}  // namespace halfheat

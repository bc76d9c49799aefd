#include "halfheat/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "halfheat/errors.hpp"
#include "halfheat/quadrature.hpp"

namespace halfheat {

namespace {

constexpr double kPi = std::numbers::pi;

Point side_gradient(const NamedSurface& s, const Point& x) {
  const Curvature c = s.curvature;
  const int n = ambient_dim(c);
  Point g(n);
  const double h = 1e-6 * std::max(1.0, x.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    Point a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (s.side(a) - s.side(b)) / (2.0 * h);
  }
  if (c == Curvature::hyperbolic) g[0] = -g[0];  // raise the index with -form
  return project_to_tangent(c, x, g);
}

// Metric Gram-Schmidt of v against the given tangent vectors; returns the
// remaining length.
double orthonormalize(Curvature c, Point& v, const std::vector<Point>& basis) {
  for (const Point& e : basis) v -= metric(c, v, e) * e;
  const double len = std::sqrt(std::max(0.0, metric(c, v, v)));
  if (len > 0.0) v /= len;
  return len;
}

void check_radius(Curvature c, double r, const char* who) {
  if (!(r > 0.0) || !std::isfinite(r)) throw UsageError(std::string(who) + ": radius must be positive");
  if (c == Curvature::spherical && r >= kPi)
    throw UsageError(std::string(who) + ": radius must be below pi on the sphere");
}

struct SphereParam {
  Curvature c;
  Point center;   // cs(r) x
  std::array<Point, 3> e;  // scaled by sn(r)

  Point at(double theta, double phi) const {
    const double st = std::sin(theta);
    return center + (st * std::cos(phi)) * e[0] + (st * std::sin(phi)) * e[1] + std::cos(theta) * e[2];
  }
};

SphereParam sphere_param(const NamedSurface& s, const Point& x, double r) {
  const auto frame = tangent_frame(s, x);
  const double snr = sn(s.curvature, r);
  SphereParam sp{s.curvature, cs(s.curvature, r) * x, {snr * frame[0], snr * frame[1], snr * frame[2]}};
  if (s.curvature == Curvature::flat) sp.center = x;
  return sp;
}

double refined_fraction(const NamedSurface& s, const SphereParam& sp, const DensityOptions& opt) {
  const QuadratureRule rule = gauss_legendre(opt.order, 0.0, kPi);
  std::vector<double> theta;
  theta.reserve(opt.order + 2);
  theta.push_back(0.0);
  theta.insert(theta.end(), rule.nodes.begin(), rule.nodes.end());
  theta.push_back(kPi);

  // Inside measure of one meridian, int sin(theta) over side > 0.
  std::vector<double> f(theta.size());
  const auto meridian = [&](double phi) {
    const auto side_at = [&](double t) { return s.side(sp.at(t, phi)); };
    for (std::size_t k = 0; k < theta.size(); ++k) f[k] = side_at(theta[k]);
    double inside = 0.0;
    for (std::size_t k = 0; k + 1 < theta.size(); ++k) {
      const double a = theta[k], b = theta[k + 1];
      const bool pa = f[k] > 0.0, pb = f[k + 1] > 0.0;
      if (pa && pb) {
        inside += std::cos(a) - std::cos(b);
      } else if (pa != pb) {
        const double t = find_root(side_at, a, b, f[k], f[k + 1], 1e-13);
        inside += pa ? std::cos(a) - std::cos(t) : std::cos(t) - std::cos(b);
      }
    }
    return inside;
  };
  // The meridian measure has square-root kinks where the sphere touches
  // Sigma, so the azimuth is integrated adaptively on fixed panels.
  constexpr int kPanels = 16;
  double total = 0.0;
  for (int j = 0; j < kPanels; ++j) {
    const double a = 2.0 * kPi * j / kPanels, b = 2.0 * kPi * (j + 1) / kPanels;
    total += integrate_adaptive(meridian, a, b, opt.tol / kPanels, 0.0, 400).value;
  }
  return total / (4.0 * kPi);
}

double classified_fraction(const NamedSurface& s, const SphereParam& sp, int order) {
  const QuadratureRule rule = gauss_legendre(order, -1.0, 1.0);
  const int m = 2 * order;
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    const double theta = std::acos(rule.nodes[i]);
    double ring = 0.0;
    for (int j = 0; j < m; ++j) {
      const double v = s.side(sp.at(theta, 2.0 * kPi * (j + 0.5) / m));
      ring += v > kOnSurfaceTol ? 1.0 : (v < -kOnSurfaceTol ? 0.0 : 0.5);
    }
    total += rule.weights[i] * ring / m;
  }
  return total / 2.0;
}

}  // namespace

std::array<Point, 3> tangent_frame(const NamedSurface& s, const Point& x) {
  const Curvature c = s.curvature;
  require_on_model(c, x, "tangent_frame");
  const int n = ambient_dim(c);
  std::vector<Point> basis;
  Point e3 = side_gradient(s, x);
  if (orthonormalize(c, e3, {}) < 1e-12) {
    e3 = Point();  // flat side gradient: any direction will do
  } else {
    basis.push_back(e3);
  }
  // Remaining directions from the coordinate axes, best conditioned first.
  std::vector<std::pair<double, Point>> candidates;
  for (int i = 0; i < n; ++i) {
    Point v = project_to_tangent(c, x, Point::Unit(n, i));
    for (const Point& e : basis) v -= metric(c, v, e) * e;
    candidates.emplace_back(std::sqrt(std::max(0.0, metric(c, v, v))), Point::Unit(n, i));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& cand : candidates) {
    if (basis.size() == 3) break;
    Point v = project_to_tangent(c, x, cand.second);
    if (orthonormalize(c, v, basis) > 1e-8) basis.push_back(v);
  }
  if (basis.size() != 3) throw DomainError("tangent_frame: could not complete a frame");
  if (e3.size() == 0) return {basis[0], basis[1], basis[2]};
  return {basis[1], basis[2], basis[0]};
}

double sphere_fraction(const NamedSurface& s, const Point& x, double r, const DensityOptions& opt) {
  s.require_domain();
  check_radius(s.curvature, r, "sphere_fraction");
  if (opt.order < 2) throw UsageError("sphere_fraction: order must be at least 2");
  const SphereParam sp = sphere_param(s, x, r);
  return opt.mode == DensityMode::refined ? refined_fraction(s, sp, opt)
                                          : classified_fraction(s, sp, opt.order);
}

double density(const NamedSurface& s, const Point& x, double r, const DensityOptions& opt) {
  s.require_domain();
  require_on_model(s.curvature, x, "density");
  if (std::abs(s.side(x)) > kOnSurfaceTol) throw UsageError("density: point is not on the surface");
  if (s.curvature == Curvature::spherical && r > kPi - 0.1)
    throw UsageError("density: on the sphere the radius is limited to pi - 0.1");
  return sphere_fraction(s, x, r, opt);
}

DensityProfile density_profile(const NamedSurface& s, const Point& x, const std::vector<double>& radii,
                               const DensityOptions& opt) {
  DensityProfile p;
  p.surface = s.name;
  p.x = x;
  p.order = opt.order;
  DensityOptions fine = opt;
  fine.order = 2 * opt.order;
  for (double r : radii) {
    const double a = density(s, x, r, opt);
    const double b = density(s, x, r, fine);
    p.r.push_back(r);
    p.sigma.push_back(a);
    p.err.push_back(std::abs(a - b));
  }
  return p;
}

ExpansionFit expansion_fit(const DensityProfile& profile, double max_residual) {
  ExpansionFit fit;
  std::vector<double> lx, ly;
  int sign = 0;
  bool mixed = false;
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const double d = profile.sigma[i] - 0.5;
    if (std::abs(d) <= 10.0 * profile.err[i] + 1e-13) continue;
    const int sg = d > 0 ? 1 : -1;
    if (sign != 0 && sg != sign) mixed = true;
    sign = sg;
    lx.push_back(std::log(profile.r[i]));
    ly.push_back(std::log(std::abs(d)));
  }
  if (lx.size() < 3 || mixed) {
    fit.inconclusive = true;
    return fit;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(lx.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = lx[i];
    y[i] = ly[i];
  }
  const Eigen::Vector2d beta = A.colPivHouseholderQr().solve(y);
  fit.slope = beta[1];
  fit.coefficient = sign * std::exp(beta[0]);
  fit.residual = std::sqrt((A * beta - y).squaredNorm() / n);
  fit.inconclusive = fit.residual > max_residual;
  return fit;
}

double ball_volume(Curvature c, double R) {
  switch (c) {
    case Curvature::spherical: return kPi * (2.0 * R - std::sin(2.0 * R));
    case Curvature::hyperbolic: return kPi * (std::sinh(2.0 * R) - 2.0 * R);
    default: return 4.0 * kPi * R * R * R / 3.0;
  }
}

BallSplit ball_split(const NamedSurface& s, const Point& x, double R, const DensityOptions& opt,
                     int radial_nodes) {
  check_radius(s.curvature, R, "ball_split");
  const QuadratureRule rule = gauss_legendre(radial_nodes, 0.0, R);
  BallSplit out;
  for (int i = 0; i < radial_nodes; ++i) {
    const double r = rule.nodes[i];
    const double area = rule.weights[i] * sphere_area(s.curvature, r);
    const double f = sphere_fraction(s, x, r, opt);
    out.vol_plus += area * f;
    out.vol_minus += area * (1.0 - f);
  }
  out.ball_volume = ball_volume(s.curvature, R);
  return out;
}

}  // namespace halfheat

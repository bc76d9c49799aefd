#include "halfheat/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "halfheat/errors.hpp"
#include "halfheat/quadrature.hpp"
#include "halfheat/surface.hpp"

namespace halfheat {

namespace {

constexpr double kPi = std::numbers::pi;

void check_args(Curvature c, double t, double r, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) throw UsageError(std::string(who) + ": time must be positive");
  if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError(std::string(who) + ": radius must be non-negative");
  if (c == Curvature::spherical && r > kPi) throw UsageError(std::string(who) + ": radius beyond pi on the sphere");
}

// sum_k k sin(k r) e^{-(k^2-1) t} / (2 pi^2) divided by sin r, and the
// image form e^t (4 pi t)^{-3/2} sum_n (r + 2 pi n) e^{-(r+2 pi n)^2/4t} / sin r.
// Both are written as numerator / sin r; at sin r = 0 the ratio of
// derivatives is used.
double sphere_kernel(double t, double r) {
  const bool eigen = t >= 1.0;
  double num = 0.0, dnum = 0.0;
  if (eigen) {
    const int kmax = 3 + static_cast<int>(std::sqrt(60.0 / t));
    for (int k = 1; k <= kmax; ++k) {
      const double w = k * std::exp(-(k * k - 1.0) * t) / (2.0 * kPi * kPi);
      num += w * std::sin(k * r);
      dnum += w * k * std::cos(k * r);
    }
  } else {
    const double pref = std::exp(t) * std::pow(4.0 * kPi * t, -1.5);
    const int nmax = 2 + static_cast<int>((std::sqrt(240.0 * t) + kPi) / (2.0 * kPi));
    for (int n = -nmax; n <= nmax; ++n) {
      const double s = r + 2.0 * kPi * n;
      const double e = std::exp(-s * s / (4.0 * t));
      num += pref * s * e;
      dnum += pref * e * (1.0 - s * s / (2.0 * t));
    }
  }
  const double sr = std::sin(r);
  if (std::abs(sr) < 1e-7) return dnum / std::cos(r);
  return num / sr;
}

}  // namespace

double heat_kernel(Curvature c, double t, double r) {
  check_args(c, t, r, "heat_kernel");
  switch (c) {
    case Curvature::flat: return std::pow(4.0 * kPi * t, -1.5) * std::exp(-r * r / (4.0 * t));
    case Curvature::hyperbolic: {
      const double ratio = r < 1e-8 ? 1.0 : r / std::sinh(r);
      return std::pow(4.0 * kPi * t, -1.5) * ratio * std::exp(-t - r * r / (4.0 * t));
    }
    case Curvature::spherical: return sphere_kernel(t, r);
  }
  return 0.0;
}

double radial_heat_density(Curvature c, double t, double r) {
  check_args(c, t, r, "radial_heat_density");
  if (c == Curvature::hyperbolic && r > 1.0) {
    // r sinh r e^{-t - r^2/4t} without overflowing sinh
    const double log_val = std::log(r) + r + std::log1p(-std::exp(-2.0 * r)) - std::log(2.0) - t -
                           r * r / (4.0 * t);
    return 4.0 * kPi * std::pow(4.0 * kPi * t, -1.5) * std::exp(log_val);
  }
  const double s = sn(c, r);
  return 4.0 * kPi * s * s * heat_kernel(c, t, r);
}

double kernel_radius(Curvature c, double t) {
  if (!(t > 0.0)) throw UsageError("kernel_radius: time must be positive");
  switch (c) {
    case Curvature::spherical: return kPi;
    case Curvature::hyperbolic: return 2.0 * t + 13.0 * std::sqrt(t);
    default: return 13.0 * std::sqrt(t);
  }
}

double kernel_mass(Curvature c, double t) {
  const double R = kernel_radius(c, t);
  return integrate_adaptive([&](double r) { return radial_heat_density(c, t, r); }, 0.0, R, 1e-13, 1e-13)
      .value;
}

DensityCache::DensityCache(const NamedSurface& s, Point x, DensityOptions opt)
    : s_(s), x_(std::move(x)), opt_(opt) {
  s_.require_domain();
  require_on_model(s_.curvature, x_, "DensityCache");
}

double DensityCache::operator()(double r) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memo_.find(r); it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  const double v = sphere_fraction(s_, x_, r, opt_);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(r, v);
  return v;
}

std::size_t DensityCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

std::size_t DensityCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

double cauchy_temperature(DensityCache& cache, Curvature c, double t, const TemperatureOptions& opt) {
  if (!(t > 0.0)) throw UsageError("cauchy_temperature: time must be positive");
  const double R = kernel_radius(c, t);
  const auto f = [&](double r) { return r > 0.0 ? radial_heat_density(c, t, r) * cache(r) : 0.0; };
  return integrate_adaptive(f, 0.0, R, opt.abs_tol, 0.0).value;
}

double cauchy_temperature(const NamedSurface& s, double t, const Point& x, const TemperatureOptions& opt) {
  DensityCache cache(s, x, opt.density);
  return cauchy_temperature(cache, s.curvature, t, opt);
}

double halfspace_cauchy(double t, double rho) {
  if (!(t > 0.0)) throw UsageError("halfspace_cauchy: time must be positive");
  return 0.5 * std::erfc(-rho / (2.0 * std::sqrt(t)));
}

double halfspace_dirichlet(double t, double rho) {
  if (!(t > 0.0)) throw UsageError("halfspace_dirichlet: time must be positive");
  return std::erf(rho / (2.0 * std::sqrt(t)));
}

double halfspace_flux(double t) {
  if (!(t > 0.0)) throw UsageError("halfspace_flux: time must be positive");
  return 1.0 / std::sqrt(kPi * t);
}

double image_dirichlet_temperature(const NamedSurface& s, double t, const Point& x, const TemperatureOptions& opt) {
  if (!s.totally_geodesic || !s.swap)
    throw UsageError("image_dirichlet_temperature: needs a totally geodesic fixture with its reflection");
  return cauchy_temperature(s, t, x, opt) - cauchy_temperature(s, t, s.swap->apply(x), opt);
}

double image_dirichlet_flux(const NamedSurface& s, double t, double u, double v, double h,
                            const TemperatureOptions& opt) {
  const FundamentalData fd = fundamental_data(s.chart, u, v);
  const auto at = [&](double rho) {
    return image_dirichlet_temperature(s, t, geodesic(s.curvature, fd.X, fd.N, rho), opt);
  };
  return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
}

double semigroup_residual(Curvature c, double t, double d) {
  check_args(c, t, d, "semigroup_residual");
  const double R = kernel_radius(c, t);
  const double scale = heat_kernel(c, 2.0 * t, d);
  const auto third_side = [&](double r, double psi) {
    switch (c) {
      case Curvature::spherical:
        return std::acos(std::clamp(std::cos(r) * std::cos(d) + std::sin(r) * std::sin(d) * std::cos(psi), -1.0, 1.0));
      case Curvature::hyperbolic:
        return std::acosh(std::max(1.0, std::cosh(r) * std::cosh(d) - std::sinh(r) * std::sinh(d) * std::cos(psi)));
      default: return std::sqrt(std::max(0.0, r * r + d * d - 2.0 * r * d * std::cos(psi)));
    }
  };
  const auto shell = [&](double r) {
    if (r <= 0.0) return 0.0;
    const auto inner = [&](double psi) { return heat_kernel(c, t, third_side(r, psi)) * std::sin(psi); };
    const double ring = integrate_adaptive(inner, 0.0, kPi, 1e-14 * scale, 1e-11).value;
    return 0.5 * radial_heat_density(c, t, r) * ring;
  };
  const double conv = integrate_adaptive(shell, 0.0, R, 1e-13 * scale, 1e-10).value;
  return std::abs(conv - scale) / scale;
}

double helicoid_slice_temperature(double t, const Point& x) {
  if (!(t > 0.0)) throw UsageError("helicoid_slice_temperature: time must be positive");
  if (x.size() != 3) throw UsageError("helicoid_slice_temperature: expects a point of R^3");
  const double w = 14.0 * std::sqrt(t);
  const auto f = [&](double z) {
    const double dz = z - x[2];
    const double gauss = std::exp(-dz * dz / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
    const double dist = x[0] * std::sin(z) - x[1] * std::cos(z);
    return gauss * halfspace_cauchy(t, dist);
  };
  return integrate_adaptive(f, x[2] - w, x[2] + w, 1e-14, 1e-13).value;
}

}  // namespace halfheat

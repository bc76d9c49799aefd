#include "halfheat/chart.hpp"

#include <algorithm>
#include <cmath>

#include "halfheat/quadrature.hpp"

namespace halfheat {
namespace {

constexpr int kHalfWidth = 4;

// Step per derivative order; wider for higher derivatives to balance
// truncation against cancellation.
double fd_step(int deriv_order, double scale) {
  static const double base[] = {0.0, 0.02, 0.03, 0.04, 0.05};
  return base[deriv_order] * scale;
}

}  // namespace

Chart::Chart(std::string name, Curvature c, ChartDomain domain, PointMap point, JetMap jet)
    : name_(std::move(name)), c_(c), domain_(domain), point_(std::move(point)), jet_(std::move(jet)) {}

Chart Chart::black_box(std::string name, Curvature c, ChartDomain domain, PointMap point) {
  return Chart(std::move(name), c, domain, std::move(point), nullptr);
}

Chart Chart::with_orientation(int sign) const {
  if (sign != 1 && sign != -1) throw UsageError("orientation must be +1 or -1");
  Chart r = *this;
  r.orientation_ = sign;
  return r;
}

Point Chart::operator()(double u, double v) const {
  if (!domain_.contains(u, v)) throw DomainError("chart '" + name_ + "': point outside the domain");
  return point_(u, v);
}

AmbientVector<Jet2d> Chart::jet(double u, double v, int order) const {
  if (order < 0 || order > kMaxJetOrder) throw UsageError("chart jet order out of range");
  if (!domain_.contains(u, v)) throw DomainError("chart '" + name_ + "': point outside the domain");
  if (!jet_) return finite_difference_jet(u, v, order);
  return jet_(Jet2d::variable(0, u, order), Jet2d::variable(1, v, order));
}

AmbientVector<Jet2d> Chart::finite_difference_jet(double u, double v, int order) const {
  if (order > kMaxFiniteDifferenceOrder)
    throw UsageError("finite-difference jets are limited to order 4");
  const int dim = ambient_dim(c_);
  AmbientVector<Jet2d> out(dim);
  for (int k = 0; k < dim; ++k) out[k] = Jet2d::zero(order);
  const Point centre = (*this)(u, v);
  for (int k = 0; k < dim; ++k) out[k][0] = centre[k];

  const double scale = std::max(1.0, std::abs(v));
  std::vector<double> offsets;
  for (int i = -kHalfWidth; i <= kHalfWidth; ++i) offsets.push_back(i);
  const auto w = fornberg_weights(0.0, offsets, order);

  for (int deg = 1; deg <= order; ++deg) {
    const double h = fd_step(deg, scale);
    const double us[2] = {u - kHalfWidth * h, u + kHalfWidth * h};
    const double vs[2] = {v - kHalfWidth * h, v + kHalfWidth * h};
    if (!domain_.contains(us[0], vs[0]) || !domain_.contains(us[1], vs[1]))
      throw DomainError("chart '" + name_ + "': finite-difference stencil leaves the domain");
    // Sample the full tensor stencil once per step size.
    std::vector<Point> samples((2 * kHalfWidth + 1) * (2 * kHalfWidth + 1));
    for (int a = 0; a <= 2 * kHalfWidth; ++a)
      for (int b = 0; b <= 2 * kHalfWidth; ++b)
        samples[a * (2 * kHalfWidth + 1) + b] = point_(u + offsets[a] * h, v + offsets[b] * h);
    for (int i = deg; i >= 0; --i) {
      const int j = deg - i;
      Point d = Point::Zero(dim);
      for (int a = 0; a <= 2 * kHalfWidth; ++a) {
        if (w[i][a] == 0.0) continue;
        for (int b = 0; b <= 2 * kHalfWidth; ++b) {
          if (w[j][b] == 0.0) continue;
          d += w[i][a] * w[j][b] * samples[a * (2 * kHalfWidth + 1) + b];
        }
      }
      double fact = 1.0;
      for (int f = 2; f <= i; ++f) fact *= f;
      for (int f = 2; f <= j; ++f) fact *= f;
      d /= std::pow(h, deg) * fact;
      for (int k = 0; k < dim; ++k) out[k].set_coeff({i, j}, d[k]);
    }
  }
  return out;
}

}  // namespace halfheat

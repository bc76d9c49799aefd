#pragma once

#include <functional>
#include <string>

#include "halfheat/jet.hpp"
#include "halfheat/spaceform.hpp"

namespace halfheat {

struct ChartDomain {
  double u_min = -1.0, u_max = 1.0;
  double v_min = -1.0, v_max = 1.0;
  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
};

// A parametrized surface (u, v) -> model point. Analytic charts provide a
// jet evaluator; black-box charts only a point evaluator, and their jets come
// from finite differences (order <= 4).
class Chart {
 public:
  using PointMap = std::function<Point(double, double)>;
  using JetMap = std::function<AmbientVector<Jet2d>(const Jet2d&, const Jet2d&)>;

  static constexpr int kMaxFiniteDifferenceOrder = 4;

  Chart() = default;
  Chart(std::string name, Curvature c, ChartDomain domain, PointMap point, JetMap jet);

  // Build from a generic callable usable with both double and Jet2d.
  template <typename F>
  static Chart analytic(std::string name, Curvature c, ChartDomain domain, F f) {
    return Chart(
        std::move(name), c, domain, [f](double u, double v) { return Point(f(u, v)); },
        [f](const Jet2d& u, const Jet2d& v) { return AmbientVector<Jet2d>(f(u, v)); });
  }
  static Chart black_box(std::string name, Curvature c, ChartDomain domain, PointMap point);

  const std::string& name() const { return name_; }
  Curvature curvature() const { return c_; }
  const ChartDomain& domain() const { return domain_; }
  bool has_jets() const { return static_cast<bool>(jet_); }

  // +1 keeps the normal produced by normal_direction, -1 flips it.
  int orientation() const { return orientation_; }
  Chart with_orientation(int sign) const;
  Chart flipped() const { return with_orientation(-orientation_); }

  Point operator()(double u, double v) const;
  AmbientVector<Jet2d> jet(double u, double v, int order) const;
  // Finite-difference jet, also available for analytic charts (cross-checks).
  AmbientVector<Jet2d> finite_difference_jet(double u, double v, int order) const;

 private:
  std::string name_;
  Curvature c_ = Curvature::flat;
  ChartDomain domain_;
  PointMap point_;
  JetMap jet_;
  int orientation_ = 1;
};

// Small helpers for writing chart maps generically.
template <typename T>
AmbientVector<T> ambient(const T& a, const T& b, const T& c) {
  AmbientVector<T> p(3);
  p << a, b, c;
  return p;
}
template <typename T>
AmbientVector<T> ambient(const T& a, const T& b, const T& c, const T& d) {
  AmbientVector<T> p(4);
  p << a, b, c, d;
  return p;
}

}  // namespace halfheat

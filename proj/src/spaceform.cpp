#include "halfheat/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace halfheat {

Curvature curvature_from_int(int sigma) {
  switch (sigma) {
    case -1: return Curvature::hyperbolic;
    case 0: return Curvature::flat;
    case 1: return Curvature::spherical;
    default: throw UsageError("curvature must be -1, 0 or +1, got " + std::to_string(sigma));
  }
}

std::string curvature_name(Curvature c) {
  switch (c) {
    case Curvature::hyperbolic: return "H3";
    case Curvature::spherical: return "S3";
    default: return "R3";
  }
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  int i = 0;
  for (double x : coords) p[i++] = x;
  return p;
}

bool on_model(Curvature c, const Point& p, double tol) {
  if (p.size() != ambient_dim(c)) return false;
  if (!p.allFinite()) return false;
  switch (c) {
    case Curvature::spherical: return std::abs(p.squaredNorm() - 1.0) <= tol;
    case Curvature::hyperbolic:
      // Relative check: coordinates grow like cosh of the distance from the pole.
      return p[0] >= 1.0 - tol &&
             std::abs(ambient_form(c, p, p) - 1.0) <= tol * std::max(1.0, p[0] * p[0]);
    default: return true;
  }
}

void require_on_model(Curvature c, const Point& p, const char* who) {
  if (p.size() != ambient_dim(c)) throw UsageError(std::string(who) + ": point has wrong dimension");
  if (!on_model(c, p, 1e-9)) throw UsageError(std::string(who) + ": point is not on the model");
}

Point project_to_tangent(Curvature c, const Point& p, const Point& v) {
  if (c == Curvature::flat) return v;
  return v - ambient_form(c, p, v) * p;
}

Point geodesic(Curvature c, const Point& p, const Point& xi, double s) {
  if (xi.size() != ambient_dim(c) || p.size() != ambient_dim(c))
    throw UsageError("geodesic: dimension mismatch");
  const double len2 = metric(c, xi, xi);
  if (std::abs(len2 - 1.0) > 1e-9) throw UsageError("geodesic: direction is not a unit vector");
  if (c != Curvature::flat && std::abs(ambient_form(c, p, xi)) > 1e-9 * std::max(1.0, std::abs(p[0])))
    throw UsageError("geodesic: direction is not tangent at the base point");
  return cs(c, s) * p + sn(c, s) * xi;
}

double distance(Curvature c, const Point& p, const Point& q) {
  if (p.size() != ambient_dim(c) || q.size() != ambient_dim(c))
    throw UsageError("distance: dimension mismatch");
  switch (c) {
    case Curvature::spherical: return 2.0 * std::atan2((p - q).norm(), (p + q).norm());
    case Curvature::hyperbolic: {
      const Point d = p - q;
      const double chord = std::sqrt(std::max(0.0, metric(c, d, d)));
      return 2.0 * std::asinh(chord / 2.0);
    }
    default: return (p - q).norm();
  }
}

double sphere_area(Curvature c, double r) {
  if (r < 0.0) throw UsageError("sphere_area: negative radius");
  switch (c) {
    case Curvature::spherical:
      if (r >= std::numbers::pi) throw UsageError("sphere_area: r >= pi on the sphere");
      return 4.0 * std::numbers::pi * std::sin(r) * std::sin(r);
    case Curvature::hyperbolic: return 4.0 * std::numbers::pi * std::sinh(r) * std::sinh(r);
    default: return 4.0 * std::numbers::pi * r * r;
  }
}

Point direction_to(Curvature c, const Point& p, const Point& q) {
  Point v = project_to_tangent(c, p, q - p);
  const double n = std::sqrt(std::max(0.0, metric(c, v, v)));
  if (n == 0.0) throw DomainError("direction_to: points coincide or are antipodal");
  return v / n;
}

Eigen::Vector3d poincare_from_hyperboloid(const Point& p) {
  require_on_model(Curvature::hyperbolic, p, "poincare_from_hyperboloid");
  return Eigen::Vector3d(p[1], p[2], p[3]) / (1.0 + p[0]);
}

Point hyperboloid_from_poincare(const Eigen::Vector3d& b) {
  const double r2 = b.squaredNorm();
  if (r2 >= 1.0) throw UsageError("hyperboloid_from_poincare: point outside the unit ball");
  Point p(4);
  p[0] = (1.0 + r2) / (1.0 - r2);
  p.tail<3>() = 2.0 * b / (1.0 - r2);
  return p;
}

Isometry::Isometry(Curvature c, const Eigen::MatrixXd& linear, const Eigen::VectorXd& translation)
    : c_(c), linear_(linear), translation_(translation) {
  const int n = ambient_dim(c);
  if (linear.rows() != n || linear.cols() != n || translation.size() != n)
    throw UsageError("Isometry: matrix size does not match the model");
  if (c != Curvature::flat && !translation.isZero(0.0))
    throw UsageError("Isometry: translations only exist in the flat model");
}

Isometry::Isometry(Curvature c, const Eigen::MatrixXd& linear)
    : Isometry(c, linear, Eigen::VectorXd::Zero(ambient_dim(c))) {}

Isometry Isometry::identity(Curvature c) {
  const int n = ambient_dim(c);
  return Isometry(c, Eigen::MatrixXd::Identity(n, n));
}

Point Isometry::apply(const Point& p) const {
  if (p.size() != linear_.cols()) throw UsageError("Isometry::apply: dimension mismatch");
  return linear_ * p + translation_;
}

Isometry Isometry::operator*(const Isometry& o) const {
  if (o.c_ != c_) throw UsageError("Isometry: composing isometries of different models");
  return Isometry(c_, linear_ * o.linear_, linear_ * o.translation_ + translation_);
}

Isometry Isometry::inverse() const {
  const Eigen::MatrixXd inv = linear_.inverse();
  return Isometry(c_, inv, -inv * translation_);
}

double Isometry::form_defect() const {
  const int n = ambient_dim(c_);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Point a = Point::Zero(n), b = Point::Zero(n);
      a[i] = 1.0;
      b[j] = 1.0;
      const Point la = linear_ * a, lb = linear_ * b;
      const double scale = std::max(1.0, la.norm() * lb.norm());
      worst = std::max(worst, std::abs(ambient_form(c_, la, lb) - ambient_form(c_, a, b)) / scale);
    }
  }
  return worst;
}

}  // namespace halfheat

#pragma once

// The three simply connected 3-dimensional space forms in their linear
// ambient models:
//   sigma = 0   R^3,
//   sigma = +1  unit sphere in R^4,
//   sigma = -1  upper sheet p0 >= 1 of the hyperboloid in Minkowski R^{1,3}.
// The Lorentz form is a0 b0 - a1 b1 - a2 b2 - a3 b3, so the hyperboloid reads
// form(p,p) = 1. Tangent vectors are spacelike and the Riemannian metric on
// them is metric = -form.

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>
#include <string>

#include "halfheat/errors.hpp"

namespace halfheat {

enum class Curvature : int { hyperbolic = -1, flat = 0, spherical = 1 };

inline int sigma_of(Curvature c) { return static_cast<int>(c); }
Curvature curvature_from_int(int sigma);
std::string curvature_name(Curvature c);

inline int ambient_dim(Curvature c) { return c == Curvature::flat ? 3 : 4; }

template <typename T>
using AmbientVector = Eigen::Matrix<T, Eigen::Dynamic, 1, 0, 4, 1>;
using Point = AmbientVector<double>;

Point make_point(std::initializer_list<double> coords);

inline constexpr double kModelTol = 1e-10;

template <typename T>
T ambient_form(Curvature c, const AmbientVector<T>& a, const AmbientVector<T>& b) {
  if (a.size() != ambient_dim(c) || b.size() != ambient_dim(c))
    throw UsageError("ambient_form: vector dimension does not match the model");
  T s = a[0] * b[0];
  if (c == Curvature::hyperbolic) {
    for (int i = 1; i < 4; ++i) s -= a[i] * b[i];
  } else {
    for (int i = 1; i < a.size(); ++i) s += a[i] * b[i];
  }
  return s;
}

// Riemannian inner product of tangent vectors (positive definite on tangents).
template <typename T>
T metric(Curvature c, const AmbientVector<T>& a, const AmbientVector<T>& b) {
  return c == Curvature::hyperbolic ? T(-ambient_form(c, a, b)) : ambient_form(c, a, b);
}

// Generalized cosine / sine: (cos, sin), (1, s), (cosh, sinh).
template <typename T>
T cs(Curvature c, const T& s) {
  using std::cos;
  using std::cosh;
  switch (c) {
    case Curvature::spherical: return cos(s);
    case Curvature::hyperbolic: return cosh(s);
    default: return T(1.0);
  }
}

template <typename T>
T sn(Curvature c, const T& s) {
  using std::sin;
  using std::sinh;
  switch (c) {
    case Curvature::spherical: return sin(s);
    case Curvature::hyperbolic: return sinh(s);
    default: return s;
  }
}

bool on_model(Curvature c, const Point& p, double tol = kModelTol);
void require_on_model(Curvature c, const Point& p, const char* who);

// Component of v tangent to the model at p.
Point project_to_tangent(Curvature c, const Point& p, const Point& v);

Point geodesic(Curvature c, const Point& p, const Point& xi, double s);
double distance(Curvature c, const Point& p, const Point& q);
double sphere_area(Curvature c, double r);

// Initial unit direction at p of the geodesic towards q.
Point direction_to(Curvature c, const Point& p, const Point& q);

Eigen::Vector3d poincare_from_hyperboloid(const Point& p);
Point hyperboloid_from_poincare(const Eigen::Vector3d& b);

// Unit vector orthogonal (for the model metric) to the position p (when
// sigma != 0) and to the tangent vectors a, b; before orientation.
template <typename T>
AmbientVector<T> normal_direction(Curvature c, const AmbientVector<T>& p, const AmbientVector<T>& a,
                                  const AmbientVector<T>& b) {
  using std::sqrt;
  AmbientVector<T> w(ambient_dim(c));
  if (c == Curvature::flat) {
    w[0] = a[1] * b[2] - a[2] * b[1];
    w[1] = a[2] * b[0] - a[0] * b[2];
    w[2] = a[0] * b[1] - a[1] * b[0];
  } else {
    // w_i = (-1)^i det of the 3x3 minor of [p a b] without row i, so that
    // sum_i w_i y_i = det[y p a b]: w is Euclidean-orthogonal to p, a, b.
    auto minor = [&](int skip) {
      int r[3], n = 0;
      for (int i = 0; i < 4; ++i)
        if (i != skip) r[n++] = i;
      return p[r[0]] * (a[r[1]] * b[r[2]] - a[r[2]] * b[r[1]]) -
             p[r[1]] * (a[r[0]] * b[r[2]] - a[r[2]] * b[r[0]]) +
             p[r[2]] * (a[r[0]] * b[r[1]] - a[r[1]] * b[r[0]]);
    };
    for (int i = 0; i < 4; ++i) w[i] = (i % 2 == 0) ? minor(i) : T(-minor(i));
    // Euclidean orthogonality becomes Lorentz orthogonality after J = diag(1,-1,-1,-1).
    if (c == Curvature::hyperbolic)
      for (int i = 1; i < 4; ++i) w[i] = -w[i];
  }
  const T len2 = metric(c, w, w);
  const T len = sqrt(len2);
  for (int i = 0; i < w.size(); ++i) w[i] = w[i] / len;
  return w;
}

// Isometry of a model: x -> linear * x (+ translation for sigma = 0).
class Isometry {
 public:
  Isometry() = default;
  Isometry(Curvature c, const Eigen::MatrixXd& linear, const Eigen::VectorXd& translation);
  explicit Isometry(Curvature c, const Eigen::MatrixXd& linear);

  static Isometry identity(Curvature c);

  Curvature curvature() const { return c_; }
  const Eigen::MatrixXd& linear() const { return linear_; }
  const Eigen::VectorXd& translation() const { return translation_; }

  Point apply(const Point& p) const;
  Point operator()(const Point& p) const { return apply(p); }
  Isometry operator*(const Isometry& o) const;  // (this * o)(p) = this(o(p))
  Isometry inverse() const;

  // max |form(Ia, Ib) - form(a, b)| / max(1, |Ia| |Ib|) over basis pairs; 0 for an isometry.
  double form_defect() const;

 private:
  Curvature c_ = Curvature::flat;
  Eigen::MatrixXd linear_ = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd translation_ = Eigen::VectorXd::Zero(3);
};

}  // namespace halfheat

#include "halfheat/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "halfheat/quadrature.hpp"

namespace halfheat {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd rotation_block(int n, int i, int j, double angle) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m(i, i) = std::cos(angle);
  m(i, j) = -std::sin(angle);
  m(j, i) = std::sin(angle);
  m(j, j) = std::cos(angle);
  return m;
}

Eigen::MatrixXd boost_block(int i, int j, double rapidity) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m(i, i) = std::cosh(rapidity);
  m(i, j) = std::sinh(rapidity);
  m(j, i) = std::sinh(rapidity);
  m(j, j) = std::cosh(rapidity);
  return m;
}

Isometry reflection(Curvature c, int coord) {
  const int n = ambient_dim(c);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m(coord, coord) = -1.0;
  return Isometry(c, m);
}

ChartDomain widen(const ChartDomain& box, double margin) {
  return {box.u_min - margin, box.u_max + margin, box.v_min - margin, box.v_max + margin};
}

// E_0(v) of the hyperbolic helicoid: metric(X_u, X_u).
template <typename T>
T hyperbolic_helicoid_E(double alpha, const T& v) {
  using std::cosh;
  using std::sinh;
  const T c = cosh(v), s = sinh(v);
  return alpha * alpha * c * c + s * s;
}

// Inverse of w(v) = int_0^v E_0^{-1/2}: the arclength-type reparametrization
// that makes (u, w) isothermal.
double hyperbolic_helicoid_v_of_w(double alpha, double w) {
  auto w_of_v = [alpha](double v) {
    const QuadratureRule q = gauss_legendre(40, 0.0, v);
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      s += q.weights[i] / std::sqrt(hyperbolic_helicoid_E(alpha, q.nodes[i]));
    return s;
  };
  double v = w * alpha;  // dv/dw = alpha at v = 0
  for (int it = 0; it < 60; ++it) {
    const double step = (w_of_v(v) - w) * std::sqrt(hyperbolic_helicoid_E(alpha, v));
    v -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(v))) break;
  }
  return v;
}

struct HyperbolicHelicoidMap {
  double alpha;
  template <typename T>
  AmbientVector<T> operator()(const T& u, const T& v) const {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const T au = alpha * u;
    return ambient<T>(cosh(au) * cosh(v), sinh(au) * cosh(v), cos(u) * sinh(v), sin(u) * sinh(v));
  }
};

// Y(s, t) = X^alpha(s / sqrt(alpha), v(t / sqrt(alpha))): E = G = E_0 / alpha and
// the second form is off-diagonal with unit entries.
struct HyperbolicHelicoidAsymptoticMap {
  double alpha;

  Point operator()(double s, double t) const {
    const double r = std::sqrt(alpha);
    return HyperbolicHelicoidMap{alpha}(s / r, hyperbolic_helicoid_v_of_w(alpha, t / r));
  }

  AmbientVector<Jet2d> operator()(const Jet2d& s, const Jet2d& t) const {
    const double r = std::sqrt(alpha);
    const Jet2d w = t / r;
    // Taylor series of v(w) at w0 by Picard iteration of dv/dw = sqrt(E_0(v)).
    const double w0 = w.constant();
    const int order = w.order();
    const double v0 = hyperbolic_helicoid_v_of_w(alpha, w0);
    Jet1d V(v0, order);
    for (int it = 0; it <= order; ++it) {
      V = integrate(sqrt(hyperbolic_helicoid_E(alpha, V)), 0).truncated(order);
      V[0] = v0;
    }
    std::vector<double> taylor(order + 1);
    for (int k = 0; k <= order; ++k) taylor[k] = V[k];
    return HyperbolicHelicoidMap{alpha}(s / r, compose_taylor(w, taylor));
  }
};

}  // namespace

double NamedSurface::side(const Point& p) const {
  require_domain();
  if (p.size() != ambient_dim(curvature)) throw UsageError("side: point has wrong dimension");
  return side_fn(p);
}

void NamedSurface::require_domain() const {
  if (!embedded || !side_fn)
    throw UsageError("surface '" + name + "' does not bound a domain; side operations are refused");
}

void orient_towards_positive_side(NamedSurface& s) {
  if (!s.side_fn || !s.embedded) return;
  const double u0 = 0.5 * (s.sample_box.u_min + s.sample_box.u_max) + 0.123;
  const double v0 = 0.5 * (s.sample_box.v_min + s.sample_box.v_max) + 0.0456;
  auto orient = [&](Chart& chart, double u, double v) {
    const FundamentalData fd = fundamental_data(chart, u, v);
    const double eps = 1e-3;
    const double plus = s.side_fn(geodesic(s.curvature, fd.X, fd.N, eps));
    const double minus = s.side_fn(geodesic(s.curvature, fd.X, fd.N, -eps));
    if (plus < minus) chart = chart.flipped();
  };
  orient(s.chart, u0, v0);
  if (s.asymptotic_chart) orient(*s.asymptotic_chart, 0.1, 0.2);
}

NamedSurface euclidean_plane() {
  NamedSurface s;
  s.name = "euclidean_plane";
  s.curvature = Curvature::flat;
  s.sample_box = {-2, 2, -2, 2};
  s.chart = Chart::analytic(s.name, s.curvature, widen(s.sample_box, 100), [](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(u, v, T(0.0));
  });
  s.half_domain = true;
  s.totally_geodesic = true;
  s.ruling = CoordinateLine::u_line;
  s.side_fn = [](const Point& p) { return p[2]; };
  s.flow = [](double b) {
    return Isometry(Curvature::flat, Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(b, 0, 0));
  };
  s.swap = reflection(Curvature::flat, 2);
  s.swap_chart = [](double u, double v) { return std::make_pair(u, v); };
  s.witness = [](double, double) { return Isometry::identity(Curvature::flat); };
  orient_towards_positive_side(s);
  return s;
}

NamedSurface right_helicoid() {
  NamedSurface s;
  s.name = "right_helicoid";
  s.curvature = Curvature::flat;
  s.sample_box = {-kPi, kPi, -2, 2};
  s.chart = Chart::analytic(s.name, s.curvature, widen(s.sample_box, 20), [](const auto& u, const auto& v) {
    using std::cos;
    using std::sin;
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(v * cos(u), v * sin(u), u);
  });
  s.asymptotic_chart = Chart::analytic("right_helicoid_asymptotic", s.curvature, {-20, 20, -6, 6},
                                       [](const auto& u, const auto& v) {
                                         using std::cos;
                                         using std::sin;
                                         using std::sinh;
                                         using T = std::decay_t<decltype(u)>;
                                         return ambient<T>(sinh(v) * cos(u), sinh(v) * sin(u), u);
                                       });
  s.half_domain = true;
  s.ruling = CoordinateLine::v_line;
  s.side_fn = [](const Point& p) { return p[0] * std::sin(p[2]) - p[1] * std::cos(p[2]); };
  s.flow = [](double b) {
    Eigen::MatrixXd r = rotation_block(3, 0, 1, b);
    return Isometry(Curvature::flat, r, Eigen::Vector3d(0, 0, b));
  };
  Eigen::MatrixXd psi = Eigen::MatrixXd::Identity(3, 3);
  psi(1, 1) = -1;
  psi(2, 2) = -1;
  s.swap = Isometry(Curvature::flat, psi);
  s.swap_chart = [](double u, double v) { return std::make_pair(-u, v); };
  s.witness = [flow = s.flow](double u, double) { return flow(-2.0 * u); };
  orient_towards_positive_side(s);
  return s;
}

NamedSurface catenoid() {
  NamedSurface s;
  s.name = "catenoid";
  s.curvature = Curvature::flat;
  s.sample_box = {-kPi, kPi, -1, 1};
  s.chart = Chart::analytic(s.name, s.curvature, widen(s.sample_box, 20), [](const auto& u, const auto& v) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(cosh(v) * cos(u), cosh(v) * sin(u), v);
  });
  s.side_fn = [](const Point& p) {
    const double c = std::cosh(p[2]);
    return p[0] * p[0] + p[1] * p[1] - c * c;
  };
  s.flow = [](double b) { return Isometry(Curvature::flat, rotation_block(3, 0, 1, b)); };
  orient_towards_positive_side(s);
  return s;
}

NamedSurface round_sphere(double radius) {
  if (!(radius > 0.0)) throw UsageError("round_sphere: radius must be positive");
  NamedSurface s;
  s.name = "round_sphere";
  s.alpha = radius;
  s.curvature = Curvature::flat;
  s.minimal = false;
  s.sample_box = {-kPi, kPi, -1.2, 1.2};
  s.chart = Chart::analytic(s.name, s.curvature, {-20, 20, -1.5, 1.5}, [radius](const auto& u, const auto& v) {
    using std::cos;
    using std::sin;
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(radius * cos(u) * cos(v), radius * sin(u) * cos(v), radius * sin(v));
  });
  s.side_fn = [radius](const Point& p) { return radius * radius - p.squaredNorm(); };
  s.flow = [](double b) { return Isometry(Curvature::flat, rotation_block(3, 0, 1, b)); };
  orient_towards_positive_side(s);
  return s;
}

NamedSurface hyperbolic_plane() {
  NamedSurface s;
  s.name = "hyperbolic_plane";
  s.curvature = Curvature::hyperbolic;
  s.sample_box = {-1.5, 1.5, -1.5, 1.5};
  s.chart = Chart::analytic(s.name, s.curvature, widen(s.sample_box, 10), [](const auto& u, const auto& v) {
    using std::cosh;
    using std::sinh;
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(cosh(u) * cosh(v), sinh(u) * cosh(v), sinh(v), T(0.0));
  });
  s.half_domain = true;
  s.totally_geodesic = true;
  s.ruling = CoordinateLine::v_line;
  s.side_fn = [](const Point& p) { return p[3]; };
  s.flow = [](double b) { return Isometry(Curvature::hyperbolic, boost_block(0, 1, b)); };
  s.swap = reflection(Curvature::hyperbolic, 3);
  s.swap_chart = [](double u, double v) { return std::make_pair(u, v); };
  s.witness = [](double, double) { return Isometry::identity(Curvature::hyperbolic); };
  orient_towards_positive_side(s);
  return s;
}

NamedSurface hyperbolic_helicoid(double alpha) {
  if (!(alpha > 0.0)) throw UsageError("hyperbolic_helicoid: alpha must be positive");
  NamedSurface s;
  s.name = "hyperbolic_helicoid";
  s.alpha = alpha;
  s.curvature = Curvature::hyperbolic;
  s.sample_box = {-kPi, kPi, -1.5, 1.5};
  s.chart = Chart::analytic(s.name, s.curvature, widen(s.sample_box, 10), HyperbolicHelicoidMap{alpha});
  s.asymptotic_chart = Chart::analytic("hyperbolic_helicoid_asymptotic", s.curvature, {-10, 10, -2, 2},
                                       HyperbolicHelicoidAsymptoticMap{alpha});
  s.half_domain = true;
  s.ruling = CoordinateLine::v_line;
  s.side_fn = [alpha](const Point& p) {
    // u* with X^alpha(u*, .) in the half-plane through p; w - x = (1 + y^2 + z^2)/(w + x).
    const double wx = p[0] + p[1];
    const double ustar = (std::log(wx) - 0.5 * std::log1p(p[2] * p[2] + p[3] * p[3])) / alpha;
    return std::cos(ustar) * p[3] - std::sin(ustar) * p[2];
  };
  s.flow = [alpha](double b) {
    return Isometry(Curvature::hyperbolic, boost_block(0, 1, alpha * b) * rotation_block(4, 2, 3, b));
  };
  Eigen::MatrixXd psi = Eigen::MatrixXd::Identity(4, 4);
  psi(1, 1) = -1;
  psi(3, 3) = -1;
  s.swap = Isometry(Curvature::hyperbolic, psi);
  s.swap_chart = [](double u, double v) { return std::make_pair(-u, v); };
  s.witness = [flow = s.flow](double u, double) { return flow(-2.0 * u); };
  orient_towards_positive_side(s);
  return s;
}

NamedSurface great_sphere() {
  NamedSurface s;
  s.name = "great_sphere";
  s.curvature = Curvature::spherical;
  s.sample_box = {-kPi, kPi, -1.2, 1.2};
  s.chart = Chart::analytic(s.name, s.curvature, {-20, 20, -1.5, 1.5}, [](const auto& u, const auto& v) {
    using std::cos;
    using std::sin;
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(cos(u) * cos(v), sin(u) * cos(v), sin(v), T(0.0));
  });
  s.half_domain = true;
  s.totally_geodesic = true;
  s.ruling = CoordinateLine::v_line;
  s.side_fn = [](const Point& p) { return p[3]; };
  s.flow = [](double b) { return Isometry(Curvature::spherical, rotation_block(4, 0, 1, b)); };
  s.swap = reflection(Curvature::spherical, 3);
  s.swap_chart = [](double u, double v) { return std::make_pair(u, v); };
  s.witness = [](double, double) { return Isometry::identity(Curvature::spherical); };
  orient_towards_positive_side(s);
  return s;
}

namespace {

// Points of S^3 as 2x2 matrices M = [[x1, x3], [x2, x4]]; the torus is
// det M = 0. Left rotations M -> R M move u, right rotations M -> M R^T move v.
Isometry clifford_left(double b) {
  return Isometry(Curvature::spherical, rotation_block(4, 0, 1, b) * rotation_block(4, 2, 3, b));
}
Isometry clifford_right(double g) {
  return Isometry(Curvature::spherical, rotation_block(4, 0, 2, g) * rotation_block(4, 1, 3, g));
}

}  // namespace

NamedSurface spherical_helicoid(double alpha) {
  if (!(alpha > 0.0)) throw UsageError("spherical_helicoid: alpha must be positive");
  NamedSurface s;
  s.name = "spherical_helicoid";
  s.alpha = alpha;
  s.curvature = Curvature::spherical;
  s.sample_box = {-kPi, kPi, -1.2, 1.2};
  s.chart = Chart::analytic(s.name, s.curvature, {-40, 40, -40, 40}, [alpha](const auto& u, const auto& v) {
    using std::cos;
    using std::sin;
    using T = std::decay_t<decltype(u)>;
    const T au = alpha * u;
    return ambient<T>(cos(au) * cos(v), sin(au) * cos(v), cos(u) * sin(v), sin(u) * sin(v));
  });
  s.ruling = CoordinateLine::v_line;
  s.flow = [alpha](double b) {
    return Isometry(Curvature::spherical, rotation_block(4, 0, 1, alpha * b) * rotation_block(4, 2, 3, b));
  };
  s.embedded = alpha == 1.0;
  if (s.embedded) {
    s.half_domain = true;
    s.side_fn = [](const Point& p) { return p[0] * p[3] - p[1] * p[2]; };
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(4, 4);
    psi(0, 2) = psi(1, 3) = psi(2, 0) = psi(3, 1) = 1.0;
    s.swap = Isometry(Curvature::spherical, psi);
    s.swap_chart = [](double u, double v) { return std::make_pair(u, kPi / 2 - v); };
    s.witness = [](double, double v) { return clifford_right(kPi / 2 - 2.0 * v); };
    orient_towards_positive_side(s);
  }
  return s;
}

NamedSurface clifford_torus() {
  NamedSurface s = spherical_helicoid(1.0);
  s.name = "clifford_torus";
  s.sample_box = {0, 2 * kPi, 0, 2 * kPi};
  s.chart = Chart::analytic(s.name, s.curvature, {-40, 40, -40, 40}, [](const auto& u, const auto& v) {
    using std::cos;
    using std::sin;
    using T = std::decay_t<decltype(u)>;
    return ambient<T>(cos(u) * cos(v), sin(u) * cos(v), cos(u) * sin(v), sin(u) * sin(v));
  });
  s.asymptotic_chart = s.chart;
  s.ruling = CoordinateLine::v_line;
  s.flow = clifford_left;
  orient_towards_positive_side(s);
  return s;
}

std::vector<std::string> fixture_names() {
  return {"euclidean_plane", "right_helicoid",    "catenoid",      "round_sphere",      "hyperbolic_plane",
          "hyperbolic_helicoid", "great_sphere", "clifford_torus", "spherical_helicoid"};
}

NamedSurface make_fixture(const std::string& name, double alpha) {
  if (name == "euclidean_plane") return euclidean_plane();
  if (name == "right_helicoid") return right_helicoid();
  if (name == "catenoid") return catenoid();
  if (name == "round_sphere") return round_sphere(alpha);
  if (name == "hyperbolic_plane") return hyperbolic_plane();
  if (name == "hyperbolic_helicoid") return hyperbolic_helicoid(alpha);
  if (name == "great_sphere") return great_sphere();
  if (name == "clifford_torus") return clifford_torus();
  if (name == "spherical_helicoid") return spherical_helicoid(alpha);
  std::string list;
  for (const auto& n : fixture_names()) list += (list.empty() ? "" : ", ") + n;
  throw UsageError("unknown surface '" + name + "'; known fixtures: " + list);
}

std::vector<NamedSurface> fixtures() {
  return {euclidean_plane(),        right_helicoid(), catenoid(),     round_sphere(1.0),
          hyperbolic_plane(),       hyperbolic_helicoid(0.4), great_sphere(), clifford_torus(),
          spherical_helicoid(1.0)};
}

Point random_model_point(const NamedSurface& s, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  switch (s.curvature) {
    case Curvature::spherical: {
      Point p(4);
      for (int i = 0; i < 4; ++i) p[i] = normal(rng);
      return p / p.norm();
    }
    case Curvature::hyperbolic: {
      // Uniform in a Poincare ball of Euclidean radius 0.8 (hyperbolic radius ~2.2).
      Eigen::Vector3d b;
      do {
        b = Eigen::Vector3d(uni(rng), uni(rng), uni(rng));
      } while (b.norm() >= 1.0);
      return hyperboloid_from_poincare(0.8 * b);
    }
    default: {
      Point p(3);
      for (int i = 0; i < 3; ++i) p[i] = 3.0 * uni(rng);
      return p;
    }
  }
}

SymmetryReport symmetry_check(const NamedSurface& s, int grid, double beta, int random_points,
                              unsigned seed, double tol) {
  if (!s.has_symmetries()) throw UsageError("surface '" + s.name + "' has no symmetry families");
  s.require_domain();
  SymmetryReport rep;
  rep.surface = s.name;
  const Isometry T = s.flow(beta);
  const Isometry& Psi = *s.swap;
  rep.isometry_form_defect = std::max(T.form_defect(), Psi.form_defect());
  const ChartDomain& box = s.sample_box;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double u = box.u_min + (box.u_max - box.u_min) * (i + 0.5) / grid;
      const double v = box.v_min + (box.v_max - box.v_min) * (j + 0.5) / grid;
      const Point x = s.chart(u, v);
      const double scale = std::max(1.0, x.norm());
      rep.side_on_surface = std::max(rep.side_on_surface, std::abs(s.side(x)));
      rep.flow_chart_residual = std::max(rep.flow_chart_residual, (T(x) - s.chart(u + beta, v)).norm() / scale);
      const auto [su, sv] = s.swap_chart(u, v);
      rep.swap_chart_residual = std::max(rep.swap_chart_residual, (Psi(x) - s.chart(su, sv)).norm() / scale);
      rep.witness_residual = std::max(rep.witness_residual, (Psi(x) - s.witness(u, v)(x)).norm() / scale);
      rep.isometry_form_defect = std::max(rep.isometry_form_defect, s.witness(u, v).form_defect());
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> betas(-3.0, 3.0);
  int tested = 0;
  while (tested < random_points) {
    const Point p = random_model_point(s, rng);
    const double sp = s.side(p);
    if (std::abs(sp) < 1e-6) continue;
    ++tested;
    for (int k = 0; k < 5; ++k)
      if (s.side(s.flow(betas(rng))(p)) * sp <= 0.0) ++rep.flow_side_violations;
    if (s.side(Psi(p)) * sp >= 0.0) ++rep.swap_side_violations;
  }
  rep.random_points = tested;
  const double worst = std::max({rep.flow_chart_residual, rep.swap_chart_residual, rep.witness_residual,
                                 rep.side_on_surface, rep.isometry_form_defect});
  rep.passed = worst <= tol && rep.flow_side_violations == 0 && rep.swap_side_violations == 0;
  if (!rep.passed)
    throw FixtureDefectError("symmetry check failed on '" + s.name + "': worst identity residual " +
                             std::to_string(worst) + ", side violations " +
                             std::to_string(rep.flow_side_violations + rep.swap_side_violations));
  return rep;
}

}  // namespace halfheat

#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A Jet<Scalar, Vars> stores the coefficients of  sum c_e * x^e  over all
// exponent vectors e with |e| <= order, i.e. truncation is by TOTAL degree.
// The order is a runtime value bounded by kMaxJetOrder; results of binary
// operations carry the smaller order of their operands, so an inexact
// coefficient can never leak into a higher order than its inputs support.
// Constants built from a scalar get the maximal order.
//
// The coefficient ring is a template parameter: double for geometry, and the
// exact Rational / ExactPoly types for the coefficient identities.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "halfheat/errors.hpp"

namespace halfheat {

inline constexpr int kMaxJetOrder = 8;

inline bool is_zero(double x) { return x == 0.0; }

namespace detail {

constexpr int binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

constexpr int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Monomials of total degree <= kMaxJetOrder in Vars variables, graded by
// degree, with precomputed product and shift tables.
template <int Vars>
struct MonomialTable {
  static constexpr int kCapacity = binomial(kMaxJetOrder + Vars, Vars);
  static constexpr int kBase = kMaxJetOrder + 1;

  std::array<std::array<int, Vars>, kCapacity> exps{};
  std::array<int, kCapacity> degree{};
  std::array<int, kMaxJetOrder + 1> count_upto{};  // #monomials with degree <= q
  std::vector<std::int16_t> product;                // kCapacity^2, -1 past max degree
  std::array<std::array<std::int16_t, kCapacity>, Vars> lowered{};  // e - unit(var)
  std::array<std::array<std::int16_t, kCapacity>, Vars> raised{};   // e + unit(var)
  std::array<std::int16_t, ipow(kBase, Vars)> lookup{};

  static int key(const std::array<int, Vars>& e) {
    int k = 0;
    for (int i = Vars - 1; i >= 0; --i) k = k * kBase + e[i];
    return k;
  }

  int index(const std::array<int, Vars>& e) const {
    int d = 0;
    for (int x : e) {
      if (x < 0) return -1;
      d += x;
    }
    if (d > kMaxJetOrder) return -1;
    return lookup[key(e)];
  }

  MonomialTable() {
    lookup.fill(-1);
    int n = 0;
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      // Enumerate compositions of d into Vars parts, first variable major.
      std::array<int, Vars> e{};
      enumerate(d, 0, e, n);
      count_upto[d] = n;
    }
    product.assign(static_cast<std::size_t>(kCapacity) * kCapacity, -1);
    for (int i = 0; i < kCapacity; ++i) {
      for (int j = 0; j < kCapacity; ++j) {
        std::array<int, Vars> s{};
        for (int v = 0; v < Vars; ++v) s[v] = exps[i][v] + exps[j][v];
        product[static_cast<std::size_t>(i) * kCapacity + j] = static_cast<std::int16_t>(index(s));
      }
      for (int v = 0; v < Vars; ++v) {
        auto lo = exps[i];
        lo[v] -= 1;
        lowered[v][i] = static_cast<std::int16_t>(index(lo));
        auto hi = exps[i];
        hi[v] += 1;
        raised[v][i] = static_cast<std::int16_t>(index(hi));
      }
    }
  }

  static const MonomialTable& instance() {
    static const MonomialTable table;
    return table;
  }

 private:
  void enumerate(int remaining, int var, std::array<int, Vars>& e, int& n) {
    if (var == Vars - 1) {
      e[var] = remaining;
      exps[n] = e;
      int d = 0;
      for (int x : e) d += x;
      degree[n] = d;
      lookup[key(e)] = static_cast<std::int16_t>(n);
      ++n;
      return;
    }
    for (int x = remaining; x >= 0; --x) {
      e[var] = x;
      enumerate(remaining - x, var + 1, e, n);
    }
  }
};

}  // namespace detail

template <typename Scalar, int Vars>
class Jet {
 public:
  using Table = detail::MonomialTable<Vars>;
  using Exponent = std::array<int, Vars>;
  static constexpr int kCapacity = Table::kCapacity;
  static constexpr int kVars = Vars;

  Jet() { coeffs_.fill(Scalar(0)); }
  Jet(const Scalar& c) : Jet() { coeffs_[0] = c; }  // NOLINT: constants promote implicitly
  Jet(const Scalar& c, int order) : Jet(c) { set_order(order); }

  static Jet zero(int order) { return Jet(Scalar(0), order); }

  // The coordinate function x_var expanded at `base`.
  static Jet variable(int var, const Scalar& base, int order) {
    Jet j(base, order);
    if (order >= 1) {
      Exponent e{};
      e[var] = 1;
      j.coeffs_[Table::instance().index(e)] = Scalar(1);
    }
    return j;
  }

  static int size_for(int order) {
    return order < 0 ? 0 : Table::instance().count_upto[std::min(order, kMaxJetOrder)];
  }

  int order() const { return order_; }
  int size() const { return size_for(order_); }

  const Scalar& operator[](int i) const { return coeffs_[i]; }
  Scalar& operator[](int i) { return coeffs_[i]; }
  const Scalar& constant() const { return coeffs_[0]; }

  static const Exponent& exponent(int i) { return Table::instance().exps[i]; }
  static int degree(int i) { return Table::instance().degree[i]; }

  Scalar coeff(const Exponent& e) const {
    const int i = Table::instance().index(e);
    if (i < 0 || i >= size()) return Scalar(0);
    return coeffs_[i];
  }
  void set_coeff(const Exponent& e, const Scalar& value) {
    const int i = Table::instance().index(e);
    if (i < 0 || i >= size()) throw UsageError("Jet::set_coeff: exponent beyond jet order");
    coeffs_[i] = value;
  }

  Jet truncated(int order) const {
    Jet r = *this;
    r.set_order(std::min(order, order_));
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (int i = 0; i < size(); ++i) r.coeffs_[i] = -r.coeffs_[i];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    set_order(std::min(order_, o.order_));
    for (int i = 0; i < size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    set_order(std::min(order_, o.order_));
    for (int i = 0; i < size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  Jet& operator+=(const Scalar& s) {
    coeffs_[0] += s;
    return *this;
  }
  Jet& operator-=(const Scalar& s) {
    coeffs_[0] -= s;
    return *this;
  }
  Jet& operator*=(const Scalar& s) {
    for (int i = 0; i < size(); ++i) coeffs_[i] *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, const Scalar& s) { return a += s; }
  friend Jet operator+(const Scalar& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const Scalar& s) { return a -= s; }
  friend Jet operator-(const Scalar& s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, const Scalar& s) { return a *= s; }
  friend Jet operator*(const Scalar& s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int q = std::min(a.order_, b.order_);
    Jet r = zero(q);
    const auto& t = Table::instance();
    const int n = size_for(q);
    for (int i = 0; i < n; ++i) {
      if (is_zero(a.coeffs_[i])) continue;
      const int m = t.count_upto[q - t.degree[i]];
      const std::int16_t* row = &t.product[static_cast<std::size_t>(i) * kCapacity];
      for (int j = 0; j < m; ++j) {
        if (is_zero(b.coeffs_[j])) continue;
        r.coeffs_[row[j]] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(Jet a, const Scalar& s) {
    const Scalar inv = Scalar(1) / s;
    return a *= inv;
  }
  friend Jet operator/(const Scalar& s, const Jet& b) { return reciprocal(b) *= s; }

  friend bool operator==(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_) return false;
    for (int i = 0; i < a.size(); ++i)
      if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
    return true;
  }

  void set_order(int order) {
    if (order > kMaxJetOrder) order = kMaxJetOrder;
    if (order < -1) order = -1;
    // Zero everything past the new order so stale data never resurfaces.
    for (int i = size_for(order); i < size_for(order_); ++i) coeffs_[i] = Scalar(0);
    order_ = order;
  }

 private:
  std::array<Scalar, kCapacity> coeffs_;
  int order_ = kMaxJetOrder;
};

template <typename S>
using Jet1 = Jet<S, 1>;
template <typename S>
using Jet2 = Jet<S, 2>;
template <typename S>
using Jet3 = Jet<S, 3>;
using Jet1d = Jet<double, 1>;
using Jet2d = Jet<double, 2>;
using Jet3d = Jet<double, 3>;

// h(x) for an analytic h given by its Taylor coefficients taylor[k] =
// h^(k)(c)/k! at c = x.constant(). The result order is capped by the
// number of coefficients supplied.
template <typename S, int V, typename Coeffs>
Jet<S, V> compose_taylor(const Jet<S, V>& x, const Coeffs& taylor) {
  const int q = std::min<int>(x.order(), static_cast<int>(std::size(taylor)) - 1);
  Jet<S, V> delta = x.truncated(q);
  delta[0] = S(0);
  Jet<S, V> r(taylor[q], q);
  for (int k = q - 1; k >= 0; --k) {
    r = r * delta;
    r[0] += taylor[k];
  }
  return r;
}

namespace detail {
inline double divide_by_integer(double x, long d) { return x / static_cast<double>(d); }
template <typename S>
S divide_by_integer(const S& x, long d) {
  return x * (S(1) / S(d));
}
inline bool same_base(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}
template <typename S>
bool same_base(const S& a, const S& b) {
  return a == b;
}
}  // namespace detail

// Taylor composition from derivatives h^(k)(base), k = 0..; the jet's
// constant term must equal `base`.
template <typename S, int V>
Jet<S, V> compose_analytic(const Jet<S, V>& x, const S& base, const std::vector<S>& derivs) {
  if (!detail::same_base(x.constant(), base))
    throw UsageError("compose_analytic: jet constant term does not match base point");
  if (derivs.empty()) throw UsageError("compose_analytic: no derivatives supplied");
  std::vector<S> taylor(derivs.size());
  long fact = 1;
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    taylor[k] = detail::divide_by_integer(derivs[k], fact);
  }
  return compose_taylor(x, taylor);
}

template <typename S, int V>
Jet<S, V> reciprocal(const Jet<S, V>& x) {
  const S c = x.constant();
  if (is_zero(c)) throw DomainError("jet division: constant term is zero");
  std::array<S, kMaxJetOrder + 1> t;
  const S inv = S(1) / c;
  S p = inv;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    t[k] = (k % 2 == 0) ? p : -p;
    p = p * inv;
  }
  return compose_taylor(x, t);
}

// d/dx_var; the order drops by one.
template <typename S, int V>
Jet<S, V> differentiate(const Jet<S, V>& x, int var) {
  if (x.order() < 1) throw UsageError("differentiate: insufficient jet order");
  const auto& t = Jet<S, V>::Table::instance();
  Jet<S, V> r = Jet<S, V>::zero(x.order() - 1);
  for (int i = 0; i < x.size(); ++i) {
    const int e = t.exps[i][var];
    if (e == 0) continue;
    const int j = t.lowered[var][i];
    r[j] = x[i] * S(e);
  }
  return r;
}

// Antiderivative in x_var vanishing on {x_var = 0 offset}; order rises by one.
template <typename S, int V>
Jet<S, V> integrate(const Jet<S, V>& x, int var) {
  const auto& t = Jet<S, V>::Table::instance();
  const int q = std::min(x.order() + 1, kMaxJetOrder);
  Jet<S, V> r = Jet<S, V>::zero(q);
  for (int i = 0; i < x.size(); ++i) {
    const int j = t.raised[var][i];
    if (j < 0 || j >= Jet<S, V>::size_for(q)) continue;
    r[j] = detail::divide_by_integer(x[i], t.exps[i][var] + 1);
  }
  return r;
}

// (x_var - base) * x; the order rises by one.
template <typename S, int V>
Jet<S, V> multiply_by_variable(const Jet<S, V>& x, int var) {
  const auto& t = Jet<S, V>::Table::instance();
  const int q = std::min(x.order() + 1, kMaxJetOrder);
  Jet<S, V> r = Jet<S, V>::zero(q);
  for (int i = 0; i < x.size(); ++i) {
    const int j = t.raised[var][i];
    if (j < 0 || j >= Jet<S, V>::size_for(q)) continue;
    r[j] = x[i];
  }
  return r;
}

// Value of the polynomial at base + delta.
template <typename S, int V>
S evaluate(const Jet<S, V>& x, const std::type_identity_t<std::array<S, V>>& delta) {
  S sum(0);
  for (int i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    S term = x[i];
    const auto& e = Jet<S, V>::exponent(i);
    for (int v = 0; v < V; ++v)
      for (int p = 0; p < e[v]; ++p) term = term * delta[v];
    sum += term;
  }
  return sum;
}

// Restriction to the variables listed in `keep` (others set to their base).
template <int W, typename S, int V>
Jet<S, W> slice(const Jet<S, V>& x, const std::array<int, W>& keep) {
  Jet<S, W> r = Jet<S, W>::zero(x.order());
  for (int i = 0; i < x.size(); ++i) {
    const auto& e = Jet<S, V>::exponent(i);
    int kept = 0;
    std::array<int, W> f{};
    for (int w = 0; w < W; ++w) {
      f[w] = e[keep[w]];
      kept += f[w];
    }
    if (kept != Jet<S, V>::degree(i)) continue;
    r.set_coeff(f, x[i]);
  }
  return r;
}

// Inclusion into more variables: variable v of x becomes variable positions[v].
template <int W, typename S, int V>
Jet<S, W> embed(const Jet<S, V>& x, const std::type_identity_t<std::array<int, V>>& positions) {
  Jet<S, W> r = Jet<S, W>::zero(x.order());
  for (int i = 0; i < x.size(); ++i) {
    const auto& e = Jet<S, V>::exponent(i);
    std::array<int, W> f{};
    for (int v = 0; v < V; ++v) f[positions[v]] = e[v];
    r.set_coeff(f, x[i]);
  }
  return r;
}

// Partial derivative of the given multi-index at the base point.
template <typename S, int V>
S derivative_at_base(const Jet<S, V>& x, const std::type_identity_t<std::array<int, V>>& e) {
  long fact = 1;
  for (int k : e)
    for (int i = 2; i <= k; ++i) fact *= i;
  return x.coeff(e) * S(fact);
}

// ---------------------------------------------------------------------------
// Elementary functions on floating-point jets.

namespace detail {
template <int V, typename F>
Jet<double, V> apply_taylor(const Jet<double, V>& x, F&& coeff) {
  std::array<double, kMaxJetOrder + 1> t;
  const double c = x.constant();
  double inv_fact = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    if (k > 0) inv_fact /= k;
    t[k] = coeff(c, k) * inv_fact;
  }
  return compose_taylor(x, t);
}
}  // namespace detail

template <int V>
Jet<double, V> sin(const Jet<double, V>& x) {
  const double s = std::sin(x.constant()), c = std::cos(x.constant());
  const double cyc[4] = {s, c, -s, -c};
  return detail::apply_taylor(x, [&](double, int k) { return cyc[k % 4]; });
}

template <int V>
Jet<double, V> cos(const Jet<double, V>& x) {
  const double s = std::sin(x.constant()), c = std::cos(x.constant());
  const double cyc[4] = {c, -s, -c, s};
  return detail::apply_taylor(x, [&](double, int k) { return cyc[k % 4]; });
}

template <int V>
Jet<double, V> sinh(const Jet<double, V>& x) {
  const double s = std::sinh(x.constant()), c = std::cosh(x.constant());
  return detail::apply_taylor(x, [&](double, int k) { return k % 2 == 0 ? s : c; });
}

template <int V>
Jet<double, V> cosh(const Jet<double, V>& x) {
  const double s = std::sinh(x.constant()), c = std::cosh(x.constant());
  return detail::apply_taylor(x, [&](double, int k) { return k % 2 == 0 ? c : s; });
}

template <int V>
Jet<double, V> exp(const Jet<double, V>& x) {
  const double e = std::exp(x.constant());
  return detail::apply_taylor(x, [&](double, int) { return e; });
}

template <int V>
Jet<double, V> log(const Jet<double, V>& x) {
  const double c = x.constant();
  if (!(c > 0.0)) throw DomainError("log of jet with non-positive constant term");
  std::array<double, kMaxJetOrder + 1> t;
  t[0] = std::log(c);
  double p = 1.0;
  for (int k = 1; k <= kMaxJetOrder; ++k) {
    p /= c;
    t[k] = ((k % 2 == 1) ? 1.0 : -1.0) * p / k;
  }
  return compose_taylor(x, t);
}

template <int V>
Jet<double, V> pow(const Jet<double, V>& x, double a) {
  const double c = x.constant();
  if (!(c > 0.0)) throw DomainError("pow of jet with non-positive constant term");
  std::array<double, kMaxJetOrder + 1> t;
  double binom = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    if (k > 0) binom *= (a - (k - 1)) / k;
    t[k] = binom * std::pow(c, a - k);
  }
  return compose_taylor(x, t);
}

template <int V>
Jet<double, V> sqrt(const Jet<double, V>& x) {
  return pow(x, 0.5);
}

// The usual floating-point comparisons look only at the value.
template <int V>
bool operator<(const Jet<double, V>& a, const Jet<double, V>& b) {
  return a.constant() < b.constant();
}

}  // namespace halfheat

namespace Eigen {

template <typename S, int V>
struct NumTraits<halfheat::Jet<S, V>> : GenericNumTraits<halfheat::Jet<S, V>> {
  using Real = halfheat::Jet<S, V>;
  using NonInteger = halfheat::Jet<S, V>;
  using Nested = halfheat::Jet<S, V>;
  using Literal = halfheat::Jet<S, V>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 100
  };
  static Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
  static Real dummy_precision() { return Real(1e-12); }
  static Real highest() { return Real(std::numeric_limits<double>::max()); }
  static Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
  static int digits10() { return std::numeric_limits<double>::digits10; }
};

template <typename S, int V, typename Op>
struct ScalarBinaryOpTraits<halfheat::Jet<S, V>, S, Op> {
  using ReturnType = halfheat::Jet<S, V>;
};
template <typename S, int V, typename Op>
struct ScalarBinaryOpTraits<S, halfheat::Jet<S, V>, Op> {
  using ReturnType = halfheat::Jet<S, V>;
};

}  // namespace Eigen

#include "halfheat/exact_poly.hpp"

#include <cmath>
#include <sstream>

#include "halfheat/errors.hpp"

namespace halfheat {

const char* var_name(Var v) {
  static const char* names[] = {"a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4",
                                "b5", "G0", "G1", "G2", "G3", "G4", "k",  "sigma"};
  return names[static_cast<int>(v)];
}

ExactPoly::ExactPoly(const Rational& c) {
  if (!c.is_zero()) terms_[Monomial{}] = c;
}

ExactPoly ExactPoly::var(Var v, int power) {
  ExactPoly p;
  Monomial m{};
  m[static_cast<int>(v)] = static_cast<std::int8_t>(power);
  p.terms_[m] = Rational(1);
  return p;
}

ExactPoly ExactPoly::a(int i) {
  if (i < 1 || i > 5) throw UsageError("ExactPoly::a: index out of range");
  return var(static_cast<Var>(static_cast<int>(Var::a1) + i - 1));
}

ExactPoly ExactPoly::b(int i) {
  if (i < 1 || i > 5) throw UsageError("ExactPoly::b: index out of range");
  return var(static_cast<Var>(static_cast<int>(Var::b1) + i - 1));
}

ExactPoly ExactPoly::gamma(int i) {
  if (i < 0 || i > 4) throw UsageError("ExactPoly::gamma: index out of range");
  return var(static_cast<Var>(static_cast<int>(Var::G0) + i));
}

bool ExactPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational ExactPoly::constant() const { return coefficient_of(Monomial{}); }

Rational ExactPoly::coefficient_of(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int ExactPoly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[static_cast<int>(v)]));
  return d;
}

void ExactPoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExactPoly ExactPoly::operator-() const {
  ExactPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      ExactPoly::Monomial m;
      for (int i = 0; i < kNumPolyVars; ++i) m[i] = static_cast<std::int8_t>(ma[i] + mb[i]);
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

ExactPoly& ExactPoly::operator*=(const ExactPoly& o) { return *this = *this * o; }

ExactPoly& ExactPoly::operator/=(const ExactPoly& o) {
  if (o.terms_.size() != 1) throw DomainError("ExactPoly: division by a non-monomial");
  const auto& [mo, co] = *o.terms_.begin();
  Terms out;
  for (const auto& [m, c] : terms_) {
    Monomial q;
    for (int i = 0; i < kNumPolyVars; ++i) q[i] = static_cast<std::int8_t>(m[i] - mo[i]);
    out[q] = c / co;
  }
  terms_ = std::move(out);
  return *this;
}

ExactPoly ExactPoly::substitute(Var v, const ExactPoly& value) const {
  const int vi = static_cast<int>(v);
  ExactPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    const int e = rest[vi];
    rest[vi] = 0;
    ExactPoly term;
    term.terms_[rest] = c;
    if (e < 0) {
      ExactPoly inv = ExactPoly(1) / value;
      for (int i = 0; i < -e; ++i) term *= inv;
    } else {
      for (int i = 0; i < e; ++i) term *= value;
    }
    r += term;
  }
  return r;
}

Rational ExactPoly::evaluate(const std::map<Var, Rational>& values) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < kNumPolyVars; ++i) {
      if (m[i] == 0) continue;
      auto it = values.find(static_cast<Var>(i));
      if (it == values.end()) throw UsageError(std::string("ExactPoly::evaluate: no value for ") + var_name(static_cast<Var>(i)));
      const Rational base = m[i] > 0 ? it->second : Rational(1) / it->second;
      for (int p = 0; p < std::abs(m[i]); ++p) t *= base;
    }
    sum += t;
  }
  return sum;
}

double ExactPoly::evaluate(const std::map<Var, double>& values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.to_double();
    for (int i = 0; i < kNumPolyVars; ++i) {
      if (m[i] == 0) continue;
      auto it = values.find(static_cast<Var>(i));
      if (it == values.end()) throw UsageError(std::string("ExactPoly::evaluate: no value for ") + var_name(static_cast<Var>(i)));
      t *= std::pow(it->second, m[i]);
    }
    sum += t;
  }
  return sum;
}

std::string ExactPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational coef = c;
    if (first) {
      if (coef < Rational(0)) {
        os << "-";
        coef = -coef;
      }
    } else {
      os << (coef < Rational(0) ? " - " : " + ");
      if (coef < Rational(0)) coef = -coef;
    }
    first = false;
    bool has_var = false;
    std::ostringstream mono;
    for (int i = 0; i < kNumPolyVars; ++i) {
      if (m[i] == 0) continue;
      if (has_var) mono << "*";
      mono << var_name(static_cast<Var>(i));
      if (m[i] != 1) mono << "^" << static_cast<int>(m[i]);
      has_var = true;
    }
    if (!has_var) {
      os << coef.str();
    } else if (coef == Rational(1)) {
      os << mono.str();
    } else {
      os << coef.str() << "*" << mono.str();
    }
  }
  return os.str();
}

}  // namespace halfheat

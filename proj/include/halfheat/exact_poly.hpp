#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "halfheat/rational.hpp"

namespace halfheat {

// Indeterminates of the coefficient identities. Exponents are signed so that
// k^{-1} (and other Laurent monomials) can be represented.
enum class Var : int {
  a1, a2, a3, a4, a5,
  b1, b2, b3, b4, b5,
  G0, G1, G2, G3, G4,
  k, sigma,
  kCount
};

inline constexpr int kNumPolyVars = static_cast<int>(Var::kCount);

const char* var_name(Var v);

class ExactPoly {
 public:
  using Monomial = std::array<std::int8_t, kNumPolyVars>;
  using Terms = std::map<Monomial, Rational>;

  ExactPoly() = default;
  ExactPoly(std::int64_t c) : ExactPoly(Rational(c)) {}  // NOLINT
  ExactPoly(const Rational& c);                           // NOLINT

  static ExactPoly var(Var v, int power = 1);
  static ExactPoly a(int i);  // a_1..a_5
  static ExactPoly b(int i);
  static ExactPoly gamma(int i);  // Gamma_0..Gamma_4

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant() const;
  Rational coefficient_of(const Monomial& m) const;
  int degree_in(Var v) const;

  ExactPoly substitute(Var v, const ExactPoly& value) const;
  Rational evaluate(const std::map<Var, Rational>& values) const;
  double evaluate(const std::map<Var, double>& values) const;

  std::string str() const;

  ExactPoly operator-() const;
  ExactPoly& operator+=(const ExactPoly& o);
  ExactPoly& operator-=(const ExactPoly& o);
  ExactPoly& operator*=(const ExactPoly& o);
  // Only division by a single term (a Laurent monomial) is exact.
  ExactPoly& operator/=(const ExactPoly& o);

  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator/(ExactPoly a, const ExactPoly& b) { return a /= b; }
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.terms_ == b.terms_; }

  friend std::ostream& operator<<(std::ostream& os, const ExactPoly& p) { return os << p.str(); }

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
};

inline bool is_zero(const ExactPoly& p) { return p.is_zero(); }

}  // namespace halfheat

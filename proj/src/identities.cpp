#include "halfheat/identities.hpp"

#include <cmath>
#include <random>

#include "halfheat/errors.hpp"
#include "halfheat/jet.hpp"

namespace halfheat {

namespace {

using P = ExactPoly;
using JetP = Jet<ExactPoly, 2>;

P a(int i) { return P::a(i); }
P b(int i) { return P::b(i); }
P G(int i) { return P::gamma(i); }
P q(std::int64_t n, std::int64_t d = 1) { return P(Rational(n, d)); }

constexpr int kSeriesDegree = 5;

// f, g and psi(1 + f + g) minus the left side, as jets; Scalar is ExactPoly or double.
template <typename S, typename ACoef, typename BCoef, typename Gam>
Jet<S, 2> main_identity_jet(ACoef acoef, BCoef bcoef, Gam gamma_over_factorial, int order) {
  const Jet<S, 2> u = Jet<S, 2>::variable(0, S(0), kSeriesDegree + 1);
  const Jet<S, 2> v = Jet<S, 2>::variable(1, S(0), kSeriesDegree + 1);
  Jet<S, 2> f = Jet<S, 2>::zero(kSeriesDegree + 1), g = Jet<S, 2>::zero(kSeriesDegree + 1);
  Jet<S, 2> upow = u, vpow = v;
  for (int i = 1; i <= kSeriesDegree; ++i) {
    f = f + acoef(i) * upow;
    g = g + bcoef(i) * vpow;
    upow = upow * u;
    vpow = vpow * v;
  }
  const Jet<S, 2> fu = differentiate(f, 0), gv = differentiate(g, 1);
  const Jet<S, 2> fuu = differentiate(fu, 0), gvv = differentiate(gv, 1);
  const Jet<S, 2> one_plus = S(1) + f + g;
  const Jet<S, 2> lhs = (fu * fu + gv * gv - one_plus * (fuu + gvv)).truncated(order);
  std::vector<S> taylor;
  for (int k = 0; k <= order; ++k) taylor.push_back(gamma_over_factorial(k));
  const Jet<S, 2> rhs = compose_taylor(one_plus.truncated(order), taylor);
  return lhs - rhs;
}

std::int64_t factorial(int k) {
  std::int64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

const LabeledRelation& find(const IdentitySet& set, const std::string& label) {
  for (const auto& r : set)
    if (r.label == label) return r;
  throw UsageError("unknown relation " + label);
}

P zero_a1_b1(const P& p) { return p.substitute(Var::a1, P(0)).substitute(Var::b1, P(0)); }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return Rational(num(rng), den(rng));
}

Rational random_nonzero(std::mt19937_64& rng) {
  for (;;) {
    Rational r = random_rational(rng);
    if (!is_zero(r)) return r;
  }
}

}  // namespace

IdentitySet coefficient_relations() {
  return {
      {"zero", {0, 0}, false, a(1) * a(1) + b(1) * b(1) - q(2) * (a(2) + b(2)) - G(0)},
      {"onet", {1, 0}, false, q(2) * a(1) * (a(2) - b(2)) - q(6) * a(3) - G(1) * a(1)},
      {"two", {0, 1}, false, q(2) * b(1) * (b(2) - a(2)) - q(6) * b(3) - G(1) * b(1)},
      {"three", {2, 0}, false,
       q(2) * a(2) * a(2) - q(12) * a(4) - q(2) * a(2) * b(2) - a(2) * G(1) - q(1, 2) * a(1) * a(1) * G(2)},
      {"four", {0, 2}, false,
       q(2) * b(2) * b(2) - q(12) * b(4) - q(2) * a(2) * b(2) - b(2) * G(1) - q(1, 2) * b(1) * b(1) * G(2)},
      {"five", {1, 1}, false, q(-6) * a(1) * b(3) - q(6) * a(3) * b(1) - a(1) * b(1) * G(2)},
      {"six", {2, 1}, false,
       q(-12) * a(4) * b(1) - q(6) * a(2) * b(3) -
           q(1, 2) * (G(3) * a(1) * a(1) * b(1) + q(2) * G(2) * a(2) * b(1))},
      {"seven", {1, 2}, false,
       q(-12) * a(1) * b(4) - q(6) * a(3) * b(2) -
           q(1, 2) * (G(3) * b(1) * b(1) * a(1) + q(2) * G(2) * b(2) * a(1))},
      {"eight", {2, 2}, true, q(-12) * (a(2) * b(4) + a(4) * b(2)) - G(2) * a(2) * b(2)},
  };
}

IdentitySet derived_identities() {
  const P d = G(2) - q(2) * G(1);
  return {
      {"idone", {-1, -1}, false, d * a(1) * b(1)},
      {"idtwo", {-1, -1}, false, b(1) * ((G(3) - G(2)) * a(1) * a(1) + q(2) * d * a(2))},
      {"idthree", {-1, -1}, false, a(1) * ((G(3) - G(2)) * b(1) * b(1) + q(2) * d * b(2))},
      {"idfour", {-1, -1}, true, d * a(2) * b(2)},
  };
}

std::map<std::pair<int, int>, ExactPoly> expand_main_identity(int order) {
  if (order < 0 || order > 4) throw UsageError("expand_main_identity: order must lie in 0..4");
  const JetP diff = main_identity_jet<P>([](int i) { return a(i); }, [](int i) { return b(i); },
                                         [](int k) { return G(k) * q(1, factorial(k)); }, order);
  std::map<std::pair<int, int>, ExactPoly> out;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) out[{i, j}] = diff.coeff({i, j});
  return out;
}

std::vector<RelationCheck> check_main_identity() {
  const auto coeffs = expand_main_identity(4);
  std::vector<RelationCheck> out;
  for (const auto& rel : coefficient_relations()) {
    P c = coeffs.at({rel.monomial[0], rel.monomial[1]});
    P stored = rel.relation;
    if (rel.needs_a1_b1_zero) {
      c = zero_a1_b1(c);
      stored = zero_a1_b1(stored);
    }
    RelationCheck chk{rel.label, rel.monomial, c - stored, false};
    chk.ok = chk.residual.is_zero();
    out.push_back(std::move(chk));
  }
  return out;
}

void require_main_identity() {
  for (const auto& c : check_main_identity())
    if (!c.ok)
      throw IdentityRegressionError("coefficient of u^" + std::to_string(c.monomial[0]) + " v^" +
                                    std::to_string(c.monomial[1]) + " (" + c.label +
                                    ") differs by " + c.residual.str());
}

std::vector<LemmaCheck> derive_lemma_identities() {
  const IdentitySet rel = coefficient_relations();
  const IdentitySet targets = derived_identities();
  const auto E = [&](const char* l) { return find(rel, l).relation; };

  std::vector<LemmaCheck> out;
  const auto add = [&](const char* label, std::vector<std::pair<std::string, P>> mult) {
    LemmaCheck c;
    c.label = label;
    c.multipliers = std::move(mult);
    const auto& t = find(targets, label);
    c.needs_a1_b1_zero = t.needs_a1_b1_zero;
    for (const auto& [name, m] : c.multipliers) c.combination += m * E(name.c_str());
    c.target = t.relation;
    if (c.needs_a1_b1_zero) {
      c.combination = zero_a1_b1(c.combination);
      c.target = zero_a1_b1(c.target);
    }
    c.residual = c.combination - c.target;
    c.ok = c.residual.is_zero();
    c.vanishes_when_gamma2_is_2gamma1 = c.target.substitute(Var::G2, q(2) * G(1)).is_zero();
    out.push_back(std::move(c));
  };
  // (onet), (two) and (five)
  add("idone", {{"onet", b(1)}, {"two", a(1)}, {"five", q(-1)}});
  // (three), (six) and (two)
  add("idtwo", {{"three", q(2) * b(1)}, {"six", q(-2)}, {"two", q(2) * a(2)}});
  // (four), (seven) and (onet)
  add("idthree", {{"four", q(2) * a(1)}, {"seven", q(-2)}, {"onet", q(2) * b(2)}});
  // (three), (four) and (eight), with a1 = b1 = 0
  add("idfour", {{"three", b(2)}, {"four", a(2)}, {"eight", q(-1)}});
  return out;
}

PsiCondition psi_condition() {
  const P k = P::var(Var::k), kinv = P::var(Var::k, -1), sig = P::var(Var::sigma);
  // d^n/dx^n x^p at x = 1 is the falling factorial p (p-1) ... (p-n+1).
  const auto falling = [](Rational p, int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r = r * (p - Rational(i));
    return r;
  };
  const Rational p1(7, 3), p2(5, 3);
  const auto deriv = [&](int n) { return q(6) * k * P(falling(p1, n)) - q(6) * sig * kinv * P(falling(p2, n)); };
  PsiCondition out;
  out.psi_prime = deriv(1);
  out.psi_second = deriv(2);
  out.condition = out.psi_second - q(2) * out.psi_prime;
  // condition = A k + B sigma / k vanishes at k^2 = -B/A sigma.
  Rational A(0), B(0);
  for (const auto& [m, c] : out.condition.terms()) {
    const int ek = m[static_cast<int>(Var::k)];
    if (ek == 1) A = c;
    if (ek == -1) B = c;
  }
  out.computed_locus = -(B / A);
  out.locus_discrepancy = out.computed_locus != out.stated_locus;
  return out;
}

double psi_condition_value(Curvature c, double k) {
  if (!(k > 0.0)) throw UsageError("psi_condition_value: k must be positive");
  return psi_condition().condition.evaluate(
      std::map<Var, double>{{Var::k, k}, {Var::sigma, static_cast<double>(sigma_of(c))}});
}

CounterexampleReport counterexample() {
  CounterexampleReport out;
  // Left side of the main identity for f = u^2, g = v^2, exactly.
  const JetP lhs_minus = main_identity_jet<P>([](int i) { return i == 2 ? q(1) : q(0); },
                                              [](int i) { return i == 2 ? q(1) : q(0); },
                                              [](int) { return q(0); }, 4);
  // With psi set to zero the jet is the left side itself.
  bool constant = true;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j)
      if ((i || j) && !lhs_minus.coeff({i, j}).is_zero()) constant = false;
  out.psi_constant = constant;
  out.psi_value = lhs_minus.coeff({0, 0}).constant();
  out.condition_vanishes = constant;  // psi' = psi'' = 0

  // c = P^2 * (positive Laplacian of log P), sampled away from the origin.
  double cmin = 1e300, cmax = -1e300;
  for (double u0 : {-0.7, 0.0, 0.4, 1.3})
    for (double v0 : {-1.1, 0.2, 0.9}) {
      const Jet2d u = Jet2d::variable(0, u0, 3), v = Jet2d::variable(1, v0, 3);
      const Jet2d Pj = 1.0 + u * u + v * v;
      const Jet2d L = log(Pj);
      const double lap = -(derivative_at_base(L, {2, 0}) + derivative_at_base(L, {0, 2}));
      const double c = lap * Pj[0] * Pj[0];
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
  out.laplacian_coefficient = 0.5 * (cmin + cmax);
  out.laplacian_fit_residual = cmax - cmin;
  return out;
}

CrossValidation cross_validate(int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto lemmas = derive_lemma_identities();
  const IdentitySet rel = coefficient_relations();
  CrossValidation out;
  out.points = points;
  out.exact_zero = true;
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int n = 0; n < points; ++n) {
    std::map<Var, Rational> rv;
    for (int i = 0; i < static_cast<int>(Var::k); ++i) rv[static_cast<Var>(i)] = random_rational(rng);
    for (const auto& l : lemmas) {
      auto vals = rv;
      if (l.needs_a1_b1_zero) vals[Var::a1] = vals[Var::b1] = Rational(0);
      if (!is_zero(l.combination.evaluate(vals) - l.target.evaluate(vals))) out.exact_zero = false;
    }
    // Floating jets against the stored relations.
    std::array<double, 6> ac{}, bc{};
    std::array<double, 5> gc{};
    std::map<Var, double> dv;
    for (int i = 1; i <= 5; ++i) {
      ac[i] = U(rng);
      bc[i] = U(rng);
      dv[static_cast<Var>(static_cast<int>(Var::a1) + i - 1)] = ac[i];
      dv[static_cast<Var>(static_cast<int>(Var::b1) + i - 1)] = bc[i];
    }
    for (int k = 0; k <= 4; ++k) {
      gc[k] = U(rng);
      dv[static_cast<Var>(static_cast<int>(Var::G0) + k)] = gc[k];
    }
    const Jet2d diff = main_identity_jet<double>([&](int i) { return ac[i]; }, [&](int i) { return bc[i]; },
                                                 [&](int k) { return gc[k] / static_cast<double>(factorial(k)); }, 4);
    for (const auto& r : rel) {
      if (r.needs_a1_b1_zero) continue;
      const double got = diff.coeff({r.monomial[0], r.monomial[1]});
      out.max_float_residual = std::max(out.max_float_residual, std::abs(got - r.relation.evaluate(dv)));
    }
  }
  return out;
}

CaseSolverReport case_solver_check(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const IdentitySet rel = coefficient_relations();
  const auto lemmas = derive_lemma_identities();
  CaseSolverReport out;
  for (int n = 0; n < samples; ++n) {
    Rational g0 = random_rational(rng), g1 = random_rational(rng), g2 = random_rational(rng),
             g3 = random_rational(rng);
    while (g2 == Rational(2) * g1) g2 = random_rational(rng);
    const Rational d = g2 - Rational(2) * g1;
    const bool first = (n % 2) == 0;  // b1 = 0, otherwise a1 = 0
    Rational x1 = random_nonzero(rng);
    // Unknowns of the branch: the other series (y) is forced, then x2..x4 solve
    // (zero), (onet)/(two), (three)/(four).
    // idthree (or idtwo) with y1 = 0: 2 d x1 y2 = 0.
    const Rational y1(0);
    const Rational y2 = -(x1 * (g3 - g2) * y1 * y1) / (Rational(2) * d * x1);
    Rational x2 = (x1 * x1 + y1 * y1 - Rational(2) * y2 - g0) / Rational(2);
    const Rational x3 = (Rational(2) * x1 * (x2 - y2) - g1 * x1) / Rational(6);
    const Rational y3 = (Rational(2) * y1 * (y2 - x2) - g1 * y1) / Rational(6);
    const Rational x4 =
        (Rational(2) * x2 * x2 - Rational(2) * x2 * y2 - x2 * g1 - Rational(1, 2) * x1 * x1 * g2) / Rational(12);
    // (seven) or (six): -12 x1 y4 - 6 x3 y2 = g3 y1^2 x1 / 2 + g2 y2 x1
    const Rational y4 = -(Rational(6) * x3 * y2 + Rational(1, 2) * g3 * y1 * y1 * x1 + g2 * y2 * x1) /
                        (Rational(12) * x1);
    std::map<Var, Rational> v{{Var::G0, g0}, {Var::G1, g1}, {Var::G2, g2}, {Var::G3, g3}, {Var::G4, Rational(0)}};
    const std::array<Var, 4> xs = first ? std::array{Var::a1, Var::a2, Var::a3, Var::a4}
                                        : std::array{Var::b1, Var::b2, Var::b3, Var::b4};
    const std::array<Var, 4> ys = first ? std::array{Var::b1, Var::b2, Var::b3, Var::b4}
                                        : std::array{Var::a1, Var::a2, Var::a3, Var::a4};
    const std::array<Rational, 4> xv{x1, x2, x3, x4}, yv{y1, y2, y3, y4};
    for (int i = 0; i < 4; ++i) {
      v[xs[i]] = xv[i];
      v[ys[i]] = yv[i];
    }
    v[Var::a5] = v[Var::b5] = Rational(0);
    ++out.samples;
    bool ok = true;
    for (const auto& r : rel)
      if (!r.needs_a1_b1_zero && !is_zero(r.relation.evaluate(v))) ok = false;
    for (const auto& l : lemmas)
      if (!l.needs_a1_b1_zero && !is_zero(l.target.evaluate(v))) ok = false;
    if (ok) ++out.consistent;
    // idone with d != 0 forces x1 y1 = 0; the branch then forces y2 = y3 = y4 = 0.
    if (is_zero(x1 * y1) && is_zero(y2) && is_zero(y3) && is_zero(y4)) ++out.forced;
  }
  return out;
}

}  // namespace halfheat

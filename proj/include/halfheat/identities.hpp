#pragma once

// Taylor-coefficient identities of
//   f'(u)^2 + g'(v)^2 - (1 + f + g)(f'' + g'') = psi(1 + f + g),
// with f = a1 u + ... + a5 u^5, g = b1 v + ... + b5 v^5 and Gamma_k = psi^(k)(1),
// derived over exact rationals.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "halfheat/exact_poly.hpp"
#include "halfheat/spaceform.hpp"

namespace halfheat {

struct LabeledRelation {
  std::string label;
  std::array<int, 2> monomial{-1, -1};  // (i, j) of u^i v^j, or -1 for derived identities
  bool needs_a1_b1_zero = false;
  ExactPoly relation;                   // LHS - RHS
};

using IdentitySet = std::vector<LabeledRelation>;

// The nine coefficient relations zero..eight.
IdentitySet coefficient_relations();
// The four derived identities as their stated right-hand sides.
IdentitySet derived_identities();

// Coefficients of LHS - RHS of the main identity, keyed by (i, j), i + j <= order.
std::map<std::pair<int, int>, ExactPoly> expand_main_identity(int order = 4);

struct RelationCheck {
  std::string label;
  std::array<int, 2> monomial{};
  ExactPoly residual;  // expansion coefficient minus stored relation
  bool ok = false;
};

// Compares the expansion against every stored relation.
std::vector<RelationCheck> check_main_identity();
// Throws IdentityRegressionError naming the first mismatching monomial.
void require_main_identity();

struct LemmaCheck {
  std::string label;
  std::vector<std::pair<std::string, ExactPoly>> multipliers;  // relation label, multiplier
  bool needs_a1_b1_zero = false;
  ExactPoly combination;
  ExactPoly target;
  ExactPoly residual;
  bool ok = false;
  bool vanishes_when_gamma2_is_2gamma1 = false;
};

std::vector<LemmaCheck> derive_lemma_identities();

struct PsiCondition {
  ExactPoly psi_prime;         // psi'(1) in k, sigma
  ExactPoly psi_second;        // psi''(1)
  ExactPoly condition;         // psi''(1) - 2 psi'(1)
  Rational computed_locus;     // k^2 = computed_locus * sigma
  Rational stated_locus{5, 6}; // the commonly quoted value
  bool locus_discrepancy = false;
};

// psi(x) = 6k x^{7/3} - (6 sigma / k) x^{5/3}.
PsiCondition psi_condition();
double psi_condition_value(Curvature c, double k);

struct CounterexampleReport {
  Rational psi_value;              // the constant value of psi for P = 1 + u^2 + v^2
  bool psi_constant = false;
  double laplacian_coefficient = 0.0;  // c with (positive) Laplacian of log P = c / P^2
  double laplacian_fit_residual = 0.0;
  bool condition_vanishes = false;
};

CounterexampleReport counterexample();

struct CrossValidation {
  int points = 0;
  bool exact_zero = false;          // every derived residual vanishes at rational points
  double max_float_residual = 0.0;  // floating jets vs stored relations
};

CrossValidation cross_validate(int points = 100, std::uint64_t seed = 20240607);

struct CaseSolverReport {
  int samples = 0;
  int consistent = 0;  // samples where every relation holds exactly after solving
  int forced = 0;      // samples where the vanishing pattern was forced
};

// Random rational data with Gamma_2 != 2 Gamma_1: a1 b1 = 0 is forced, then in
// each branch the other series vanishes through degree 4.
CaseSolverReport case_solver_check(int samples = 50, std::uint64_t seed = 7);

}  // namespace halfheat

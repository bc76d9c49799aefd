#include <gtest/gtest.h>

#include "halfheat/identities.hpp"

using namespace halfheat;

TEST(Identities, NineCoefficientRelations) {
  const auto checks = check_main_identity();
  ASSERT_EQ(checks.size(), 9u);
  for (const auto& c : checks) EXPECT_TRUE(c.ok) << c.label << ": " << c.residual;
  EXPECT_NO_THROW(require_main_identity());
}

TEST(Identities, ExpansionHasAllLowDegreeMonomials) {
  const auto e = expand_main_identity(4);
  EXPECT_EQ(e.size(), 15u);
  EXPECT_TRUE(e.count({2, 2}));
}

TEST(Identities, DerivedIdentitiesExact) {
  const auto lemmas = derive_lemma_identities();
  ASSERT_EQ(lemmas.size(), 4u);
  for (const auto& l : lemmas) {
    EXPECT_TRUE(l.ok) << l.label;
    EXPECT_TRUE(l.residual.is_zero()) << l.label;
  }
  EXPECT_TRUE(lemmas[0].vanishes_when_gamma2_is_2gamma1);
  EXPECT_FALSE(lemmas[1].vanishes_when_gamma2_is_2gamma1);
  EXPECT_FALSE(lemmas[2].vanishes_when_gamma2_is_2gamma1);
  EXPECT_TRUE(lemmas[3].vanishes_when_gamma2_is_2gamma1);
}

TEST(Identities, PsiConditionLocus) {
  const PsiCondition p = psi_condition();
  EXPECT_EQ(p.computed_locus, Rational(10, 7));
  EXPECT_TRUE(p.locus_discrepancy);
  EXPECT_NEAR(psi_condition_value(Curvature::spherical, std::sqrt(10.0 / 7.0)), 0.0, 1e-12);
  EXPECT_GT(std::abs(psi_condition_value(Curvature::spherical, std::sqrt(5.0 / 6.0))), 1e-3);
}

TEST(Identities, Counterexample) {
  const CounterexampleReport c = counterexample();
  EXPECT_TRUE(c.psi_constant);
  EXPECT_EQ(c.psi_value, Rational(-4));
  EXPECT_NEAR(c.laplacian_coefficient, -4.0, 1e-10);
  EXPECT_LT(c.laplacian_fit_residual, 1e-10);
  EXPECT_TRUE(c.condition_vanishes);
}

TEST(Identities, CrossValidationAndCases) {
  const CrossValidation v = cross_validate(20);
  EXPECT_TRUE(v.exact_zero);
  EXPECT_LT(v.max_float_residual, 1e-12);
  const CaseSolverReport r = case_solver_check(10);
  EXPECT_EQ(r.consistent, 10);
  EXPECT_EQ(r.forced, 10);
}

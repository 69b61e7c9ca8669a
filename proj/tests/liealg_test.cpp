#include <gtest/gtest.h>

#include <random>

#include "gradinv/fixtures.hpp"
#include "gradinv/liealg.hpp"

using namespace gradinv;

namespace {

// e, f, h with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
LieAlgebra sl2() {
  return LieAlgebra::from_brackets({"e", "f", "h"}, {{2, 0, {2, 0, 0}}, {2, 1, {0, -2, 0}}, {0, 1, {0, 0, 1}}});
}

LieAlgebra borel() { return LieAlgebra::from_brackets({"H", "E"}, {{0, 1, {0, 2}}}); }

Vector random_element(std::mt19937& rng, std::size_t m) {
  std::uniform_int_distribution<int> c(-5, 5), d(1, 3);
  Vector v(m);
  for (auto& q : v) q = ratio(c(rng), d(rng));
  return v;
}

}  // namespace

TEST(LieAlgebra, BracketsAndAntisymmetricCompletion) {
  auto L = sl2();
  EXPECT_EQ(L.bracket(L.basis_vector(1), L.basis_vector(0)), (Vector{0, 0, -1}));
  EXPECT_EQ(L.bracket(L.basis_vector(0), L.basis_vector(2)), (Vector{-2, 0, 0}));
  EXPECT_EQ(L.ad(2), RatMatrix::from_rows({{2, 0, 0}, {0, -2, 0}, {0, 0, 0}}));
}

TEST(VerifyLie, Sl2AndBorelPass) {
  EXPECT_TRUE(verify_lie(sl2()).ok);
  EXPECT_TRUE(verify_lie(borel()).ok);
  EXPECT_TRUE(verify_lie(LieAlgebra({})).ok);
}

TEST(VerifyLie, PerturbedConstantIsAnAntisymmetryViolation) {
  auto L = sl2();
  L.constant(0, 1, 2) = 2;  // [e,f] = 2h while [f,e] = -h stays
  auto r = verify_lie(L);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.kind, "antisymmetry");
  EXPECT_EQ(r.i, 0u);
  EXPECT_EQ(r.j, 1u);
  EXPECT_EQ(r.residual, (Vector{0, 0, 1}));
}

TEST(VerifyLie, RescalingOneBracketConsistentlyStillSatisfiesJacobi) {
  // [e,f] = λh is a Lie algebra for every λ, so a consistent rescale is not a negative control.
  auto L = LieAlgebra::from_brackets({"e", "f", "h"}, {{2, 0, {2, 0, 0}}, {2, 1, {0, -2, 0}}, {0, 1, {0, 0, 2}}});
  EXPECT_TRUE(verify_lie(L).ok);
}

TEST(VerifyLie, JacobiViolationNamesTriple) {
  auto L = LieAlgebra::from_brackets({"e", "f", "h"}, {{2, 0, {2, 0, 0}}, {2, 1, {0, -2, 0}}, {0, 1, {1, 0, 1}}});
  auto r = verify_lie(L);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.kind, "jacobi");
  EXPECT_EQ(std::tie(r.i, r.j, r.k), std::make_tuple(0u, 1u, 2u));
  EXPECT_EQ(r.residual, (Vector{2, 0, 0}));
  EXPECT_NE(r.message.find("(e, f, h)"), std::string::npos);
}

TEST(VerifyLie, DiagonalBracketMustVanish) {
  LieAlgebra L({"X", "Y"});
  L.constant(0, 0, 1) = 1;
  auto r = verify_lie(L);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.kind, "antisymmetry");
  EXPECT_EQ(r.i, 0u);
  EXPECT_EQ(r.j, 0u);
}

TEST(KillingForm, Sl2Values) {
  auto k = killing_form(sl2());
  EXPECT_EQ(k, RatMatrix::from_rows({{0, 4, 0}, {4, 0, 0}, {0, 0, 8}}));
  EXPECT_TRUE(is_semisimple(sl2()));
}

TEST(KillingForm, SolvableAlgebrasAreDegenerate) {
  EXPECT_FALSE(is_semisimple(borel()));
  EXPECT_FALSE(is_semisimple(LieAlgebra({"X"})));
  EXPECT_TRUE(is_semisimple(LieAlgebra({})));
}

TEST(DerivedSeries, Examples) {
  auto b = derived_series(borel());
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[1], Subspace::span(2, {{0, 1}}));
  EXPECT_TRUE(b[2].is_zero());
  EXPECT_TRUE(is_solvable(borel()));

  auto s = derived_series(sl2());
  EXPECT_EQ(s.size(), 1u);
  EXPECT_FALSE(is_solvable(sl2()));
  EXPECT_TRUE(is_solvable(LieAlgebra({"X"})));
}

TEST(Casimir, Sl2Coefficients) {
  auto c = casimir(sl2());
  auto m = c.coefficient_matrix(3);
  EXPECT_EQ(m, RatMatrix::from_rows({{0, Rational(1, 4), 0}, {Rational(1, 4), 0, 0}, {0, 0, Rational(1, 8)}}));
  EXPECT_THROW(casimir(borel()), NotSemisimple);
}

TEST(CharacterSpace, Examples) {
  EXPECT_EQ(character_space(borel()), Subspace::span(2, {{1, 0}}));
  EXPECT_TRUE(character_space(sl2()).is_zero());
  EXPECT_EQ(character_space(LieAlgebra({"X"})), Subspace::full(1));
}

TEST(LieProperties, KillingFormIsAdInvariant) {
  std::mt19937 rng(9);
  for (const auto& L : {sl2(), borel()}) {
    auto k = killing_form(L);
    const std::size_t m = L.dim();
    for (int t = 0; t < 20; ++t) {
      auto x = random_element(rng, m), y = random_element(rng, m), z = random_element(rng, m);
      auto kxy = [&](const Vector& u, const Vector& v) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) s += u[i] * k(i, j) * v[j];
        return s;
      };
      EXPECT_EQ(kxy(L.bracket(x, y), z), kxy(x, L.bracket(y, z)));
    }
  }
}

TEST(LieProperties, BracketBilinearAntisymmetricJacobiOnRandomElements) {
  std::mt19937 rng(10);
  auto L = sl2();
  for (int t = 0; t < 30; ++t) {
    auto x = random_element(rng, 3), y = random_element(rng, 3), z = random_element(rng, 3);
    auto xy = L.bracket(x, y), yx = L.bracket(y, x);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(xy[k], -yx[k]);
    auto a = L.bracket(x, L.bracket(y, z)), b = L.bracket(y, L.bracket(z, x)), c = L.bracket(z, L.bracket(x, y));
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(a[k] + b[k] + c[k], 0);
  }
}

TEST(LieProperties, CharactersVanishOnBrackets) {
  auto L = borel();
  auto chars = character_space(L);
  for (const auto& chi : chars.basis())
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = 0; j < L.dim(); ++j) {
        auto b = L.bracket(L.basis_vector(i), L.basis_vector(j));
        Rational s = 0;
        for (std::size_t k = 0; k < L.dim(); ++k) s += chi[k] * b[k];
        EXPECT_EQ(s, 0);
      }
}

TEST(Fixtures, NegativeLieControlsFailVerification) {
  auto p = load_fixture("sl2-perturbed");
  EXPECT_EQ(verify_lie(*p.lie).kind, "antisymmetry");
  auto q = load_fixture("sl2-jacobi");
  EXPECT_EQ(verify_lie(*q.lie).kind, "jacobi");
  for (auto name : {"torus", "weitzenbock", "borel", "sl2quad", "torus-module", "rotation"})
    EXPECT_TRUE(verify_lie(*load_fixture(name).lie).ok) << name;
}

#include <gtest/gtest.h>

#include <random>

#include "gradinv/fixtures.hpp"
#include "gradinv/invariants.hpp"
#include "oracles.hpp"

using namespace gradinv;

namespace {

Polynomial P(const Problem& p, const char* text) { return parse_poly(text, p.sig); }

void expect_generation(const DerivationAction& A, const RingGenerators& g) {
  for (long d = 0; d <= g.max_degree; ++d) {
    auto inv = oracle::invariants_by_kernels(A, d);
    EXPECT_EQ(g.dim_at(d), inv.dim()) << "d=" << d;
    EXPECT_EQ(oracle::ring_span(A.signature(), g.generators, d), inv) << "d=" << d;
  }
}

}  // namespace

TEST(InvariantsDegree, Examples) {
  auto torus = load_fixture("torus");
  EXPECT_EQ(invariants_degree(*torus.action, 0), Subspace::full(1));
  EXPECT_EQ(invariants_degree(*torus.action, 2), Subspace::span(3, {to_coordinates(P(torus, "x*y"), 2)}));
  auto sl2 = load_fixture("sl2quad");
  EXPECT_TRUE(invariants_degree(*sl2.action, 3).is_zero());
}

TEST(InvariantsDegree, MatchesKernelIntersection) {
  for (auto name : {"torus", "weitzenbock", "borel", "sl2quad"}) {
    auto p = load_fixture(name);
    for (long d = 0; d <= 6; ++d) EXPECT_EQ(invariants_degree(*p.action, d), oracle::invariants_by_kernels(*p.action, d));
  }
}

TEST(InvariantGenerators, Weitzenbock) {
  auto p = load_fixture("weitzenbock");
  auto g = invariant_generators(*p.action, 8);
  ASSERT_EQ(g.generators.size(), 1u);
  EXPECT_EQ(g.generators[0].degree, 1);
  EXPECT_EQ(g.generators[0].element, P(p, "x"));
  for (long d = 0; d <= 8; ++d) EXPECT_EQ(g.dim_at(d), 1u);
  expect_generation(*p.action, g);
  EXPECT_TRUE(g.stabilized());
}

TEST(InvariantGenerators, Torus) {
  auto p = load_fixture("torus");
  auto g = invariant_generators(*p.action, 10);
  ASSERT_EQ(g.generators.size(), 1u);
  EXPECT_EQ(g.generators[0].degree, 2);
  EXPECT_EQ(to_string(g.generators[0].element), "x*y");
  for (long d = 0; d <= 10; ++d) EXPECT_EQ(g.dim_at(d), d % 2 ? 0u : 1u);
  expect_generation(*p.action, g);
}

TEST(InvariantGenerators, Sl2Discriminant) {
  auto p = load_fixture("sl2quad");
  auto g = invariant_generators(*p.action, 8);
  ASSERT_EQ(g.generators.size(), 1u);
  EXPECT_EQ(g.generators[0].degree, 2);
  // Same line as b^2 - 4ac.
  EXPECT_EQ(Subspace::span(6, {to_coordinates(g.generators[0].element, 2)}),
            Subspace::span(6, {to_coordinates(P(p, "b^2 - 4*a*c"), 2)}));
  for (long d = 0; d <= 8; ++d) EXPECT_EQ(g.dim_at(d), d % 2 ? 0u : 1u);
  expect_generation(*p.action, g);
}

TEST(InvariantGenerators, BorelAndNoAction) {
  auto p = load_fixture("borel");
  auto g = invariant_generators(*p.action, 6);
  EXPECT_TRUE(g.generators.empty());  // H forces powers of xy, and E(xy) = x^2
  for (long d = 1; d <= 6; ++d) EXPECT_EQ(g.dim_at(d), 0u);
  expect_generation(*p.action, g);

  // Zero-dimensional Lie algebra: everything is invariant, generators are the variables.
  auto sig = make_signature({"x", "y"}, {1, 2});
  DerivationAction none(sig, std::make_shared<const LieAlgebra>(std::vector<std::string>{}), {});
  auto all = invariant_generators(none, 5);
  ASSERT_EQ(all.generators.size(), 2u);
  EXPECT_EQ(to_string(all.generators[0].element), "x");
  EXPECT_EQ(to_string(all.generators[1].element), "y");
  EXPECT_EQ(all.generators[1].degree, 2);
  expect_generation(none, all);
}

TEST(InvariantGenerators, RejectsNonPositiveBound) {
  auto p = load_fixture("torus");
  EXPECT_THROW(invariant_generators(*p.action, 0), InvalidArgument);
}

TEST(InvariantGenerators, StabilizationWindow) {
  auto p = load_fixture("torus");
  auto g = invariant_generators(*p.action, 3);
  EXPECT_EQ(g.stabilization_window(), 2);
  EXPECT_FALSE(g.stabilized());  // xy appears in degree 2, inside the window
  EXPECT_TRUE(invariant_generators(*p.action, 4).stabilized());
}

TEST(Reynolds, Sl2Examples) {
  auto p = load_fixture("sl2quad");
  EXPECT_EQ(reynolds(*p.action, 0), RatMatrix::identity(1));
  EXPECT_TRUE(reynolds(*p.action, 1).is_zero());
  auto r2 = reynolds(*p.action, 2);
  EXPECT_EQ(rank(r2), 1u);
  EXPECT_EQ(column_space(r2), Subspace::span(6, {to_coordinates(P(p, "b^2 - 4*a*c"), 2)}));
  EXPECT_THROW(reynolds(*load_fixture("borel").action, 1), NotSemisimple);
}

TEST(ComplementQ, Sl2Examples) {
  auto p = load_fixture("sl2quad");
  EXPECT_TRUE(complement_Q(*p.action, 0).is_zero());
  EXPECT_EQ(complement_Q(*p.action, 1), Subspace::full(3));
  EXPECT_EQ(complement_Q(*p.action, 2).dim(), 5u);
}

TEST(ReynoldsProperties, ProjectionIdentities) {
  auto p = load_fixture("sl2quad");
  for (long d = 0; d <= 6; ++d) {
    auto s = reynolds_split(*p.action, d);
    const auto& R = s.projection;
    const std::size_t n = graded_dimension(*p.sig, d);
    EXPECT_EQ(R * R, R);
    EXPECT_EQ(rank(R), invariants_degree(*p.action, d).dim());
    EXPECT_EQ(s.invariants.dim() + s.complement.dim(), n);
    for (std::size_t j = 0; j < 3; ++j) {
      auto rho = action_matrix(*p.action, j, d);
      EXPECT_TRUE((rho * R).is_zero());
      EXPECT_TRUE((R * rho).is_zero());
    }
    for (const auto& v : s.invariants.basis()) EXPECT_EQ(R * v, v);
    for (const auto& v : s.complement.basis()) {
      auto rv = R * v;
      for (const auto& q : rv) EXPECT_EQ(q, 0);
    }
  }
}

TEST(ComplementContainment, Examples) {
  auto p = load_fixture("sl2quad");
  EXPECT_TRUE(verify_hilblemma(*p.action, 0, 2));
  EXPECT_EQ(check_containment(*p.action, 0, 2).products_checked, 0u);
  EXPECT_TRUE(verify_hilblemma(*p.action, 1, 2));
  auto r = check_containment(*p.action, 2, 2);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.products_checked, 5u);
  EXPECT_THROW(verify_hilblemma(*load_fixture("borel").action, 1, 1), NotSemisimple);
}

TEST(InvariantProperties, ProductsOfInvariantsAreInvariant) {
  std::mt19937 rng(3);
  for (auto name : {"sl2quad", "torus", "weitzenbock"}) {
    auto p = load_fixture(name);
    for (int t = 0; t < 20; ++t) {
      long i = 1 + t % 4, j = 1 + (t / 4) % 3;
      auto s = from_coordinates(p.sig, i, oracle::random_combination(rng, invariants_degree(*p.action, i)));
      auto u = from_coordinates(p.sig, j, oracle::random_combination(rng, invariants_degree(*p.action, j)));
      for (std::size_t k = 0; k < p.lie->dim(); ++k) EXPECT_TRUE(act_basis(*p.action, k, s * u).is_zero());
    }
  }
}

TEST(InvariantProperties, DimensionsSplitForSemisimple) {
  auto p = load_fixture("sl2quad");
  for (long d = 0; d <= 7; ++d)
    EXPECT_EQ(invariants_degree(*p.action, d).dim() + complement_Q(*p.action, d).dim(), graded_dimension(*p.sig, d));
}

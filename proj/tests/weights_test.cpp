#include <gtest/gtest.h>

#include <random>

#include "gradinv/fixtures.hpp"
#include "gradinv/weights.hpp"
#include "oracles.hpp"

using namespace gradinv;

namespace {

Polynomial P(const Problem& p, const char* text) { return parse_poly(text, p.sig); }
Character chi(std::initializer_list<long> v) {
  Character c;
  for (long x : v) c.values.push_back(Rational(x));
  return c;
}

// Monomial weight oracle for diagonal-plus-nilpotent fixtures: χ(H) of x^a y^b is a - b.
std::map<long, std::size_t> monomial_weights(long d) {
  std::map<long, std::size_t> out;
  for (long a = 0; a <= d; ++a) ++out[a - (d - a)];
  return out;
}

}  // namespace

TEST(WeightComponent, Examples) {
  auto w = load_fixture("weitzenbock");
  EXPECT_EQ(weight_component(*w.action, chi({0}), 2), Subspace::full(3));
  auto b = load_fixture("borel");
  EXPECT_EQ(weight_component(*b.action, chi({0, 0}), 2), Subspace::span(3, {to_coordinates(P(b, "x*y"), 2)}));
  EXPECT_TRUE(weight_component(*b.action, chi({1, 0}), 2).is_zero());
  EXPECT_THROW(weight_component(*load_fixture("sl2quad").action, chi({0, 0, 0}), 1), NotSolvable);
}

TEST(WeightSupport, Examples) {
  auto b = load_fixture("borel");
  auto row = weight_support(*b.action, 2);
  ASSERT_EQ(row.entries.size(), 3u);
  EXPECT_EQ(row.entries[0].chi, chi({2, 0}));
  EXPECT_EQ(row.entries[1].chi, chi({0, 0}));
  EXPECT_EQ(row.entries[2].chi, chi({-2, 0}));
  for (const auto& e : row.entries) EXPECT_EQ(e.dim, 1u);

  auto w = load_fixture("weitzenbock");
  for (long d = 0; d <= 6; ++d) {
    auto r = weight_support(*w.action, d);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_TRUE(r.entries[0].chi.is_zero());
    EXPECT_EQ(r.entries[0].dim, static_cast<std::size_t>(d + 1));
  }
}

TEST(WeightSupport, RotationDoesNotSplit) {
  auto r = load_fixture("rotation");
  try {
    weight_support(*r.action, 1);
    FAIL() << "expected NotSplitOverBaseField";
  } catch (const NotSplitOverBaseField& e) {
    EXPECT_EQ(e.factor(), "t^2 + 1");
    EXPECT_NE(std::string(e.what()).find("t^2 + 1"), std::string::npos);
  }
  // Degree 0 is just the constants and splits.
  EXPECT_EQ(weight_support(*r.action, 0).entries.size(), 1u);
}

TEST(SupportSemigroup, Examples) {
  auto b = load_fixture("borel");
  auto rep = support_semigroup(*b.action, 3);
  EXPECT_TRUE(rep.closed);
  for (long d = 0; d <= 3; ++d) {
    const auto& row = rep.table.row(d);
    EXPECT_EQ(row.entries.size(), static_cast<std::size_t>(d + 1));
    for (const auto& e : row.entries) {
      auto h = e.chi.values[0].get_num().get_si();
      EXPECT_EQ((h - d) % 2, 0);
      EXPECT_LE(std::abs(h), d);
      EXPECT_EQ(e.chi.values[1], 0);
    }
  }
  auto w = support_semigroup(*load_fixture("weitzenbock").action, 5);
  EXPECT_TRUE(w.closed);
  EXPECT_EQ(w.table.first_appearances().size(), 1u);

  auto t = support_semigroup(*load_fixture("torus").action, 2);
  std::vector<long> seen;
  for (const auto& [c, d] : t.table.first_appearances()) seen.push_back(c.values[0].get_num().get_si());
  EXPECT_EQ(seen, (std::vector<long>{2, 1, 0, -1, -2}));
}

TEST(CheckGamma, Examples) {
  auto b = load_fixture("borel");
  auto table = support_table(*b.action, 6);
  EXPECT_TRUE(check_gamma(GammaSelector::zero(), table, *b.lie).ok);

  auto ge0 = GammaSelector::rule({1, 0}, GammaSelector::Relation::Ge0);
  auto r = check_gamma(ge0, table, *b.lie);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.kind, "absorption");
  EXPECT_TRUE(ge0.contains(r.left));
  EXPECT_FALSE(ge0.contains(r.right));
  EXPECT_TRUE(ge0.contains(r.left + r.right));

  auto torus = load_fixture("torus");
  auto even = GammaSelector::rule({1}, GammaSelector::Relation::Mod, 2);
  EXPECT_TRUE(check_gamma(even, support_table(*torus.action, 6), *torus.lie).ok);

  // {1} is not closed under addition.
  auto one = GammaSelector::explicit_set({chi({1})});
  auto s = check_gamma(one, support_table(*torus.action, 4), *torus.lie);
  ASSERT_FALSE(s.ok);
  EXPECT_EQ(s.kind, "subsemigroup");
}

TEST(CheckGamma, PairsBeyondTruncationAreIgnored) {
  auto torus = load_fixture("torus");
  // {0, 1}: 1 + 1 = 2 needs degree 2, so it is only caught once D >= 2.
  auto g = GammaSelector::explicit_set({chi({0}), chi({1})});
  EXPECT_TRUE(check_gamma(g, support_table(*torus.action, 1), *torus.lie).ok);
  EXPECT_FALSE(check_gamma(g, support_table(*torus.action, 2), *torus.lie).ok);
}

TEST(Selector, MembershipRules) {
  auto ge0 = GammaSelector::rule({1, -1}, GammaSelector::Relation::Ge0);
  EXPECT_TRUE(ge0.contains(chi({2, 1})));
  EXPECT_FALSE(ge0.contains(chi({0, 1})));
  auto eq0 = GammaSelector::rule({1, 0}, GammaSelector::Relation::Eq0);
  EXPECT_TRUE(eq0.contains(chi({0, 7})));
  auto even = GammaSelector::rule({1}, GammaSelector::Relation::Mod, 2);
  EXPECT_TRUE(even.contains(chi({-4})));
  EXPECT_FALSE(even.contains(chi({3})));
  EXPECT_FALSE(even.contains(Character{{Rational(1, 2)}}));
  EXPECT_THROW(GammaSelector::rule({1}, GammaSelector::Relation::Mod, 0), InvalidArgument);
  EXPECT_TRUE(GammaSelector::explicit_set({}).chars().empty());
}

TEST(GammaGenerators, Examples) {
  auto b = load_fixture("borel");
  auto g = gamma_generators(*b.action, GammaSelector::zero(), 8);
  ASSERT_EQ(g.generators.size(), 1u);
  EXPECT_EQ(to_string(g.generators[0].element), "x*y");

  auto w = load_fixture("weitzenbock");
  auto gw = gamma_generators(*w.action, GammaSelector::zero(), 8);
  ASSERT_EQ(gw.generators.size(), 2u);
  EXPECT_EQ(to_string(gw.generators[0].element), "x");
  EXPECT_EQ(to_string(gw.generators[1].element), "y");

  auto t = load_fixture("torus");
  auto gt = gamma_generators(*t.action, GammaSelector::rule({1}, GammaSelector::Relation::Mod, 2), 6);
  std::vector<std::string> names;
  for (const auto& x : gt.generators) names.push_back(to_string(x.element));
  EXPECT_EQ(names, (std::vector<std::string>{"x^2", "x*y", "y^2"}));

  EXPECT_THROW(gamma_generators(*b.action, GammaSelector::rule({1, 0}, GammaSelector::Relation::Ge0), 4), GammaViolation);
  EXPECT_THROW(gamma_generators(*load_fixture("sl2quad").action, GammaSelector::zero(), 4), NotSolvable);
}

TEST(GammaGenerators, ProductSpanEqualsComponent) {
  auto t = load_fixture("torus");
  auto even = GammaSelector::rule({1}, GammaSelector::Relation::Mod, 2);
  auto g = gamma_generators(*t.action, even, 6);
  for (long d = 0; d <= 6; ++d)
    EXPECT_EQ(oracle::ring_span(t.sig, g.generators, d), gamma_component(weight_decomposition(*t.action, d), even, d + 1));
}

TEST(WeightProperties, DecompositionCompleteAndMatchesMonomialWeights) {
  for (auto name : {"borel", "torus"}) {
    auto p = load_fixture(name);
    for (long d = 0; d <= 8; ++d) {
      auto row = weight_support(*p.action, d);
      EXPECT_EQ(row.total_dim(), static_cast<std::size_t>(d + 1));
      auto oracle_weights = monomial_weights(d);
      EXPECT_EQ(row.entries.size(), oracle_weights.size());
      for (const auto& [h, n] : oracle_weights) {
        Character c;
        c.values.assign(p.lie->dim(), Rational(0));
        c.values[0] = h;
        EXPECT_EQ(row.dim_of(c), n);
      }
    }
  }
}

TEST(WeightProperties, DistinctComponentsIntersectTrivially) {
  auto p = load_fixture("borel");
  for (long d = 0; d <= 6; ++d) {
    auto pieces = weight_decomposition(*p.action, d);
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 1; j < pieces.size(); ++j)
        EXPECT_TRUE(intersect(pieces[i].space, pieces[j].space).is_zero());
  }
}

TEST(WeightProperties, ProductRule) {
  std::mt19937 rng(7);
  std::size_t checked = 0;
  for (auto name : {"borel", "torus", "weitzenbock"}) {
    auto p = load_fixture(name);
    std::vector<std::vector<WeightPiece>> pieces;
    for (long d = 0; d <= 6; ++d) pieces.push_back(weight_decomposition(*p.action, d));
    std::uniform_int_distribution<long> deg(0, 3);
    for (int t = 0; t < 80; ++t) {
      long i = deg(rng), j = deg(rng);
      const auto& a = pieces[i][std::uniform_int_distribution<std::size_t>(0, pieces[i].size() - 1)(rng)];
      const auto& b = pieces[j][std::uniform_int_distribution<std::size_t>(0, pieces[j].size() - 1)(rng)];
      auto f = from_coordinates(p.sig, i, oracle::random_combination(rng, a.space));
      auto g = from_coordinates(p.sig, j, oracle::random_combination(rng, b.space));
      EXPECT_TRUE(membership(to_coordinates(f * g, i + j), weight_component(*p.action, a.chi + b.chi, i + j)));
      ++checked;
    }
  }
  EXPECT_GE(checked, 200u);
}

TEST(WeightProperties, GammaClosureAndInvariantsInZeroComponent) {
  std::mt19937 rng(8);
  auto t = load_fixture("torus");
  auto even = GammaSelector::rule({1}, GammaSelector::Relation::Mod, 2);
  for (int k = 0; k < 20; ++k) {
    long i = k % 4, j = (k / 4) % 3;
    auto si = gamma_component(weight_decomposition(*t.action, i), even, i + 1);
    auto sj = gamma_component(weight_decomposition(*t.action, j), even, j + 1);
    auto f = from_coordinates(t.sig, i, oracle::random_combination(rng, si));
    auto g = from_coordinates(t.sig, j, oracle::random_combination(rng, sj));
    EXPECT_TRUE(membership(to_coordinates(f * g, i + j),
                           gamma_component(weight_decomposition(*t.action, i + j), even, i + j + 1)));
  }
  for (auto name : {"borel", "torus", "weitzenbock"}) {
    auto p = load_fixture(name);
    Character zero;
    zero.values.assign(p.lie->dim(), Rational(0));
    for (long d = 0; d <= 6; ++d)
      EXPECT_TRUE(weight_component(*p.action, zero, d).contains(invariants_degree(*p.action, d)));
  }
}

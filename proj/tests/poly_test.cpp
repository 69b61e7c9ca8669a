#include <gtest/gtest.h>

#include <map>
#include <random>

#include "gradinv/poly.hpp"

using namespace gradinv;

namespace {

SignaturePtr xy() { return make_signature({"x", "y"}, {1, 1}); }
SignaturePtr abc() { return make_signature({"a", "b", "c"}, {1, 1, 1}); }

using TermList = std::map<std::vector<std::uint32_t>, Rational>;

TermList term_list(const Polynomial& f) {
  TermList t;
  for (const auto& [m, c] : f.terms()) t[m.exponents] = c;
  return t;
}

// Term-by-term distributive expansion, independent of Polynomial::operator*.
TermList distribute(const TermList& a, const TermList& b) {
  TermList r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r[e] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

// Brute-force count of exponent tuples (each entry 0..d) of weighted degree d.
std::size_t brute_force_count(const std::vector<int>& degrees, long d) {
  std::vector<long> e(degrees.size(), 0);
  std::size_t count = 0;
  for (;;) {
    long w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * degrees[i];
    if (w == d) ++count;
    std::size_t k = 0;
    while (k < e.size() && ++e[k] > d) e[k++] = 0;
    if (k == e.size()) break;
  }
  return count;
}

Polynomial random_poly(const SignaturePtr& sig, std::mt19937& rng, int max_deg, int terms) {
  std::uniform_int_distribution<int> exp(0, max_deg), coef(-5, 5), den(1, 3);
  Polynomial p(sig);
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::one(sig->size());
    for (auto& e : m.exponents) e = static_cast<std::uint32_t>(exp(rng));
    p.add_term(m, ratio(coef(rng), den(rng)));
  }
  return p;
}

Polynomial random_homogeneous(const SignaturePtr& sig, std::mt19937& rng, long d) {
  auto basis = monomial_basis(*sig, d);
  std::uniform_int_distribution<int> coef(-4, 4);
  Polynomial p(sig);
  for (const auto& m : basis) p.add_term(m, Rational(coef(rng)));
  return p;
}

}  // namespace

TEST(ParsePoly, TwoTermExample) {
  auto f = parse_poly("x^2*y - 3/2*y^3", xy());
  EXPECT_EQ(f.term_count(), 2u);
  EXPECT_EQ(f.coefficient(Monomial{{2, 1}}), Rational(1));
  EXPECT_EQ(f.coefficient(Monomial{{0, 3}}), Rational(-3, 2));
  EXPECT_EQ(to_string(f), "x^2*y - 3/2*y^3");
}

TEST(ParsePoly, ZeroIsEmpty) {
  EXPECT_TRUE(parse_poly("0", xy()).is_zero());
  EXPECT_TRUE(parse_poly("0", abc()).is_zero());
  EXPECT_TRUE(parse_poly("x - x", xy()).is_zero());
  EXPECT_EQ(to_string(parse_poly("0", xy())), "0");
}

TEST(ParsePoly, DiscriminantMatchesHandBuiltTerms) {
  auto sig = abc();
  auto f = parse_poly("b^2 - 4*a*c", sig);
  TermList expected{{{0, 2, 0}, Rational(1)}, {{1, 0, 1}, Rational(-4)}};
  EXPECT_EQ(term_list(f), expected);
  EXPECT_EQ(term_list(parse_poly(to_string(f), sig)), expected);
}

TEST(ParsePoly, WhitespaceAndRepeatedFactors) {
  auto f = parse_poly("  -2 * x * x *y+ 7/14 ", xy());
  EXPECT_EQ(f.coefficient(Monomial{{2, 1}}), Rational(-2));
  EXPECT_EQ(f.coefficient(Monomial{{0, 0}}), Rational(1, 2));
}

TEST(ParsePoly, SyntaxErrorsCarryPosition) {
  try {
    parse_poly("x + * y", xy());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_poly("", xy()), ParseError);
  EXPECT_THROW(parse_poly("x^0", xy()), ParseError);
  EXPECT_THROW(parse_poly("x^", xy()), ParseError);
  EXPECT_THROW(parse_poly("3/0*x", xy()), ParseError);
  EXPECT_THROW(parse_poly("x y", xy()), ParseError);
  EXPECT_THROW(parse_poly("x*2", xy()), ParseError);
}

TEST(ParsePoly, UnknownVariable) {
  try {
    parse_poly("x + z^2", xy());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_NE(std::string(e.what()).find("unknown variable 'z'"), std::string::npos);
  }
}

TEST(Arithmetic, AddExamples) {
  auto sig = xy();
  auto x = parse_poly("x", sig), y = parse_poly("y", sig);
  auto f = parse_poly("x^2 - 3*y", sig);
  EXPECT_EQ(f + Polynomial(sig), f);
  EXPECT_TRUE((x + parse_poly("-1*x", sig)).is_zero());
  EXPECT_EQ((x + y) + (x - y), parse_poly("2*x", sig));
}

TEST(Arithmetic, MulExamples) {
  auto sig = xy();
  auto f = parse_poly("x^2 - 3*y + 1/3", sig);
  EXPECT_EQ(f * Polynomial::constant(sig, 1), f);
  EXPECT_EQ(parse_poly("x", sig) * parse_poly("y", sig), parse_poly("x*y", sig));
}

TEST(Arithmetic, DiscriminantSquaredByDistribution) {
  auto sig = abc();
  auto d = parse_poly("b^2 - 4*a*c", sig);
  auto sq = d * d;
  EXPECT_EQ(term_list(sq), distribute(term_list(d), term_list(d)));
  EXPECT_EQ(sq, parse_poly("b^4 - 8*a*b^2*c + 16*a^2*c^2", sig));
}

TEST(Arithmetic, SignatureMismatch) {
  auto f = parse_poly("x", xy());
  auto g = parse_poly("a", abc());
  EXPECT_THROW(f + g, SignatureMismatch);
  EXPECT_THROW(f * g, SignatureMismatch);
  EXPECT_THROW(add(f, g), SignatureMismatch);
  EXPECT_THROW(mul(f, g), SignatureMismatch);
  EXPECT_EQ(add(f, Polynomial(xy())), f);
  EXPECT_EQ(mul(f, parse_poly("1", xy())), f);
  // Structurally equal signatures interoperate.
  EXPECT_NO_THROW(f + parse_poly("y", xy()));
}

TEST(WeightedDegree, Examples) {
  EXPECT_EQ(weighted_degree(parse_poly("x^2*y", xy())), Degree::homogeneous(3));
  EXPECT_EQ(weighted_degree(parse_poly("x + y^2", xy())), Degree::inhomogeneous());
  auto w = make_signature({"x", "y"}, {1, 2});
  EXPECT_EQ(weighted_degree(parse_poly("x*y", w)), Degree::homogeneous(3));
  EXPECT_TRUE(weighted_degree(parse_poly("0", w)).is_any());
}

TEST(MonomialBasis, Examples) {
  auto b2 = monomial_basis(*xy(), 2);
  ASSERT_EQ(b2.size(), 3u);
  EXPECT_EQ(b2[0], Monomial({{2, 0}}));
  EXPECT_EQ(b2[1], Monomial({{1, 1}}));
  EXPECT_EQ(b2[2], Monomial({{0, 2}}));
  auto b0 = monomial_basis(*xy(), 0);
  ASSERT_EQ(b0.size(), 1u);
  EXPECT_TRUE(b0[0].is_one());
  auto w = make_signature({"x", "y"}, {1, 2});
  auto b4 = monomial_basis(*w, 4);
  ASSERT_EQ(b4.size(), 3u);
  EXPECT_EQ(b4[0], Monomial({{4, 0}}));
  EXPECT_EQ(b4[1], Monomial({{2, 1}}));
  EXPECT_EQ(b4[2], Monomial({{0, 2}}));
}

TEST(MonomialBasis, SizeMatchesBruteForce) {
  std::vector<std::vector<int>> weightings{{1, 1}, {1, 2}, {1, 1, 1}, {2, 3, 1}, {1, 1, 2, 3}};
  for (const auto& wts : weightings) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < wts.size(); ++i) names.push_back("v" + std::to_string(i));
    auto sig = make_signature(names, wts);
    for (long d = 0; d <= 9; ++d) {
      auto basis = monomial_basis(*sig, d);
      EXPECT_EQ(basis.size(), brute_force_count(wts, d)) << "d=" << d;
      for (std::size_t i = 1; i < basis.size(); ++i) EXPECT_TRUE(graded_lex_before(*sig, basis[i - 1], basis[i]));
    }
  }
}

TEST(Coordinates, Examples) {
  auto sig = xy();
  EXPECT_EQ(to_coordinates(parse_poly("x*y", sig), 2), (Vector{0, 1, 0}));
  EXPECT_EQ(to_coordinates(Polynomial(sig), 2), (Vector{0, 0, 0}));
  // basis of degree 2 over a,b,c: a^2, ab, ac, b^2, bc, c^2
  EXPECT_EQ(to_coordinates(parse_poly("b^2 - 4*a*c", abc()), 2), (Vector{0, 0, -4, 1, 0, 0}));
  EXPECT_THROW(to_coordinates(parse_poly("x", sig), 2), NotHomogeneous);
  EXPECT_THROW(to_coordinates(parse_poly("x + y^2", sig), 2), NotHomogeneous);
}

TEST(Signature, RejectsBadDegreesAndNames) {
  EXPECT_THROW(make_signature({"x"}, {0}), ParseError);
  EXPECT_THROW(make_signature({"x", "x"}, {1, 1}), ParseError);
  EXPECT_THROW(make_signature({"1x"}, {1}), ParseError);
  EXPECT_THROW(make_signature({"x"}, {1, 1}), DimensionMismatch);
}

TEST(PolyProperties, RingAxioms) {
  std::mt19937 rng(20240611);
  auto sig = make_signature({"x", "y", "z"}, {1, 2, 1});
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_poly(sig, rng, 3, 4), g = random_poly(sig, rng, 3, 4), h = random_poly(sig, rng, 2, 3);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ(term_list(f * g), distribute(term_list(f), term_list(g)));
  }
}

TEST(PolyProperties, ParseUnparseParse) {
  std::mt19937 rng(7);
  auto sig = make_signature({"x", "y", "z"}, {1, 2, 1});
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_poly(sig, rng, 4, 5);
    auto text = to_string(f);
    auto g = parse_poly(text, sig);
    EXPECT_EQ(g, f) << text;
    EXPECT_EQ(to_string(g), text);
  }
}

TEST(PolyProperties, CoordinatesRoundTripAndHomogeneousProducts) {
  std::mt19937 rng(99);
  auto sig = make_signature({"x", "y", "z"}, {1, 2, 1});
  for (long d = 0; d <= 6; ++d) {
    std::size_t n = graded_dimension(*sig, d);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 10; ++trial) {
      Vector v(n);
      for (auto& q : v) q = ratio(coef(rng), 1 + (coef(rng) + 9) % 4);
      auto f = from_coordinates(sig, d, v);
      EXPECT_EQ(to_coordinates(f, d), v);
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    long p = trial % 4, q = (trial / 4) % 3 + 1;
    auto f = random_homogeneous(sig, rng, p), g = random_homogeneous(sig, rng, q);
    if (f.is_zero() || g.is_zero()) continue;
    EXPECT_EQ(weighted_degree(f * g), Degree::homogeneous(p + q));
  }
}

TEST(PrimitivePart, ScalesToCoprimeIntegers) {
  auto f = parse_poly("a*c - 1/4*b^2", abc());
  EXPECT_EQ(to_string(primitive_part(f)), "4*a*c - b^2");
  EXPECT_EQ(primitive_part(Rational(-3) * f), primitive_part(f));
}

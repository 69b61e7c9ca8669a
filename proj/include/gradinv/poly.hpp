#pragma once

// Sparse multivariate polynomials over the rationals with a weighted grading.
//
// Terms are stored in a std::map keyed by exponent tuple, so the representation is
// canonical: no duplicate monomials, no zero coefficients, and equality of polynomials is
// equality of the stored term maps (plus signature equality).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gradinv/errors.hpp"
#include "gradinv/rational.hpp"

namespace gradinv {

/// Variable names and positive weights of a graded polynomial ring k[x_1..x_n].
class AlgebraSignature {
 public:
  AlgebraSignature(std::vector<std::string> names, std::vector<int> degrees)
      : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size())
      throw DimensionMismatch("signature: " + std::to_string(names_.size()) + " names but " +
                              std::to_string(degrees_.size()) + " degrees");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!valid_identifier(names_[i]))
        throw ParseError(0, "invalid variable name '" + names_[i] + "'");
      if (!seen.insert(names_[i]).second)
        throw ParseError(0, "duplicate variable name '" + names_[i] + "'");
      if (degrees_[i] < 1)
        throw ParseError(0, "variable '" + names_[i] + "' has degree " +
                                std::to_string(degrees_[i]) + "; degrees must be >= 1");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const AlgebraSignature&) const = default;

  static bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
};

using SignaturePtr = std::shared_ptr<const AlgebraSignature>;

inline SignaturePtr make_signature(std::vector<std::string> names, std::vector<int> degrees) {
  return std::make_shared<const AlgebraSignature>(std::move(names), std::move(degrees));
}

inline bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && *a == *b);
}

struct Monomial {
  std::vector<std::uint32_t> exponents;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  static Monomial one(std::size_t nvars) { return Monomial{std::vector<std::uint32_t>(nvars, 0)}; }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < r.exponents.size(); ++i) r.exponents[i] += o.exponents[i];
    return r;
  }

  bool is_one() const {
    return std::all_of(exponents.begin(), exponents.end(), [](auto e) { return e == 0; });
  }

  long weighted_degree(const AlgebraSignature& sig) const {
    long d = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      d += static_cast<long>(exponents[i]) * sig.degree(i);
    return d;
  }
};

/// Graded-lex comparison: higher weighted degree first, then lexicographically larger
/// exponent tuple first. This is the order of monomial_basis and of printed terms.
inline bool graded_lex_before(const AlgebraSignature& sig, const Monomial& a, const Monomial& b) {
  long da = a.weighted_degree(sig), db = b.weighted_degree(sig);
  if (da != db) return da > db;
  return a.exponents > b.exponents;
}

/// Weighted degree of a polynomial: a number, "inhomogeneous", or "any" for zero.
struct Degree {
  enum class Kind { Homogeneous, Inhomogeneous, Any };
  Kind kind = Kind::Any;
  long value = 0;

  static Degree homogeneous(long d) { return {Kind::Homogeneous, d}; }
  static Degree inhomogeneous() { return {Kind::Inhomogeneous, 0}; }
  static Degree any() { return {Kind::Any, 0}; }

  bool is_homogeneous() const { return kind == Kind::Homogeneous; }
  bool is_any() const { return kind == Kind::Any; }
  /// True if a polynomial with this degree may live in S^d (zero lives everywhere).
  bool fits(long d) const { return kind == Kind::Any || (kind == Kind::Homogeneous && value == d); }
  bool operator==(const Degree&) const = default;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Polynomial(SignaturePtr sig) : sig_(std::move(sig)) {}

  static Polynomial constant(SignaturePtr sig, const Rational& c) {
    Polynomial p(sig);
    if (c != 0) p.terms_.emplace(Monomial::one(p.sig_->size()), c);
    return p;
  }

  static Polynomial variable(SignaturePtr sig, std::size_t i) {
    Monomial m = Monomial::one(sig->size());
    m.exponents.at(i) = 1;
    return monomial(std::move(sig), std::move(m), Rational(1));
  }

  static Polynomial monomial(SignaturePtr sig, Monomial m, const Rational& c) {
    if (m.exponents.size() != sig->size())
      throw DimensionMismatch("monomial has " + std::to_string(m.exponents.size()) +
                              " exponents, signature has " + std::to_string(sig->size()) +
                              " variables");
    Polynomial p(std::move(sig));
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const SignaturePtr& signature() const noexcept { return sig_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Adds c·m in place, keeping the canonical form.
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * Rational(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial r(a.sig_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return same_signature(sig_, o.sig_) && terms_ == o.terms_;
  }

  /// Partial derivative with respect to variable i.
  Polynomial derivative(std::size_t i) const {
    Polynomial r(sig_);
    for (const auto& [m, c] : terms_) {
      auto e = m.exponents.at(i);
      if (e == 0) continue;
      Monomial n = m;
      n.exponents[i] = e - 1;
      r.add_term(n, c * Rational(e));
    }
    return r;
  }

  /// Terms in graded-lex order (highest first).
  std::vector<std::pair<Monomial, Rational>> sorted_terms() const {
    std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) {
      return graded_lex_before(*sig_, a.first, b.first);
    });
    return v;
  }

 private:
  void check_same(const Polynomial& o) const {
    if (!same_signature(sig_, o.sig_)) throw SignatureMismatch("polynomials over different signatures");
  }

  SignaturePtr sig_;
  TermMap terms_;
};

inline Degree weighted_degree(const Polynomial& f) {
  if (f.is_zero()) return Degree::any();
  std::optional<long> d;
  for (const auto& [m, c] : f.terms()) {
    long md = m.weighted_degree(*f.signature());
    if (!d) d = md;
    else if (*d != md) return Degree::inhomogeneous();
  }
  return Degree::homogeneous(*d);
}

/// Multiplies out a monomial string "x^2*y" (coefficient excluded); empty for the unit monomial.
inline std::string monomial_to_string(const AlgebraSignature& sig, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += sig.name(i);
    if (m.exponents[i] > 1) s += '^' + std::to_string(m.exponents[i]);
  }
  return s;
}

/// Appends one signed term to an expression string in the parser's grammar.
inline void append_term(std::string& out, const Rational& c, const std::string& mono) {
  bool neg = c < 0;
  Rational a = neg ? Rational(-c) : c;
  if (out.empty()) {
    if (neg) out += '-';
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += to_string(a);
  } else if (a == 1) {
    out += mono;
  } else {
    out += to_string(a) + "*" + mono;
  }
}

// Named forms of the operators; both throw SignatureMismatch across signatures.
inline Polynomial add(const Polynomial& f, const Polynomial& g) { return f + g; }
inline Polynomial mul(const Polynomial& f, const Polynomial& g) { return f * g; }

/// Serializes in graded-lex order using the parser grammar; parse(to_string(f)) == f.
inline std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.sorted_terms()) append_term(out, c, monomial_to_string(*f.signature(), m));
  return out;
}

// ---------------------------------------------------------------------------------------
// Parser
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   coeff  := integer | integer '/' integer
//   factor := ident ('^' positive-integer)?

using RawTerm = std::pair<std::vector<std::uint32_t>, Rational>;

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> out;
    skip_ws();
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
      skip_ws();
    }
    out.push_back(term(negate));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+', '-' or end of input");
      ++pos_;
      skip_ws();
      out.push_back(term(c == '-'));
    }
    return out;
  }

 private:
  RawTerm term(bool negate) {
    RawTerm t{std::vector<std::uint32_t>(names_.size(), 0), Rational(1)};
    skip_ws();
    if (at_end()) fail("expected a term");
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer num = integer();
      Integer den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        den = integer();
        if (den == 0) fail_at(at, "zero denominator");
      }
      t.second = Rational(num, den);
      t.second.canonicalize();
    } else {
      factor(t.first);
    }
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      skip_ws();
      factor(t.first);
    }
    if (negate) t.second = -t.second;
    return t;
  }

  void factor(std::vector<std::uint32_t>& exps) {
    skip_ws();
    std::size_t start = pos_;
    if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      fail("expected a variable name");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) fail_at(start, "unknown variable '" + name + "'");
    std::uint32_t e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      Integer v = integer();
      if (v < 1) fail_at(at, "exponent must be a positive integer");
      if (v > 1000000) fail_at(at, "exponent too large");
      e = static_cast<std::uint32_t>(v.get_ui());
    }
    exps[static_cast<std::size_t>(it - names_.begin())] += e;
  }

  Integer integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw ParseError(at, msg);
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression into raw (exponents, coefficient) terms over the given names,
/// without merging duplicates. Used directly for module expressions.
inline std::vector<RawTerm> parse_terms(std::string_view text, const std::vector<std::string>& names) {
  return detail::ExprParser(text, names).parse();
}

inline Polynomial parse_poly(std::string_view text, const SignaturePtr& sig) {
  Polynomial p(sig);
  for (auto& [exps, c] : parse_terms(text, sig->names())) p.add_term(Monomial{std::move(exps)}, c);
  return p;
}

// ---------------------------------------------------------------------------------------
// Graded pieces

/// All monomials of weighted degree exactly d, in graded-lex (descending lex) order.
inline std::vector<Monomial> monomial_basis(const AlgebraSignature& sig, long d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<std::uint32_t> e(sig.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, long remaining) -> void {
    if (i + 1 == sig.size()) {
      if (remaining % sig.degree(i) == 0) {
        e[i] = static_cast<std::uint32_t>(remaining / sig.degree(i));
        out.push_back(Monomial{e});
      }
      return;
    }
    for (long k = remaining / sig.degree(i); k >= 0; --k) {
      e[i] = static_cast<std::uint32_t>(k);
      self(self, i + 1, remaining - k * sig.degree(i));
    }
    e[i] = 0;
  };
  if (sig.size() == 0) {
    if (d == 0) out.push_back(Monomial{});
    return out;
  }
  rec(rec, 0, d);
  return out;
}

inline std::size_t graded_dimension(const AlgebraSignature& sig, long d) {
  return monomial_basis(sig, d).size();
}

/// Coordinates of f in monomial_basis(sig, d). Throws NotHomogeneous if f is not in S^d.
inline std::vector<Rational> to_coordinates(const Polynomial& f, long d) {
  const auto& sig = *f.signature();
  auto basis = monomial_basis(sig, d);
  std::vector<Rational> v(basis.size());
  if (f.is_zero()) return v;
  if (!weighted_degree(f).fits(d))
    throw NotHomogeneous("'" + to_string(f) + "' is not homogeneous of degree " + std::to_string(d));
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  for (const auto& [m, c] : f.terms()) v[index.at(m)] = c;
  return v;
}

inline Polynomial from_coordinates(const SignaturePtr& sig, long d, const std::vector<Rational>& v) {
  auto basis = monomial_basis(*sig, d);
  if (basis.size() != v.size())
    throw DimensionMismatch("coordinate vector of length " + std::to_string(v.size()) +
                            " for degree " + std::to_string(d) + " of dimension " +
                            std::to_string(basis.size()));
  Polynomial p(sig);
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis[i], v[i]);
  return p;
}

/// Scales f to coprime integer coefficients with a positive leading (graded-lex first) term.
inline Polynomial primitive_part(const Polynomial& f) {
  if (f.is_zero()) return f;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (f.sorted_terms().front().second < 0) scale = -scale;
  return f * scale;
}

}  // namespace gradinv

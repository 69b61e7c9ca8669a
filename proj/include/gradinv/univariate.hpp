#pragma once

// Univariate polynomials over Q, used for characteristic polynomials and their rational roots.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gradinv/linalg.hpp"
#include "gradinv/rational.hpp"

namespace gradinv {

/// Dense univariate polynomial; coeffs[i] multiplies t^i. Trailing zeros are trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rational& a) { return UPoly({a}); }
  /// t - r
  static UPoly linear_root(const Rational& r) { return UPoly({-r, Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational eval(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (c_.empty()) return *this;
    UPoly r = *this;
    Rational inv = 1 / leading();
    for (auto& q : r.c_) q *= inv;
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const Rational& s, const UPoly& a) {
    UPoly r = a;
    for (auto& q : r.c_) q *= s;
    r.trim();
    return r;
  }
  bool operator==(const UPoly&) const = default;

  /// Euclidean division: returns (quotient, remainder).
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw DimensionMismatch("polynomial division by zero");
    std::vector<Rational> rem = c_, quo;
    long dd = d.degree();
    if (degree() < dd) return {UPoly(), *this};
    quo.assign(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    Rational inv = 1 / d.leading();
    for (long k = degree(); k >= dd; --k) {
      Rational f = rem[static_cast<std::size_t>(k)] * inv;
      if (f == 0) continue;
      quo[static_cast<std::size_t>(k - dd)] = f;
      for (long j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(k - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

  /// Human-readable form in variable `var`, highest power first, e.g. "t^2 + 1".
  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string out;
    for (long k = degree(); k >= 0; --k) {
      const Rational& q = c_[static_cast<std::size_t>(k)];
      if (q == 0) continue;
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      bool neg = q < 0;
      Rational a = neg ? Rational(-q) : q;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      if (mono.empty()) out += gradinv::to_string(a);
      else if (a == 1) out += mono;
      else out += gradinv::to_string(a) + "*" + mono;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// det(tI - M) via similarity reduction to upper Hessenberg form.
inline UPoly characteristic_polynomial(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t p = j + 1;
    while (p < n && h(p, j) == 0) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(p, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, p), h(r, j + 1));
    }
    for (std::size_t k = j + 2; k < n; ++k) {
      if (h(k, j) == 0) continue;
      Rational u = h(k, j) / h(j + 1, j);
      for (std::size_t c = 0; c < n; ++c) h(k, c) -= u * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, k);
    }
  }
  std::vector<UPoly> p(n + 1);
  p[0] = UPoly::constant(1);
  const UPoly t({Rational(0), Rational(1)});
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = (t - UPoly::constant(h(k - 1, k - 1))) * p[k - 1];
    Rational prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod *= h(k - i, k - i - 1);
      if (prod == 0) break;
      p[k] = p[k] - (h(k - i - 1, k - 1) * prod) * p[k - i - 1];
    }
  }
  return p[n];
}

struct RationalRoots {
  /// Distinct rational roots in increasing order with their multiplicities.
  std::vector<std::pair<Rational, std::size_t>> roots;
  /// What remains after dividing out every rational linear factor (monic; 1 if split).
  UPoly remainder;
  bool split() const { return remainder.degree() <= 0; }
};

namespace detail {

inline int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline std::size_t sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sign(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Rational roots of p with multiplicities. The square-free part is rescaled to a monic
/// integer polynomial, whose rational roots are integers; these are isolated by Sturm
/// sequences on half-integer endpoints and then confirmed exactly.
inline RationalRoots rational_roots(const UPoly& p) {
  RationalRoots out;
  if (p.is_zero()) throw DimensionMismatch("rational_roots of the zero polynomial");
  UPoly rest = p.monic();
  if (rest.degree() <= 0) {
    out.remainder = UPoly::constant(1);
    return out;
  }
  UPoly squarefree = rest.divmod(gcd(rest, rest.derivative())).first.monic();

  // Clear denominators: squarefree = g / den with g integral and primitive-ish.
  Integer den = 1;
  for (const auto& q : squarefree.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> g;
  for (const auto& q : squarefree.coeffs()) g.push_back(Integer(q * Rational(den)));
  const long n = squarefree.degree();
  const Integer lead = g.back();
  // h(s) = lead^(n-1) * g(s / lead) is monic with integer coefficients.
  std::vector<Rational> hc(static_cast<std::size_t>(n + 1));
  for (long i = n; i >= 0; --i) {
    // coefficient of s^i is g_i * lead^(n-1-i)
    Integer f = 1;
    for (long k = 0; k < n - 1 - i; ++k) f *= lead;
    if (i == n) hc[static_cast<std::size_t>(i)] = 1;
    else hc[static_cast<std::size_t>(i)] = Rational(g[static_cast<std::size_t>(i)] * f);
  }
  UPoly h(std::move(hc));

  Integer bound = 0;
  for (long i = 0; i < n; ++i) {
    Integer a = abs(h[static_cast<std::size_t>(i)].get_num());
    if (a > bound) bound = a;
  }
  bound += 1;

  std::vector<UPoly> sturm{h, h.derivative()};
  while (!sturm.back().is_zero() && sturm.back().degree() > 0) {
    auto r = sturm[sturm.size() - 2].divmod(sturm.back()).second;
    if (r.is_zero()) break;
    sturm.push_back(Rational(-1) * r);
  }

  const Rational half(1, 2);
  std::vector<Integer> integer_roots;
  // Count roots among the integers lo..hi via Sturm on (lo - 1/2, hi + 1/2].
  auto rec = [&](auto&& self, const Integer& lo, const Integer& hi) -> void {
    std::size_t count = detail::sign_changes(sturm, Rational(lo) - half) -
                        detail::sign_changes(sturm, Rational(hi) + half);
    if (count == 0) return;
    if (lo == hi) {
      if (h.eval(Rational(lo)) == 0) integer_roots.push_back(lo);
      return;
    }
    Integer mid = lo + (hi - lo) / 2;
    self(self, lo, mid);
    self(self, mid + 1, hi);
  };
  rec(rec, -bound, bound);

  for (const auto& s : integer_roots) {
    Rational r(s, lead);
    r.canonicalize();
    std::size_t mult = 0;
    for (;;) {
      auto [q, rem] = rest.divmod(UPoly::linear_root(r));
      if (!rem.is_zero()) break;
      rest = q;
      ++mult;
    }
    out.roots.emplace_back(r, mult);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.remainder = rest.monic();
  return out;
}

}  // namespace gradinv

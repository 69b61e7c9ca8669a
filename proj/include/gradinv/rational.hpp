#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gradinv {

/// Arbitrary-precision exact rational. All arithmetic in the library goes through this type.
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Parses "n" or "n/m" (optional leading sign, no whitespace). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') ++i;
  bool seen_digit = false, seen_slash = false, digit_after_slash = false;
  for (std::size_t k = i; k < text.size(); ++k) {
    char c = text[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash))
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational q;
  q.set_str(s, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

/// n/d in canonical form (the two-argument mpq_class constructor does not canonicalize).
inline Rational ratio(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace gradinv

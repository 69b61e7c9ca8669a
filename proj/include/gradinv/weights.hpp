#pragma once

// Generalized weight spaces for solvable Lie algebra actions, support tables, Γ selectors and
// generator extraction for the subalgebras S_Γ = ⊕_{χ∈Γ} S_χ.
//
// Characters are found by exact rational roots of characteristic polynomials. When the
// action does not split over Q in some degree this is reported, never approximated.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradinv/action.hpp"
#include "gradinv/errors.hpp"
#include "gradinv/invariants.hpp"
#include "gradinv/linalg.hpp"
#include "gradinv/univariate.hpp"

namespace gradinv {

/// A character of g, by its value on each Lie basis element.
struct Character {
  Vector values;

  Character operator+(const Character& o) const {
    if (o.values.size() != values.size()) throw DimensionMismatch("character length mismatch");
    Character r = *this;
    for (std::size_t k = 0; k < values.size(); ++k) r.values[k] += o.values[k];
    return r;
  }
  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Rational& q) { return q == 0; });
  }
  bool operator==(const Character& o) const { return values == o.values; }
  bool operator<(const Character& o) const { return values < o.values; }
};

/// "(H=2, E=0)".
inline std::string to_string(const Character& chi, const LieAlgebra& L) {
  std::string out = "(";
  for (std::size_t k = 0; k < chi.values.size(); ++k) {
    if (k) out += ", ";
    out += L.label(k) + "=" + to_string(chi.values[k]);
  }
  return out + ")";
}

struct WeightPiece {
  Character chi;
  Subspace space;
};

struct SupportEntry {
  Character chi;
  std::size_t dim;
};

/// Nonzero weight components of one degree; characters in descending order.
struct SupportRow {
  long degree = 0;
  std::vector<SupportEntry> entries;

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& e : entries) s += e.dim;
    return s;
  }
  std::size_t dim_of(const Character& chi) const {
    for (const auto& e : entries)
      if (e.chi == chi) return e.dim;
    return 0;
  }
};

struct SupportTable {
  long min_degree = 0;
  long max_degree = 0;
  std::vector<SupportRow> rows;  // rows[k] has degree min_degree + k

  const SupportRow& row(long d) const { return rows.at(static_cast<std::size_t>(d - min_degree)); }

  /// Every character of the table with the lowest degree it appears in, descending by character.
  std::vector<std::pair<Character, long>> first_appearances() const {
    std::map<Character, long> first;
    for (const auto& r : rows)
      for (const auto& e : r.entries) first.emplace(e.chi, r.degree);
    std::vector<std::pair<Character, long>> out(first.rbegin(), first.rend());
    return out;
  }

  bool contains(const Character& chi) const {
    for (const auto& r : rows)
      if (r.dim_of(chi)) return true;
    return false;
  }
};

namespace detail {

inline bool vanishes_on(const Character& chi, const Subspace& brackets) {
  for (const auto& v : brackets.basis()) {
    Rational s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) s += v[k] * chi.values[k];
    if (s != 0) return false;
  }
  return true;
}

/// Simultaneous generalized eigenspace decomposition of the commuting-up-to-nilpotent family
/// mats[j] = ρ(X_j) on an n-dimensional space. `where` names the space in diagnostics.
inline std::vector<WeightPiece> weight_decomposition(const LieAlgebra& L, const std::vector<RatMatrix>& mats,
                                                     std::size_t n, const std::string& where) {
  std::vector<WeightPiece> pieces{{Character{Vector{}}, Subspace::full(n)}};
  if (n == 0) return {};
  for (std::size_t j = 0; j < mats.size(); ++j) {
    auto roots = rational_roots(characteristic_polynomial(mats[j]));
    if (!roots.split()) {
      auto factor = roots.remainder.to_string("t");
      throw NotSplitOverBaseField("characteristic polynomial of rho(" + L.label(j) + ") on " + where +
                                      " has the factor " + factor + " without rational roots",
                                  factor);
    }
    std::vector<std::pair<Rational, Subspace>> kernels;
    for (const auto& [lambda, mult] : roots.roots) kernels.emplace_back(lambda, generalized_nullspace(mats[j], lambda));
    std::vector<WeightPiece> next;
    for (const auto& p : pieces)
      for (const auto& [lambda, ker] : kernels) {
        auto s = intersect(p.space, ker);
        if (s.is_zero()) continue;
        Character chi = p.chi;
        chi.values.push_back(lambda);
        next.push_back({std::move(chi), std::move(s)});
      }
    pieces = std::move(next);
  }
  std::size_t total = 0;
  for (const auto& p : pieces) total += p.space.dim();
  if (total != n)
    throw NotSplitOverBaseField("weight components on " + where + " have total dimension " +
                                    std::to_string(total) + " instead of " + std::to_string(n),
                                "");
  const auto brackets = commutator_subspace(L);
  for (const auto& p : pieces)
    if (!vanishes_on(p.chi, brackets))
      throw SplitFailure("weight " + to_string(p.chi, L) + " on " + where + " does not vanish on [g,g]");
  std::sort(pieces.begin(), pieces.end(), [](const WeightPiece& a, const WeightPiece& b) { return b.chi < a.chi; });
  return pieces;
}

inline SupportRow support_row(long d, const std::vector<WeightPiece>& pieces) {
  SupportRow r{d, {}};
  for (const auto& p : pieces) r.entries.push_back({p.chi, p.space.dim()});
  return r;
}

inline void require_solvable(const LieAlgebra& L) {
  if (!is_solvable(L)) throw NotSolvable();
}

inline std::vector<RatMatrix> basis_action_matrices(const DerivationAction& A, long d) {
  std::vector<RatMatrix> mats;
  for (std::size_t j = 0; j < A.lie().dim(); ++j) mats.push_back(action_matrix(A, j, d));
  return mats;
}

}  // namespace detail

/// All nonzero components S^d_χ, descending by χ.
inline std::vector<WeightPiece> weight_decomposition(const DerivationAction& A, long d) {
  detail::require_solvable(A.lie());
  return detail::weight_decomposition(A.lie(), detail::basis_action_matrices(A, d),
                                      graded_dimension(*A.signature(), d), "S^" + std::to_string(d));
}

/// S^d_χ = ∩_j ker (ρ(X_j) − χ(X_j))^n, n = dim S^d.
inline Subspace weight_component(const DerivationAction& A, const Character& chi, long d) {
  detail::require_solvable(A.lie());
  if (chi.values.size() != A.lie().dim()) throw DimensionMismatch("character length != dim g");
  const std::size_t n = graded_dimension(*A.signature(), d);
  Subspace s = Subspace::full(n);
  for (std::size_t j = 0; j < A.lie().dim(); ++j) s = intersect(s, generalized_nullspace(action_matrix(A, j, d), chi.values[j]));
  return s;
}

inline SupportRow weight_support(const DerivationAction& A, long d) {
  return detail::support_row(d, weight_decomposition(A, d));
}

struct SemigroupReport {
  SupportTable table;
  bool closed = true;
  std::string violation;
};

inline SupportTable support_table(const DerivationAction& A, long D) {
  if (D < 0) throw InvalidArgument("truncation degree must be >= 0");
  SupportTable t{0, D, {}};
  for (long d = 0; d <= D; ++d) t.rows.push_back(weight_support(A, d));
  return t;
}

/// Support table to degree D plus a truncated check that first appearances add up to table
/// characters whenever their degrees sum to at most D.
inline SemigroupReport support_semigroup(const DerivationAction& A, long D) {
  SemigroupReport r{support_table(A, D), true, ""};
  auto firsts = r.table.first_appearances();
  for (const auto& [a, da] : firsts)
    for (const auto& [b, db] : firsts) {
      if (da + db > D) continue;
      if (!r.table.row(da + db).dim_of(a + b)) {
        r.closed = false;
        r.violation = to_string(a, A.lie()) + " + " + to_string(b, A.lie()) + " missing in degree " +
                      std::to_string(da + db);
        return r;
      }
    }
  return r;
}

/// A (possibly infinite) set of characters: {0}, an explicit list, or a rule on ⟨u, χ⟩.
class CharacterSelector {
 public:
  enum class Kind { Zero, Explicit, Rule };
  /// `Mod` (⟨u,χ⟩ an integer divisible by `modulus`) extends the eq0/ge0 rules; it expresses
  /// parity conditions such as "χ(X) even".
  enum class Relation { Eq0, Ge0, Mod };

  static CharacterSelector zero() { return CharacterSelector(Kind::Zero); }
  static CharacterSelector explicit_set(std::vector<Character> chars) {
    CharacterSelector s(Kind::Explicit);
    std::sort(chars.begin(), chars.end());
    chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
    s.chars_ = std::move(chars);
    return s;
  }
  static CharacterSelector rule(Vector functional, Relation rel, Integer modulus = 0) {
    if (rel == Relation::Mod && modulus <= 0) throw InvalidArgument("mod rule needs a positive modulus");
    CharacterSelector s(Kind::Rule);
    s.functional_ = std::move(functional);
    s.relation_ = rel;
    s.modulus_ = modulus;
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<Character>& chars() const noexcept { return chars_; }
  const Vector& functional() const noexcept { return functional_; }
  Relation relation() const noexcept { return relation_; }
  const Integer& modulus() const noexcept { return modulus_; }

  bool contains(const Character& chi) const {
    switch (kind_) {
      case Kind::Zero:
        return chi.is_zero();
      case Kind::Explicit:
        return std::binary_search(chars_.begin(), chars_.end(), chi);
      case Kind::Rule: {
        if (functional_.size() != chi.values.size()) throw DimensionMismatch("selector functional length != dim g");
        Rational s = 0;
        for (std::size_t k = 0; k < chi.values.size(); ++k) s += functional_[k] * chi.values[k];
        if (relation_ == Relation::Eq0) return s == 0;
        if (relation_ == Relation::Ge0) return s >= 0;
        return is_integer(s) && Integer(s.get_num() % modulus_) == 0;
      }
    }
    return false;
  }

  void check_arity(std::size_t m) const {
    if (kind_ == Kind::Rule && functional_.size() != m) throw DimensionMismatch("selector functional length != dim g");
    for (const auto& c : chars_)
      if (c.values.size() != m) throw DimensionMismatch("selector character length != dim g");
  }

 private:
  explicit CharacterSelector(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<Character> chars_;
  Vector functional_;
  Relation relation_ = Relation::Eq0;
  Integer modulus_ = 0;
};

using GammaSelector = CharacterSelector;

struct GammaCheck {
  bool ok = true;
  std::string kind;  // "subsemigroup" or "absorption"
  Character left, right;
  std::string message;
};

/// Truncated Γ conditions: Γ∩C closed under + and Γ + (C∖Γ) ⊆ C∖Γ, over all pairs whose first
/// appearances have degree sum ≤ D. Products in a domain never vanish, so such a pair's sum
/// always lies in the support in that degree.
inline GammaCheck check_gamma(const GammaSelector& gamma, const SupportTable& table, const LieAlgebra& L) {
  GammaCheck r;
  gamma.check_arity(L.dim());
  auto firsts = table.first_appearances();
  const long D = table.max_degree;
  auto fail = [&](const char* kind, const Character& a, const Character& b, const std::string& why) {
    r.ok = false;
    r.kind = kind;
    r.left = a;
    r.right = b;
    r.message = std::string(kind) + " violated: " + to_string(a, L) + " + " + to_string(b, L) + " = " +
                to_string(a + b, L) + why;
  };
  for (const auto& [a, da] : firsts) {
    if (!gamma.contains(a)) continue;
    for (const auto& [b, db] : firsts)
      if (gamma.contains(b) && da + db <= D && !gamma.contains(a + b)) {
        fail("subsemigroup", a, b, " is not in Gamma");
        return r;
      }
  }
  for (const auto& [a, da] : firsts) {
    if (!gamma.contains(a)) continue;
    for (const auto& [b, db] : firsts)
      if (!gamma.contains(b) && da + db <= D && gamma.contains(a + b)) {
        fail("absorption", a, b, " is in Gamma although the second summand is not");
        return r;
      }
  }
  return r;
}

/// ⊕_{χ∈Γ} S^d_χ.
inline Subspace gamma_component(const std::vector<WeightPiece>& pieces, const GammaSelector& gamma, std::size_t n) {
  std::vector<Vector> vs;
  for (const auto& p : pieces)
    if (gamma.contains(p.chi))
      for (const auto& v : p.space.basis()) vs.push_back(v);
  return Subspace::span(n, std::move(vs));
}

/// Generators of S_Γ up to degree D, by the same sweep as the invariant ring.
inline RingGenerators gamma_generators(const DerivationAction& A, const GammaSelector& gamma, long D) {
  detail::require_solvable(A.lie());
  if (D < 1) throw InvalidArgument("truncation degree must be >= 1, got " + std::to_string(D));
  std::vector<std::vector<WeightPiece>> pieces;
  SupportTable table{0, D, {}};
  for (long d = 0; d <= D; ++d) {
    pieces.push_back(weight_decomposition(A, d));
    table.rows.push_back(detail::support_row(d, pieces.back()));
  }
  auto check = check_gamma(gamma, table, A.lie());
  if (!check.ok) throw GammaViolation(check.message);
  return detail::sweep_ring(A.signature(), D, [&](long d) {
    return gamma_component(pieces[static_cast<std::size_t>(d)], gamma, graded_dimension(*A.signature(), d));
  });
}

}  // namespace gradinv

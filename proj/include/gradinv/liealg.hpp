#pragma once

// Finite-dimensional Lie algebras given by structure constants [X_i, X_j] = Σ_k c[i][j][k] X_k.

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gradinv/errors.hpp"
#include "gradinv/linalg.hpp"
#include "gradinv/rational.hpp"

namespace gradinv {

class LieAlgebra {
 public:
  explicit LieAlgebra(std::vector<std::string> labels)
      : labels_(std::move(labels)), c_(labels_.size() * labels_.size() * labels_.size()) {}

  struct Bracket {
    std::size_t left, right;
    Vector value;  // coordinates of [X_left, X_right]
  };

  /// Builds from listed brackets. A pair listed in one orientation only gets its
  /// antisymmetric partner filled in; pairs listed in both orientations are stored verbatim
  /// (verify_lie reports any inconsistency).
  static LieAlgebra from_brackets(std::vector<std::string> labels, const std::vector<Bracket>& brackets) {
    LieAlgebra L(std::move(labels));
    const std::size_t m = L.dim();
    std::vector<bool> given(m * m, false);
    for (const auto& b : brackets) {
      if (b.left >= m || b.right >= m || b.value.size() != m)
        throw DimensionMismatch("bracket entry out of range");
      L.set_bracket(b.left, b.right, b.value);
      given[b.left * m + b.right] = true;
    }
    for (const auto& b : brackets) {
      if (given[b.right * m + b.left]) continue;
      Vector neg = b.value;
      for (auto& q : neg) q = -q;
      L.set_bracket(b.right, b.left, neg);
    }
    return L;
  }

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[idx(i, j, k)]; }
  Rational& constant(std::size_t i, std::size_t j, std::size_t k) { return c_[idx(i, j, k)]; }

  void set_bracket(std::size_t i, std::size_t j, const Vector& value) {
    for (std::size_t k = 0; k < dim(); ++k) c_[idx(i, j, k)] = value.at(k);
  }

  Vector basis_vector(std::size_t i) const {
    Vector v(dim());
    v.at(i) = 1;
    return v;
  }

  /// [u, v] for coordinate vectors on the basis.
  Vector bracket(const Vector& u, const Vector& v) const {
    const std::size_t m = dim();
    if (u.size() != m || v.size() != m) throw DimensionMismatch("bracket: coordinate length mismatch");
    Vector r(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (v[j] == 0) continue;
        Rational s = u[i] * v[j];
        for (std::size_t k = 0; k < m; ++k)
          if (c_[idx(i, j, k)] != 0) r[k] += s * c_[idx(i, j, k)];
      }
    }
    return r;
  }

  /// Matrix of ad(X_i): column j holds [X_i, X_j].
  RatMatrix ad(std::size_t i) const {
    const std::size_t m = dim();
    RatMatrix a(m, m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) a(k, j) = c_[idx(i, j, k)];
    return a;
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t m = dim();
    if (i >= m || j >= m || k >= m) throw DimensionMismatch("structure constant index out of range");
    return (i * m + j) * m + k;
  }

  std::vector<std::string> labels_;
  std::vector<Rational> c_;
};

/// Outcome of verify_lie. When !ok, (i, j, k) name the first violating basis pair or triple
/// and `residual` is the nonzero left-hand side.
struct LieCheck {
  bool ok = true;
  std::string kind;  // "antisymmetry" or "jacobi"
  std::size_t i = 0, j = 0, k = 0;
  Vector residual;
  std::string message;
};

inline std::string format_lie_element(const LieAlgebra& L, const Vector& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    bool neg = v[k] < 0;
    Rational a = neg ? Rational(-v[k]) : v[k];
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    out += (a == 1 ? "" : to_string(a) + "*") + L.label(k);
  }
  return out.empty() ? "0" : out;
}

inline LieCheck verify_lie(const LieAlgebra& L) {
  const std::size_t m = L.dim();
  LieCheck r;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Vector sum(m);
      bool bad = false;
      for (std::size_t k = 0; k < m; ++k) {
        sum[k] = L.constant(i, j, k) + L.constant(j, i, k);
        if (i == j) sum[k] = L.constant(i, i, k);
        bad = bad || sum[k] != 0;
      }
      if (bad) {
        r.ok = false;
        r.kind = "antisymmetry";
        r.i = i;
        r.j = j;
        r.k = j;
        r.residual = sum;
        r.message = i == j ? "[" + L.label(i) + "," + L.label(i) + "] = " + format_lie_element(L, sum) + " != 0"
                           : "[" + L.label(i) + "," + L.label(j) + "] + [" + L.label(j) + "," + L.label(i) +
                                 "] = " + format_lie_element(L, sum) + " != 0";
        return r;
      }
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        auto X = L.basis_vector(i), Y = L.basis_vector(j), Z = L.basis_vector(k);
        Vector jac = L.bracket(X, L.bracket(Y, Z));
        auto t2 = L.bracket(Y, L.bracket(Z, X));
        auto t3 = L.bracket(Z, L.bracket(X, Y));
        bool bad = false;
        for (std::size_t q = 0; q < m; ++q) {
          jac[q] += t2[q] + t3[q];
          bad = bad || jac[q] != 0;
        }
        if (bad) {
          r.ok = false;
          r.kind = "jacobi";
          r.i = i;
          r.j = j;
          r.k = k;
          r.residual = jac;
          r.message = "Jacobi identity fails on (" + L.label(i) + ", " + L.label(j) + ", " + L.label(k) +
                      "): residual " + format_lie_element(L, jac);
          return r;
        }
      }
  return r;
}

/// Span of all brackets [u, v] with u, v from the given basis vectors.
inline Subspace bracket_span(const LieAlgebra& L, const Subspace& a, const Subspace& b) {
  std::vector<Vector> out;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) out.push_back(L.bracket(u, v));
  return Subspace::span(L.dim(), std::move(out));
}

inline Subspace commutator_subspace(const LieAlgebra& L) {
  auto g = Subspace::full(L.dim());
  return bracket_span(L, g, g);
}

/// g ⊇ [g,g] ⊇ ... up to the first repeat; ends in the zero space iff L is solvable.
inline std::vector<Subspace> derived_series(const LieAlgebra& L) {
  std::vector<Subspace> series{Subspace::full(L.dim())};
  while (!series.back().is_zero()) {
    auto next = bracket_span(L, series.back(), series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_solvable(const LieAlgebra& L) { return derived_series(L).back().is_zero(); }

/// κ(X_i, X_j) = trace(ad X_i ∘ ad X_j).
inline RatMatrix killing_form(const LieAlgebra& L) {
  const std::size_t m = L.dim();
  std::vector<RatMatrix> ads;
  for (std::size_t i = 0; i < m; ++i) ads.push_back(L.ad(i));
  RatMatrix k(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Rational t = trace(ads[i] * ads[j]);
      k(i, j) = t;
      k(j, i) = t;
    }
  return k;
}

/// Cartan's criterion (characteristic 0): det κ != 0. Vacuously true for the zero algebra.
inline bool is_semisimple(const LieAlgebra& L) { return determinant(killing_form(L)) != 0; }

/// Functionals on the basis vanishing on [g,g], i.e. a basis of (g/[g,g])^*.
inline Subspace character_space(const LieAlgebra& L) { return commutator_subspace(L).annihilator(); }

/// Σ coeff · X_i ⊗ X_j with coefficient tensor κ^{-1}.
struct CasimirElement {
  struct Term {
    std::size_t i, j;
    Rational coeff;
  };
  std::vector<Term> terms;

  RatMatrix coefficient_matrix(std::size_t m) const {
    RatMatrix c(m, m);
    for (const auto& t : terms) c(t.i, t.j) += t.coeff;
    return c;
  }
};

inline CasimirElement casimir(const LieAlgebra& L) {
  if (!is_semisimple(L)) throw NotSemisimple();
  auto inv = inverse(killing_form(L));
  CasimirElement c;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j)
      if (inv(i, j) != 0) c.terms.push_back({i, j, inv(i, j)});
  return c;
}

}  // namespace gradinv

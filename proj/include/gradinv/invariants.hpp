#pragma once

// Invariant spaces (S^d)^g, generator extraction for the invariant ring by a degree sweep,
// and the Casimir splitting S^d = (S^d)^g ⊕ Q^d for semisimple Lie algebras.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gradinv/action.hpp"
#include "gradinv/errors.hpp"
#include "gradinv/linalg.hpp"
#include "gradinv/poly.hpp"

namespace gradinv {

template <class Element>
struct Generator {
  long degree;
  Element element;
};

/// Generators found by a degree sweep, with the dimension of the target space in every
/// swept degree. `dims[k]` belongs to degree `min_degree + k`.
template <class Element>
struct GeneratorSet {
  std::vector<Generator<Element>> generators;
  long min_degree = 0;
  long max_degree = 0;
  std::vector<std::size_t> dims;

  std::size_t dim_at(long d) const { return dims.at(static_cast<std::size_t>(d - min_degree)); }

  /// Number of trailing degrees (ceil(D/2), at least 1) inspected by stabilized().
  long stabilization_window() const { return std::max<long>(1, (max_degree + 1) / 2); }

  /// True if none of the last ceil(D/2) degrees contributed a generator. A heuristic only:
  /// a finite sweep can never prove finite generation.
  bool stabilized() const {
    const long from = max_degree - stabilization_window() + 1;
    for (const auto& g : generators)
      if (g.degree >= from) return false;
    return true;
  }

  std::vector<Element> elements_of_degree(long d) const {
    std::vector<Element> out;
    for (const auto& g : generators)
      if (g.degree == d) out.push_back(g.element);
    return out;
  }
};

using RingGenerators = GeneratorSet<Polynomial>;

/// (S^d)^g as a subspace of the coordinates of S^d.
inline Subspace invariants_degree(const DerivationAction& A, long d) {
  const std::size_t n = graded_dimension(*A.signature(), d);
  if (A.lie().dim() == 0) return Subspace::full(n);
  std::vector<RatMatrix> blocks;
  for (std::size_t j = 0; j < A.lie().dim(); ++j) blocks.push_back(action_matrix(A, j, d));
  return nullspace(RatMatrix::vstack(blocks, n));
}

inline std::vector<Polynomial> subspace_polynomials(const SignaturePtr& sig, long d, const Subspace& U) {
  std::vector<Polynomial> out;
  for (const auto& v : U.basis()) out.push_back(from_coordinates(sig, d, v));
  return out;
}

namespace detail {

/// Degree sweep over the ring: at each d, span the products of accepted generators, then
/// complete it to target(d) with normal forms of target basis vectors (graded-lex pivots).
template <class TargetFn>
RingGenerators sweep_ring(const SignaturePtr& sig, long D, TargetFn&& target) {
  if (D < 1) throw InvalidArgument("truncation degree must be >= 1, got " + std::to_string(D));
  RingGenerators out;
  out.min_degree = 0;
  out.max_degree = D;
  std::vector<std::vector<Polynomial>> algebra_basis(static_cast<std::size_t>(D + 1));
  algebra_basis[0] = {Polynomial::constant(sig, 1)};
  out.dims.push_back(target(0).dim());
  for (long d = 1; d <= D; ++d) {
    const Subspace T = target(d);
    const std::size_t n = T.ambient();
    std::vector<Vector> products;
    for (const auto& g : out.generators) {
      if (g.degree > d) continue;
      for (const auto& b : algebra_basis[static_cast<std::size_t>(d - g.degree)])
        products.push_back(to_coordinates(g.element * b, d));
    }
    Subspace span = Subspace::span(n, std::move(products));
    if (!T.contains(span))
      throw SplitFailure("products of generators leave the target space in degree " + std::to_string(d));
    for (const auto& v : T.basis()) {
      Vector r = span.reduce(v);
      if (std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; })) continue;
      Polynomial g = primitive_part(from_coordinates(sig, d, r));
      out.generators.push_back({d, g});
      std::vector<Vector> grown = span.basis();
      grown.push_back(to_coordinates(g, d));
      span = Subspace::span(n, std::move(grown));
    }
    algebra_basis[static_cast<std::size_t>(d)] = subspace_polynomials(sig, d, span);
    out.dims.push_back(T.dim());
  }
  return out;
}

}  // namespace detail

/// Generators of the invariant ring up to degree D, degree by degree.
inline RingGenerators invariant_generators(const DerivationAction& A, long D) {
  return detail::sweep_ring(A.signature(), D, [&](long d) { return invariants_degree(A, d); });
}

/// Degree-d parts of the subalgebra generated by a fixed list of homogeneous polynomials.
class GeneratedAlgebra {
 public:
  GeneratedAlgebra(SignaturePtr sig, std::vector<Generator<Polynomial>> gens)
      : sig_(std::move(sig)), gens_(std::move(gens)) {
    for (const auto& g : gens_)
      if (g.degree < 1) throw InvalidArgument("algebra generators must have positive degree");
  }

  const std::vector<Polynomial>& basis(long d) {
    static const std::vector<Polynomial> empty;
    if (d < 0) return empty;
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    std::vector<Polynomial> result;
    if (d == 0) {
      result.push_back(Polynomial::constant(sig_, 1));
    } else {
      std::vector<Vector> products;
      for (const auto& g : gens_) {
        if (g.degree > d) continue;
        for (const auto& b : basis(d - g.degree)) products.push_back(to_coordinates(g.element * b, d));
      }
      auto span = Subspace::span(graded_dimension(*sig_, d), std::move(products));
      result = subspace_polynomials(sig_, d, span);
    }
    return cache_.emplace(d, std::move(result)).first->second;
  }

 private:
  SignaturePtr sig_;
  std::vector<Generator<Polynomial>> gens_;
  std::map<long, std::vector<Polynomial>> cache_;
};

/// Casimir splitting of S^d into its invariants and the image of the Casimir operator.
struct ReynoldsSplit {
  RatMatrix casimir;
  Subspace invariants;  // ker C_d
  Subspace complement;  // im C_d = Q^d
  RatMatrix projection;  // onto invariants along complement
};

inline ReynoldsSplit reynolds_split(const DerivationAction& A, long d) {
  ReynoldsSplit s;
  s.casimir = casimir_matrix(A, d);
  const std::size_t n = s.casimir.rows();
  s.invariants = nullspace(s.casimir);
  s.complement = column_space(s.casimir);
  if (!(s.invariants == invariants_degree(A, d)))
    throw SplitFailure("Casimir kernel differs from the invariants in degree " + std::to_string(d));
  if (!intersect(s.invariants, s.complement).is_zero() || s.invariants.dim() + s.complement.dim() != n)
    throw SplitFailure("Casimir kernel and image do not split S^" + std::to_string(d));
  RatMatrix basis(n, n);
  std::size_t col = 0;
  for (const auto& v : s.invariants.basis()) basis.set_column(col++, v);
  for (const auto& v : s.complement.basis()) basis.set_column(col++, v);
  RatMatrix keep(n, n);
  for (std::size_t i = 0; i < s.invariants.dim(); ++i) keep(i, i) = 1;
  s.projection = n == 0 ? RatMatrix(0, 0) : basis * keep * inverse(basis);
  return s;
}

/// Projection of S^d onto (S^d)^g along Q^d.
inline RatMatrix reynolds(const DerivationAction& A, long d) { return reynolds_split(A, d).projection; }

/// Q^d = image of the Casimir operator on S^d.
inline Subspace complement_Q(const DerivationAction& A, long d) { return column_space(casimir_matrix(A, d)); }

struct ContainmentCheck {
  bool ok = true;
  std::size_t products_checked = 0;
  std::string counterexample;  // "q * s" for the first product outside Q^{i+j}
};

/// Checks Q^i · (S^j)^g ⊆ Q^{i+j} on all basis products.
inline ContainmentCheck check_containment(const DerivationAction& A, long i, long j) {
  if (i < 0 || j < 0) throw InvalidArgument("containment degrees must be non-negative");
  ContainmentCheck r;
  const auto& sig = A.signature();
  auto Q = subspace_polynomials(sig, i, complement_Q(A, i));
  auto inv = subspace_polynomials(sig, j, invariants_degree(A, j));
  if (Q.empty() || inv.empty()) return r;
  auto target = complement_Q(A, i + j);
  for (const auto& q : Q)
    for (const auto& s : inv) {
      ++r.products_checked;
      if (!membership(to_coordinates(q * s, i + j), target)) {
        r.ok = false;
        r.counterexample = "(" + to_string(q) + ") * (" + to_string(s) + ")";
        return r;
      }
    }
  return r;
}

inline bool verify_hilblemma(const DerivationAction& A, long i, long j) { return check_containment(A, i, j).ok; }

}  // namespace gradinv

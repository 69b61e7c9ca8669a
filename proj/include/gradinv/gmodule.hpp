#pragma once

// Graded (S, g)-modules presented as free modules M = ⊕_i S·e_i with deg e_i = a_i and an
// equivariant twist ρ_M(X)(e_i) = Σ_l c[X][l][i]·e_l. The action on f·e_i follows the
// Leibniz rule, so M^d = ⊕_i S^{d−a_i} e_i and everything reduces to finite matrices per degree.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradinv/action.hpp"
#include "gradinv/errors.hpp"
#include "gradinv/invariants.hpp"
#include "gradinv/linalg.hpp"
#include "gradinv/poly.hpp"
#include "gradinv/weights.hpp"

namespace gradinv {

/// Σ_i components[i]·e_i.
struct ModuleElement {
  std::vector<Polynomial> components;

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const Polynomial& p) { return p.is_zero(); });
  }
  ModuleElement& operator+=(const ModuleElement& o) {
    check(o);
    for (std::size_t i = 0; i < components.size(); ++i) components[i] += o.components[i];
    return *this;
  }
  ModuleElement& operator-=(const ModuleElement& o) {
    check(o);
    for (std::size_t i = 0; i < components.size(); ++i) components[i] -= o.components[i];
    return *this;
  }
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const Polynomial& f, ModuleElement m) {
    for (auto& c : m.components) c = f * c;
    return m;
  }
  friend ModuleElement operator*(ModuleElement m, const Rational& s) {
    for (auto& c : m.components) c *= s;
    return m;
  }
  bool operator==(const ModuleElement& o) const { return components == o.components; }

 private:
  void check(const ModuleElement& o) const {
    if (o.components.size() != components.size()) throw DimensionMismatch("module elements of different rank");
  }
};

class GradedModule {
 public:
  /// twist[j][i] = ρ_M(X_j)(e_i).
  GradedModule(std::shared_ptr<const DerivationAction> action, std::vector<std::string> names,
               std::vector<long> degrees, std::vector<std::vector<ModuleElement>> twist)
      : action_(std::move(action)), names_(std::move(names)), degrees_(std::move(degrees)), twist_(std::move(twist)) {
    const auto& sig = *action_->signature();
    if (names_.empty()) throw InvalidArgument("a module needs at least one generator");
    if (names_.size() != degrees_.size()) throw DimensionMismatch("module generator names/degrees differ in length");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!AlgebraSignature::valid_identifier(names_[i]))
        throw ParseError(0, "invalid module generator name '" + names_[i] + "'");
      if (sig.index_of(names_[i]) || std::count(names_.begin(), names_.end(), names_[i]) > 1)
        throw ParseError(0, "module generator name '" + names_[i] + "' is not unique");
    }
    if (twist_.size() != action_->lie().dim()) throw DimensionMismatch("twist rows != dim g");
    for (const auto& row : twist_) {
      if (row.size() != names_.size()) throw DimensionMismatch("twist row length != module rank");
      for (const auto& m : row) check_element(m);
    }
  }

  /// Trivial twist: ρ_M(X)(e_i) = 0.
  static GradedModule untwisted(std::shared_ptr<const DerivationAction> action, std::vector<std::string> names,
                                std::vector<long> degrees) {
    ModuleElement zero{std::vector<Polynomial>(names.size(), Polynomial(action->signature()))};
    std::vector<std::vector<ModuleElement>> twist(action->lie().dim(), std::vector<ModuleElement>(names.size(), zero));
    return GradedModule(std::move(action), std::move(names), std::move(degrees), std::move(twist));
  }

  const DerivationAction& action() const noexcept { return *action_; }
  const std::shared_ptr<const DerivationAction>& action_ptr() const noexcept { return action_; }
  const SignaturePtr& signature() const noexcept { return action_->signature(); }
  std::size_t rank() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<long>& degrees() const noexcept { return degrees_; }
  long min_degree() const { return *std::min_element(degrees_.begin(), degrees_.end()); }
  const ModuleElement& twist(std::size_t j, std::size_t i) const { return twist_.at(j).at(i); }

  ModuleElement zero() const { return ModuleElement{std::vector<Polynomial>(rank(), Polynomial(signature()))}; }
  ModuleElement generator(std::size_t i) const {
    auto m = zero();
    m.components.at(i) = Polynomial::constant(signature(), 1);
    return m;
  }

  void check_element(const ModuleElement& m) const {
    if (m.components.size() != rank()) throw DimensionMismatch("module element of wrong rank");
    for (const auto& p : m.components)
      if (!same_signature(p.signature(), signature())) throw SignatureMismatch("module element over a different signature");
  }

 private:
  std::shared_ptr<const DerivationAction> action_;
  std::vector<std::string> names_;
  std::vector<long> degrees_;
  std::vector<std::vector<ModuleElement>> twist_;
};

// ---------------------------------------------------------------------------------------
// Text form: module generator names act as extra variables, linearly ("x^2*e_minus").

inline std::string to_string(const ModuleElement& m, const GradedModule& M) {
  std::string out;
  const auto& sig = *M.signature();
  for (std::size_t i = 0; i < m.components.size(); ++i)
    for (const auto& [mono, c] : m.components[i].sorted_terms()) {
      auto s = monomial_to_string(sig, mono);
      append_term(out, c, s.empty() ? M.names()[i] : s + "*" + M.names()[i]);
    }
  return out.empty() ? "0" : out;
}

inline ModuleElement parse_module_element(std::string_view text, const SignaturePtr& sig,
                                          const std::vector<std::string>& gen_names) {
  auto names = sig->names();
  names.insert(names.end(), gen_names.begin(), gen_names.end());
  ModuleElement m{std::vector<Polynomial>(gen_names.size(), Polynomial(sig))};
  for (auto& [exps, c] : parse_terms(text, names)) {
    std::size_t which = gen_names.size(), total = 0;
    for (std::size_t i = 0; i < gen_names.size(); ++i) {
      total += exps[sig->size() + i];
      if (exps[sig->size() + i]) which = i;
    }
    if (c == 0) continue;
    if (total != 1)
      throw ParseError(0, "module term must contain exactly one generator to the first power in '" +
                              std::string(text) + "'");
    exps.resize(sig->size());
    m.components[which].add_term(Monomial{std::move(exps)}, c);
  }
  return m;
}

inline ModuleElement parse_module_element(std::string_view text, const GradedModule& M) {
  return parse_module_element(text, M.signature(), M.names());
}

/// Coprime integer coefficients, first printed term positive.
inline ModuleElement primitive_part(const ModuleElement& m) {
  Integer num_gcd = 0, den_lcm = 1;
  std::optional<Rational> lead;
  for (const auto& p : m.components) {
    if (!lead && !p.is_zero()) lead = p.sorted_terms().front().second;
    for (const auto& [mono, c] : p.terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  if (!lead) return m;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (*lead < 0) scale = -scale;
  return m * scale;
}

// ---------------------------------------------------------------------------------------
// Action and coordinates

inline ModuleElement module_act(const GradedModule& M, const Vector& X, const ModuleElement& m) {
  M.check_element(m);
  const auto& A = M.action();
  auto images = A.combined_images(X);
  auto out = M.zero();
  for (std::size_t i = 0; i < M.rank(); ++i) {
    if (m.components[i].is_zero()) continue;
    out.components[i] += detail::apply_derivation(images, m.components[i]);
    for (std::size_t j = 0; j < X.size(); ++j)
      if (X[j] != 0) out += m.components[i] * (M.twist(j, i) * X[j]);
  }
  return out;
}

inline ModuleElement module_act_basis(const GradedModule& M, std::size_t j, const ModuleElement& m) {
  return module_act(M, M.action().lie().basis_vector(j), m);
}

inline std::size_t module_dimension(const GradedModule& M, long d) {
  std::size_t n = 0;
  for (auto a : M.degrees()) n += graded_dimension(*M.signature(), d - a);
  return n;
}

/// Coordinates on the concatenated monomial bases of S^{d−a_i}·e_i.
inline Vector to_module_coordinates(const GradedModule& M, const ModuleElement& m, long d) {
  Vector v;
  for (std::size_t i = 0; i < M.rank(); ++i) {
    auto c = to_coordinates(m.components[i], d - M.degrees()[i]);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

inline ModuleElement from_module_coordinates(const GradedModule& M, long d, const Vector& v) {
  if (v.size() != module_dimension(M, d)) throw DimensionMismatch("module coordinate vector of wrong length");
  auto m = M.zero();
  std::size_t at = 0;
  for (std::size_t i = 0; i < M.rank(); ++i) {
    const long di = d - M.degrees()[i];
    const std::size_t k = graded_dimension(*M.signature(), di);
    m.components[i] = from_coordinates(M.signature(), di, Vector(v.begin() + static_cast<std::ptrdiff_t>(at),
                                                                 v.begin() + static_cast<std::ptrdiff_t>(at + k)));
    at += k;
  }
  return m;
}

/// Basis elements of M^d in coordinate order.
inline std::vector<ModuleElement> module_basis(const GradedModule& M, long d) {
  std::vector<ModuleElement> out;
  for (std::size_t i = 0; i < M.rank(); ++i)
    for (const auto& mono : monomial_basis(*M.signature(), d - M.degrees()[i])) {
      auto m = M.zero();
      m.components[i] = Polynomial::monomial(M.signature(), mono, 1);
      out.push_back(std::move(m));
    }
  return out;
}

inline RatMatrix module_action_matrix(const GradedModule& M, const Vector& X, long d) {
  auto basis = module_basis(M, d);
  RatMatrix m(basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) m.set_column(c, to_module_coordinates(M, module_act(M, X, basis[c]), d));
  return m;
}

inline RatMatrix module_action_matrix(const GradedModule& M, std::size_t j, long d) {
  return module_action_matrix(M, M.action().lie().basis_vector(j), d);
}

struct ModuleCheck {
  bool ok = true;
  std::string kind;  // "homogeneity" or "bracket"
  std::size_t i = 0, j = 0, generator = 0;
  std::string message;
};

/// Twist homogeneity (c[X][l][i] of degree a_i − a_l) and [ρ_M(X_i), ρ_M(X_j)] = ρ_M([X_i,X_j])
/// on each e_k; with the Leibniz rule and a valid ring action this covers all of M.
inline ModuleCheck verify_module(const GradedModule& M) {
  const auto& L = M.action().lie();
  ModuleCheck r;
  for (std::size_t j = 0; j < L.dim(); ++j)
    for (std::size_t i = 0; i < M.rank(); ++i) {
      const auto& t = M.twist(j, i);
      for (std::size_t l = 0; l < M.rank(); ++l) {
        const long want = M.degrees()[i] - M.degrees()[l];
        const auto& p = t.components[l];
        if (p.is_zero() || (want >= 0 && weighted_degree(p).fits(want))) continue;
        r.ok = false;
        r.kind = "homogeneity";
        r.i = j;
        r.generator = i;
        r.message = "rho(" + L.label(j) + ")(" + M.names()[i] + ") has coefficient " + to_string(p) + " at " +
                    M.names()[l] + ", which is not homogeneous of degree " + std::to_string(want);
        return r;
      }
    }
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      auto bij = L.bracket(L.basis_vector(i), L.basis_vector(j));
      for (std::size_t k = 0; k < M.rank(); ++k) {
        auto e = M.generator(k);
        auto diff = module_act_basis(M, i, module_act_basis(M, j, e)) - module_act_basis(M, j, module_act_basis(M, i, e)) -
                    module_act(M, bij, e);
        if (diff.is_zero()) continue;
        r.ok = false;
        r.kind = "bracket";
        r.i = i;
        r.j = j;
        r.generator = k;
        r.message = "module bracket fails for (" + L.label(i) + ", " + L.label(j) + ") on " + M.names()[k] +
                    ": residual " + to_string(diff, M);
        return r;
      }
    }
  return r;
}

// ---------------------------------------------------------------------------------------
// Invariants and generators over S̄

inline Subspace module_invariants_degree(const GradedModule& M, long d) {
  const std::size_t n = module_dimension(M, d);
  const auto& L = M.action().lie();
  if (L.dim() == 0) return Subspace::full(n);
  std::vector<RatMatrix> blocks;
  for (std::size_t j = 0; j < L.dim(); ++j) blocks.push_back(module_action_matrix(M, j, d));
  return nullspace(RatMatrix::vstack(blocks, n));
}

using ModuleGenerators = GeneratorSet<ModuleElement>;

namespace detail {

/// Sweep from the lowest degree t = min a_i: every invariant vector of degree t is a
/// generator, which seeds with the whole band below the first ring-product degree.
template <class TargetFn>
ModuleGenerators sweep_module(const GradedModule& M, GeneratedAlgebra& ring, long D, TargetFn&& target) {
  ModuleGenerators out;
  out.min_degree = M.min_degree();
  out.max_degree = D;
  for (long d = out.min_degree; d <= D; ++d) {
    const Subspace T = target(d);
    const std::size_t n = T.ambient();
    std::vector<Vector> products;
    for (const auto& g : out.generators)
      for (const auto& s : ring.basis(d - g.degree)) products.push_back(to_module_coordinates(M, s * g.element, d));
    Subspace span = Subspace::span(n, std::move(products));
    if (!T.contains(span))
      throw SplitFailure("ring multiples of module generators leave the target space in degree " + std::to_string(d));
    for (const auto& v : T.basis()) {
      Vector r = span.reduce(v);
      if (std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; })) continue;
      auto g = primitive_part(from_module_coordinates(M, d, r));
      out.generators.push_back({d, g});
      std::vector<Vector> grown = span.basis();
      grown.push_back(to_module_coordinates(M, g, d));
      span = Subspace::span(n, std::move(grown));
    }
    out.dims.push_back(T.dim());
  }
  return out;
}

inline long ring_degree_needed(const GradedModule& M, long D) { return std::max<long>(1, D - M.min_degree()); }

}  // namespace detail

/// Generators of M̄ over S̄ up to degree D. `ring` must reach degree D − min a_i.
inline ModuleGenerators module_invariant_generators(const GradedModule& M, const RingGenerators& ring, long D) {
  if (D < M.min_degree()) throw InvalidArgument("truncation degree below the lowest module degree");
  if (ring.max_degree < D - M.min_degree())
    throw InvalidArgument("ring generators computed to degree " + std::to_string(ring.max_degree) + ", need " +
                          std::to_string(D - M.min_degree()));
  GeneratedAlgebra algebra(M.signature(), ring.generators);
  return detail::sweep_module(M, algebra, D, [&](long d) { return module_invariants_degree(M, d); });
}

/// Convenience overload computing the invariant ring generators itself.
inline ModuleGenerators module_invariant_generators(const GradedModule& M, long D) {
  return module_invariant_generators(M, invariant_generators(M.action(), detail::ring_degree_needed(M, D)), D);
}

// ---------------------------------------------------------------------------------------
// Weights

inline std::vector<WeightPiece> module_weight_decomposition(const GradedModule& M, long d) {
  const auto& L = M.action().lie();
  detail::require_solvable(L);
  std::vector<RatMatrix> mats;
  for (std::size_t j = 0; j < L.dim(); ++j) mats.push_back(module_action_matrix(M, j, d));
  return detail::weight_decomposition(L, mats, module_dimension(M, d), "M^" + std::to_string(d));
}

inline SupportRow module_weight_support(const GradedModule& M, long d) {
  return detail::support_row(d, module_weight_decomposition(M, d));
}

inline SupportTable module_support_table(const GradedModule& M, long D) {
  SupportTable t{M.min_degree(), D, {}};
  for (long d = M.min_degree(); d <= D; ++d) t.rows.push_back(module_weight_support(M, d));
  return t;
}

struct CActionCheck {
  bool ok = true;
  std::size_t products_checked = 0;
  std::string message;
};

/// Samples S^i_χ · M^j_φ ⊆ M^{i+j}_{χ+φ} for i + j ≤ D using the first `per_piece` basis
/// vectors of every weight component.
inline CActionCheck c_action_check(const GradedModule& M, long D, std::size_t per_piece = 4) {
  const auto& A = M.action();
  const long t = M.min_degree();
  CActionCheck r;
  std::vector<std::vector<WeightPiece>> ring, mod;
  for (long i = 0; i <= D - t; ++i) ring.push_back(weight_decomposition(A, i));
  for (long j = t; j <= D; ++j) mod.push_back(module_weight_decomposition(M, j));
  for (long i = 0; i <= D - t; ++i)
    for (long j = t; j + i <= D; ++j)
      for (const auto& sp : ring[static_cast<std::size_t>(i)])
        for (const auto& mp : mod[static_cast<std::size_t>(j - t)]) {
          const auto& target_pieces = mod[static_cast<std::size_t>(i + j - t)];
          const Subspace* target = nullptr;
          for (const auto& p : target_pieces)
            if (p.chi == sp.chi + mp.chi) target = &p.space;
          const std::size_t ns = std::min(per_piece, sp.space.dim()), nm = std::min(per_piece, mp.space.dim());
          for (std::size_t a = 0; a < ns; ++a)
            for (std::size_t b = 0; b < nm; ++b) {
              ++r.products_checked;
              auto f = from_coordinates(A.signature(), i, sp.space.basis()[a]);
              auto m = from_module_coordinates(M, j, mp.space.basis()[b]);
              auto v = to_module_coordinates(M, f * m, i + j);
              if (target && target->contains(v)) continue;
              r.ok = false;
              r.message = "S^" + std::to_string(i) + to_string(sp.chi, A.lie()) + " * M^" + std::to_string(j) +
                          to_string(mp.chi, A.lie()) + " leaves the component of the summed weight";
              return r;
            }
        }
  return r;
}

using PhiSelector = CharacterSelector;

struct PhiCheck {
  bool a_ok = true;  // Γ + Φ ⊆ Φ
  bool b_ok = true;  // (C∖Γ) + Φ ⊆ complement of Φ
  std::string a_violation, b_violation;
  bool ok() const { return a_ok && b_ok; }
};

/// Both Φ conditions over pairs (χ from tableS, φ from tableM) with first-appearance degree
/// sum ≤ tableM.max_degree; S is a domain and M is free, so such products are nonzero.
inline PhiCheck check_phi(const GammaSelector& gamma, const PhiSelector& phi, const SupportTable& tableS,
                          const SupportTable& tableM, const LieAlgebra& L) {
  gamma.check_arity(L.dim());
  phi.check_arity(L.dim());
  PhiCheck r;
  const long D = tableM.max_degree;
  auto ring = tableS.first_appearances();
  auto mod = tableM.first_appearances();
  for (const auto& [chi, di] : ring)
    for (const auto& [ph, dj] : mod) {
      if (di + dj > D || !phi.contains(ph)) continue;
      const bool in_gamma = gamma.contains(chi);
      const bool lands_in_phi = phi.contains(chi + ph);
      auto text = to_string(chi, L) + " + " + to_string(ph, L) + " = " + to_string(chi + ph, L);
      if (in_gamma && !lands_in_phi && r.a_ok) {
        r.a_ok = false;
        r.a_violation = text + " leaves Phi although the first summand is in Gamma";
      }
      if (!in_gamma && lands_in_phi && r.b_ok) {
        r.b_ok = false;
        r.b_violation = text + " lies in Phi although the first summand is outside Gamma";
      }
    }
  return r;
}

inline Subspace phi_component(const std::vector<WeightPiece>& pieces, const PhiSelector& phi, std::size_t n) {
  return gamma_component(pieces, phi, n);
}

struct PhiResult {
  ModuleGenerators generators;  // over S_Γ
  RingGenerators ring;          // generators of S_Γ used for the products
  PhiCheck check;
  /// Finite type over S_Γ is claimed only when (b) holds as well.
  bool finite_type_certified() const { return check.b_ok; }
};

/// Generators of M_Φ = ⊕_{φ∈Φ} M_φ over S_Γ up to degree D.
inline PhiResult phi_generators(const GradedModule& M, const GammaSelector& gamma, const PhiSelector& phi, long D) {
  const auto& A = M.action();
  detail::require_solvable(A.lie());
  if (D < M.min_degree()) throw InvalidArgument("truncation degree below the lowest module degree");
  const long Dr = detail::ring_degree_needed(M, D);
  PhiResult out;
  out.ring = gamma_generators(A, gamma, Dr);
  SupportTable tableS = support_table(A, Dr);
  std::vector<std::vector<WeightPiece>> pieces;
  SupportTable tableM{M.min_degree(), D, {}};
  for (long d = M.min_degree(); d <= D; ++d) {
    pieces.push_back(module_weight_decomposition(M, d));
    tableM.rows.push_back(detail::support_row(d, pieces.back()));
  }
  out.check = check_phi(gamma, phi, tableS, tableM, A.lie());
  if (!out.check.a_ok) throw PhiViolation(out.check.a_violation);
  GeneratedAlgebra algebra(M.signature(), out.ring.generators);
  out.generators = detail::sweep_module(M, algebra, D, [&](long d) {
    return phi_component(pieces[static_cast<std::size_t>(d - M.min_degree())], phi, module_dimension(M, d));
  });
  return out;
}

}  // namespace gradinv

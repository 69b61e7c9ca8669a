#pragma once

// Lie algebra actions on k[x_1..x_n] by degree-preserving derivations.
//
// An action is fixed by the images ρ(X_j)(x_v) of the variables; the Leibniz rule extends
// each ρ(X_j) uniquely to the whole ring. Two derivations of a polynomial ring that agree on
// the variables are equal, so the homomorphism condition only has to be checked there.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gradinv/errors.hpp"
#include "gradinv/liealg.hpp"
#include "gradinv/linalg.hpp"
#include "gradinv/poly.hpp"

namespace gradinv {

class DerivationAction {
 public:
  /// images[j][v] = ρ(X_j)(x_v).
  DerivationAction(SignaturePtr sig, std::shared_ptr<const LieAlgebra> lie,
                   std::vector<std::vector<Polynomial>> images)
      : sig_(std::move(sig)), lie_(std::move(lie)), images_(std::move(images)) {
    if (images_.size() != lie_->dim())
      throw DimensionMismatch("action: " + std::to_string(images_.size()) + " image rows for a " +
                              std::to_string(lie_->dim()) + "-dimensional Lie algebra");
    for (const auto& row : images_) {
      if (row.size() != sig_->size()) throw DimensionMismatch("action: image row length != variable count");
      for (const auto& p : row)
        if (!same_signature(p.signature(), sig_)) throw SignatureMismatch("action image over a different signature");
    }
  }

  const SignaturePtr& signature() const noexcept { return sig_; }
  const LieAlgebra& lie() const noexcept { return *lie_; }
  const std::shared_ptr<const LieAlgebra>& lie_ptr() const noexcept { return lie_; }
  const Polynomial& image(std::size_t j, std::size_t v) const { return images_.at(j).at(v); }

  /// Images of the variables under Σ_j X[j]·ρ(X_j).
  std::vector<Polynomial> combined_images(const Vector& X) const {
    if (X.size() != lie_->dim()) throw DimensionMismatch("Lie element has wrong number of coordinates");
    std::vector<Polynomial> out(sig_->size(), Polynomial(sig_));
    for (std::size_t j = 0; j < X.size(); ++j) {
      if (X[j] == 0) continue;
      for (std::size_t v = 0; v < sig_->size(); ++v) out[v] += images_[j][v] * X[j];
    }
    return out;
  }

 private:
  SignaturePtr sig_;
  std::shared_ptr<const LieAlgebra> lie_;
  std::vector<std::vector<Polynomial>> images_;
};

namespace detail {

inline Polynomial apply_derivation(const std::vector<Polynomial>& images, const Polynomial& f) {
  Polynomial r(f.signature());
  for (std::size_t v = 0; v < images.size(); ++v) {
    if (images[v].is_zero()) continue;
    auto df = f.derivative(v);
    if (!df.is_zero()) r += df * images[v];
  }
  return r;
}

}  // namespace detail

/// ρ(X)(f) for X given by coordinates on the Lie basis.
inline Polynomial act(const DerivationAction& A, const Vector& X, const Polynomial& f) {
  if (!same_signature(f.signature(), A.signature())) throw SignatureMismatch("act: polynomial over a different signature");
  return detail::apply_derivation(A.combined_images(X), f);
}

inline Polynomial act_basis(const DerivationAction& A, std::size_t j, const Polynomial& f) {
  return act(A, A.lie().basis_vector(j), f);
}

/// Matrix of ρ(X) on S^d in monomial_basis coordinates; column c is the image of monomial c.
inline RatMatrix action_matrix(const DerivationAction& A, const Vector& X, long d) {
  const auto& sig = A.signature();
  auto basis = monomial_basis(*sig, d);
  auto images = A.combined_images(X);
  RatMatrix m(basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto img = detail::apply_derivation(images, Polynomial::monomial(sig, basis[c], 1));
    m.set_column(c, to_coordinates(img, d));
  }
  return m;
}

inline RatMatrix action_matrix(const DerivationAction& A, std::size_t j, long d) {
  return action_matrix(A, A.lie().basis_vector(j), d);
}

struct ActionCheck {
  bool ok = true;
  std::string kind;  // "homogeneity" or "bracket"
  std::size_t i = 0, j = 0, variable = 0;
  std::string residual;
  std::string message;
};

inline ActionCheck verify_action(const DerivationAction& A) {
  const auto& sig = *A.signature();
  const auto& L = A.lie();
  ActionCheck r;
  for (std::size_t j = 0; j < L.dim(); ++j)
    for (std::size_t v = 0; v < sig.size(); ++v) {
      const auto& img = A.image(j, v);
      if (!weighted_degree(img).fits(sig.degree(v))) {
        r.ok = false;
        r.kind = "homogeneity";
        r.i = j;
        r.variable = v;
        r.residual = to_string(img);
        r.message = "rho(" + L.label(j) + ")(" + sig.name(v) + ") = " + to_string(img) +
                    " is not homogeneous of degree " + std::to_string(sig.degree(v));
        return r;
      }
    }
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      Vector bij = L.bracket(L.basis_vector(i), L.basis_vector(j));
      for (std::size_t v = 0; v < sig.size(); ++v) {
        auto x = Polynomial::variable(A.signature(), v);
        auto lhs = act_basis(A, i, act_basis(A, j, x)) - act_basis(A, j, act_basis(A, i, x));
        auto rhs = act(A, bij, x);
        auto diff = lhs - rhs;
        if (!diff.is_zero()) {
          r.ok = false;
          r.kind = "bracket";
          r.i = i;
          r.j = j;
          r.variable = v;
          r.residual = to_string(diff);
          r.message = "[rho(" + L.label(i) + "), rho(" + L.label(j) + ")](" + sig.name(v) + ") - rho([" +
                      L.label(i) + "," + L.label(j) + "])(" + sig.name(v) + ") = " + r.residual + " != 0";
          return r;
        }
      }
    }
  return r;
}

/// C_d = Σ κ^{-1}_{ij} ρ(X_i)_d ρ(X_j)_d; commutes with the action on S^d.
inline RatMatrix casimir_matrix(const DerivationAction& A, long d) {
  const auto cas = casimir(A.lie());
  const std::size_t n = graded_dimension(*A.signature(), d);
  std::vector<RatMatrix> mats;
  for (std::size_t j = 0; j < A.lie().dim(); ++j) mats.push_back(action_matrix(A, j, d));
  RatMatrix c(n, n);
  for (const auto& t : cas.terms) c += (mats[t.i] * mats[t.j]) * t.coeff;
  return c;
}

}  // namespace gradinv

#pragma once

// Dense exact linear algebra over the rationals.
//
// Subspaces are always stored by their reduced row-echelon basis, which is unique, so
// subspace equality is plain data equality.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gradinv/errors.hpp"
#include "gradinv/rational.hpp"

namespace gradinv {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("matrix entry count " + std::to_string(data_.size()) + " != " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  /// Row-major construction from nested lists, e.g. {{2,4},{1,2}}.
  static RatMatrix from_rows(const std::vector<Vector>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    RatMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const Vector& v) {
    if (v.size() != rows_) throw DimensionMismatch("set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMatrix& operator+=(const RatMatrix& o) {
    check_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  RatMatrix& operator-=(const RatMatrix& o) {
    check_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  RatMatrix& operator*=(const Rational& s) {
    for (auto& q : data_) q *= s;
    return *this;
  }
  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matrix product " + std::to_string(a.rows_) + "x" +
                              std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                              std::to_string(b.cols_));
    RatMatrix r(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& bkj = b(k, j);
          if (bkj == 0) continue;
          t = aik * bkj;
          r(i, j) += t;
        }
      }
    return r;
  }

  friend Vector operator*(const RatMatrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector length mismatch");
    Vector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (a(i, j) != 0 && v[j] != 0) r[i] += a(i, j) * v[j];
    return r;
  }

  bool operator==(const RatMatrix& o) const = default;

  /// Stacks matrices with equal column counts on top of each other.
  static RatMatrix vstack(const std::vector<RatMatrix>& blocks, std::size_t cols) {
    std::size_t r = 0;
    for (const auto& b : blocks) {
      if (b.cols_ != cols) throw DimensionMismatch("vstack: column mismatch");
      r += b.rows_;
    }
    RatMatrix m(r, cols);
    std::size_t at = 0;
    for (const auto& b : blocks) {
      std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(at * cols));
      at += b.rows_;
    }
    return m;
  }

 private:
  void check_same_shape(const RatMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch(std::string("matrix shape mismatch in ") + op);
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  RatMatrix matrix;
  std::vector<std::size_t> pivots;
};

namespace detail {

// Gauss-Jordan on a list of row vectors; returns the nonzero reduced rows and their pivots.
inline std::pair<std::vector<Vector>, std::vector<std::size_t>> rref_rows(std::vector<Vector> rows,
                                                                          std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Rational t;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    if (rows[r][c] != 1) {
      Rational inv = 1 / rows[r][c];
      for (std::size_t j = c; j < cols; ++j)
        if (rows[r][j] != 0) rows[r][j] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (rows[r][j] == 0) continue;
        t = f * rows[r][j];
        rows[i][j] -= t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return {std::move(rows), std::move(pivots)};
}

}  // namespace detail

inline RrefResult rref(const RatMatrix& m) {
  std::vector<Vector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  auto [reduced, pivots] = detail::rref_rows(std::move(rows), m.cols());
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < reduced.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = reduced[i][j];
  return {std::move(out), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

/// A linear subspace of Q^n, held by its reduced row-echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n) {
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n);
      e[i] = 1;
      s.basis_.push_back(std::move(e));
      s.pivots_.push_back(i);
    }
    return s;
  }

  static Subspace span(std::size_t n, std::vector<Vector> vectors) {
    for (const auto& v : vectors)
      if (v.size() != n)
        throw DimensionMismatch("span: vector of length " + std::to_string(v.size()) +
                                " in ambient dimension " + std::to_string(n));
    Subspace s(n);
    auto [rows, pivots] = detail::rref_rows(std::move(vectors), n);
    s.basis_ = std::move(rows);
    s.pivots_ = std::move(pivots);
    return s;
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Residual of v after elimination against the echelon basis; zero iff v is in the span.
  Vector reduce(Vector v) const {
    check_length(v.size());
    Rational t;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const Rational f = v[pivots_[k]];
      if (f == 0) continue;
      for (std::size_t j = pivots_[k]; j < ambient_; ++j) {
        if (basis_[k][j] == 0) continue;
        t = f * basis_[k][j];
        v[j] -= t;
      }
    }
    return v;
  }

  bool contains(const Vector& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& q) { return q == 0; });
  }

  bool contains(const Subspace& o) const {
    check_length(o.ambient_);
    return std::all_of(o.basis_.begin(), o.basis_.end(), [this](const Vector& v) { return contains(v); });
  }

  /// Basis of the annihilator {u : u·v = 0 for all v in this subspace}.
  Subspace annihilator() const;

  /// Basis matrix with one basis vector per row.
  RatMatrix as_rows() const {
    RatMatrix m(basis_.size(), ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = basis_[i][j];
    return m;
  }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  void check_length(std::size_t n) const {
    if (n != ambient_)
      throw DimensionMismatch("vector/subspace of dimension " + std::to_string(n) +
                              " against ambient dimension " + std::to_string(ambient_));
  }

  std::size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace nullspace(const RatMatrix& m) {
  auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> vecs;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n);
    v[free] = 1;
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.matrix(k, free);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(n, std::move(vecs));
}

inline Subspace Subspace::annihilator() const {
  if (basis_.empty()) return Subspace::full(ambient_);
  return nullspace(as_rows());
}

inline Subspace column_space(const RatMatrix& m) {
  std::vector<Vector> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace::span(m.rows(), std::move(cols));
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw DimensionMismatch("subspace sum: ambient mismatch");
  std::vector<Vector> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.ambient(), std::move(all));
}

/// U ∩ V computed as the annihilator of (ann U + ann V).
inline Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient())
    throw DimensionMismatch("intersect: ambient dimensions " + std::to_string(u.ambient()) +
                            " and " + std::to_string(v.ambient()));
  if (u.is_zero() || v.is_zero()) return Subspace::zero(u.ambient());
  return subspace_sum(u.annihilator(), v.annihilator()).annihilator();
}

inline bool membership(const Vector& v, const Subspace& u) { return u.contains(v); }

/// Kernel of (M - λI)^n. The power is raised until the kernel stops growing, which happens
/// no later than n = dim.
inline Subspace generalized_nullspace(const RatMatrix& m, const Rational& lambda) {
  if (!m.is_square())
    throw DimensionMismatch("generalized_nullspace: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  const std::size_t n = m.rows();
  RatMatrix shifted = m - RatMatrix::identity(n) * lambda;
  Subspace kernel = nullspace(shifted);
  RatMatrix power = shifted;
  for (std::size_t k = 2; k <= n; ++k) {
    power = power * shifted;
    Subspace next = nullspace(power);
    if (next.dim() == kernel.dim()) break;
    kernel = std::move(next);
  }
  return kernel;
}

/// Exact inverse by Gauss-Jordan; throws DimensionMismatch for singular or non-square input.
inline RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto r = rref(aug);
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1))
    throw DimensionMismatch("inverse of singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.matrix(i, n + j);
  return inv;
}

inline Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Vector> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(m.row(i));
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

inline Rational trace(const RatMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

}  // namespace gradinv

/**
 * @file algebra.hpp
 * @brief Leibniz algebras given by structure constants.
 *
 * The bracket satisfies the (right) Leibniz identity
 *
 *     [[x, y], z] = [x, [y, z]] + [[x, z], y].
 *
 * Structure constants are dense: sc(i, j, k) is the coefficient of e_k in
 * [e_i, e_j].
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbxm/error.hpp"
#include "lbxm/linalg.hpp"
#include "lbxm/report.hpp"

namespace lbxm {

inline constexpr std::size_t kMaxDimension = 64;

/// Dense bilinear map 𝕜^l × 𝕜^r → 𝕜^o.
template <Field F>
class Bilinear {
 public:
  Bilinear() = default;
  Bilinear(std::size_t left_dim, std::size_t right_dim, std::size_t out_dim)
      : l_(left_dim), r_(right_dim), o_(out_dim), data_(left_dim * right_dim * out_dim) {}

  std::size_t left_dim() const { return l_; }
  std::size_t right_dim() const { return r_; }
  std::size_t out_dim() const { return o_; }

  F& at(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * r_ + j) * o_ + k]; }
  const F& at(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * r_ + j) * o_ + k]; }

  /// Image of the basis pair (e_i, e_j).
  std::span<const F> product(std::size_t i, std::size_t j) const { return {data_.data() + (i * r_ + j) * o_, o_}; }

  void set_product(std::size_t i, std::size_t j, std::span<const F> v) {
    if (v.size() != o_) throw DimensionMismatch("product vector has wrong length");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>((i * r_ + j) * o_));
  }

  Vector<F> apply(std::span<const F> x, std::span<const F> y) const {
    if (x.size() != l_ || y.size() != r_)
      throw DimensionMismatch("bilinear map of shape " + shape() + " applied to vectors of sizes " +
                              std::to_string(x.size()) + ", " + std::to_string(y.size()));
    Vector<F> out(o_);
    for (std::size_t i = 0; i < l_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < r_; ++j) {
        if (y[j].is_zero()) continue;
        F c = x[i] * y[j];
        auto p = product(i, j);
        for (std::size_t k = 0; k < o_; ++k)
          if (!p[k].is_zero()) out[k] += c * p[k];
      }
    }
    return out;
  }

  /// Matrix of y ↦ B(x, y).
  Matrix<F> left_multiplication(std::span<const F> x) const {
    Matrix<F> m(o_, r_);
    for (std::size_t j = 0; j < r_; ++j) {
      auto col = apply(x, vec::unit<F>(r_, j));
      for (std::size_t k = 0; k < o_; ++k) m(k, j) = col[k];
    }
    return m;
  }

  /// Matrix of x ↦ B(x, y).
  Matrix<F> right_multiplication(std::span<const F> y) const {
    Matrix<F> m(o_, l_);
    for (std::size_t i = 0; i < l_; ++i) {
      auto col = apply(vec::unit<F>(l_, i), y);
      for (std::size_t k = 0; k < o_; ++k) m(k, i) = col[k];
    }
    return m;
  }

  bool is_zero() const { return vec::is_zero<F>(data_); }
  std::string shape() const { return std::to_string(l_) + "x" + std::to_string(r_) + "->" + std::to_string(o_); }

  friend bool operator==(const Bilinear&, const Bilinear&) = default;

 private:
  std::size_t l_ = 0, r_ = 0, o_ = 0;
  std::vector<F> data_;
};

/// Re-expresses a bilinear map in new bases:
/// B'(x, y) = out · B(left · x, right · y), where left/right map new coordinates
/// to old ones and out maps old output coordinates to new ones.
template <Field F>
Bilinear<F> change_basis(const Bilinear<F>& b, const Matrix<F>& left, const Matrix<F>& right, const Matrix<F>& out) {
  if (left.rows() != b.left_dim() || right.rows() != b.right_dim() || out.cols() != b.out_dim())
    throw DimensionMismatch("change_basis: shape mismatch with " + b.shape());
  Bilinear<F> r(left.cols(), right.cols(), out.rows());
  for (std::size_t i = 0; i < left.cols(); ++i)
    for (std::size_t j = 0; j < right.cols(); ++j) r.set_product(i, j, out.apply(b.apply(left.column(i), right.column(j))));
  return r;
}

template <Field F>
class LeibnizAlgebra {
 public:
  LeibnizAlgebra() = default;

  explicit LeibnizAlgebra(std::size_t dim, std::vector<std::string> names = {})
      : LeibnizAlgebra(Bilinear<F>(dim, dim, dim), std::move(names)) {}

  explicit LeibnizAlgebra(Bilinear<F> sc, std::vector<std::string> names = {})
      : sc_(std::move(sc)), names_(std::move(names)) {
    if (sc_.left_dim() != sc_.right_dim() || sc_.left_dim() != sc_.out_dim())
      throw DimensionMismatch("structure tensor must be n x n -> n, got " + sc_.shape());
    if (dim() > kMaxDimension)
      throw DimensionMismatch("dimension " + std::to_string(dim()) + " exceeds the cap of " +
                              std::to_string(kMaxDimension));
    if (!names_.empty() && names_.size() != dim()) throw DimensionMismatch("one basis label per basis vector required");
  }

  std::size_t dim() const { return sc_.out_dim(); }
  const Bilinear<F>& structure() const { return sc_; }
  const std::vector<std::string>& names() const { return names_; }

  Vector<F> bracket(std::span<const F> x, std::span<const F> y) const { return sc_.apply(x, y); }
  Vector<F> bracket_basis(std::size_t i, std::size_t j) const {
    auto p = sc_.product(i, j);
    return Vector<F>(p.begin(), p.end());
  }

  /// Sets [e_i, e_j] = v.
  void set_bracket(std::size_t i, std::size_t j, std::span<const F> v) { sc_.set_product(i, j, v); }

  Vector<F> basis_vector(std::size_t i) const { return vec::unit<F>(dim(), i); }

  bool is_abelian() const { return sc_.is_zero(); }

  /// Antisymmetric structure constants with vanishing squares.
  bool is_lie() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          if (!(sc_.at(i, j, k) + sc_.at(j, i, k)).is_zero()) return false;
          if (i == j && !sc_.at(i, i, k).is_zero()) return false;
        }
    return true;
  }

  friend bool operator==(const LeibnizAlgebra& a, const LeibnizAlgebra& b) { return a.sc_ == b.sc_; }

 private:
  Bilinear<F> sc_;
  std::vector<std::string> names_;
};

template <Field F>
Report<F> validate_leibniz(const LeibnizAlgebra<F>& a) {
  Report<F> report;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto ei = a.basis_vector(i), ej = a.basis_vector(j), ek = a.basis_vector(k);
        auto lhs = a.bracket(a.bracket_basis(i, j), ek);
        auto rhs = vec::add<F>(a.bracket(ei, a.bracket_basis(j, k)), a.bracket(a.bracket_basis(i, k), ej));
        report.expect_equal("Leibniz", {i, j, k}, std::move(lhs), std::move(rhs));
      }
  return report;
}

/// {x : [x, y] = [y, x] = 0 for all y}
template <Field F>
Subspace<F> annihilator(const LeibnizAlgebra<F>& a) {
  const std::size_t n = a.dim();
  Matrix<F> stacked(2 * n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        stacked(j * n + k, i) = a.structure().at(i, j, k);          // [e_i, e_j]
        stacked(n * n + j * n + k, i) = a.structure().at(j, i, k);  // [e_j, e_i]
      }
  return nullspace(stacked);
}

/// [a, a] = span{[e_i, e_j]}
template <Field F>
Subspace<F> commutator(const LeibnizAlgebra<F>& a) {
  std::vector<Vector<F>> products;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) products.push_back(a.bracket_basis(i, j));
  return Subspace<F>::span(a.dim(), products);
}

template <Field F>
bool is_perfect(const LeibnizAlgebra<F>& a) {
  return commutator(a).is_full();
}

/// Two-sided ideal test: [s, a] ⊆ s and [a, s] ⊆ s.
template <Field F>
bool is_ideal(const LeibnizAlgebra<F>& a, const Subspace<F>& s) {
  s.check_ambient(a.dim());
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto ej = a.basis_vector(j);
      if (!s.contains(a.bracket(s.basis().row(r), ej)) || !s.contains(a.bracket(ej, s.basis().row(r)))) return false;
    }
  return true;
}

template <Field F>
bool is_subalgebra(const LeibnizAlgebra<F>& a, const Subspace<F>& s) {
  s.check_ambient(a.dim());
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t t = 0; t < s.dim(); ++t)
      if (!s.contains(a.bracket(s.basis().row(r), s.basis().row(t)))) return false;
  return true;
}

template <Field F>
struct InducedAlgebra {
  LeibnizAlgebra<F> algebra;
  Matrix<F> inclusion;  // ambient_dim × dim, columns = RREF basis of the subspace
};

/// Structure constants of a subalgebra in its canonical RREF basis.
template <Field F>
InducedAlgebra<F> subalgebra(const LeibnizAlgebra<F>& a, const Subspace<F>& s) {
  s.check_ambient(a.dim());
  LeibnizAlgebra<F> sub(s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t t = 0; t < s.dim(); ++t) {
      auto coords = s.coordinates(a.bracket(s.basis().row(r), s.basis().row(t)));
      if (!coords) throw PreconditionFailed("subalgebra: subspace is not closed under the bracket");
      sub.set_bracket(r, t, *coords);
    }
  return {std::move(sub), s.inclusion()};
}

template <Field F>
struct QuotientAlgebra {
  LeibnizAlgebra<F> algebra;
  Matrix<F> projection;                 // (n − k) × n
  std::vector<std::size_t> representatives;  // ambient indices of the coset representatives
};

/// Quotient by an ideal. Coset representatives are the basis vectors e_j
/// for the non-pivot columns j of the ideal's RREF basis, in index order.
template <Field F>
QuotientAlgebra<F> quotient_algebra(const LeibnizAlgebra<F>& a, const Subspace<F>& ideal) {
  if (!is_ideal(a, ideal)) throw PreconditionFailed("quotient_algebra: subspace is not an ideal");
  const std::size_t n = a.dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ideal.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> reps;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) reps.push_back(j);

  // reduce v modulo the ideal, then read the representative coordinates
  Matrix<F> projection(reps.size(), n);
  for (std::size_t j = 0; j < n; ++j) {
    auto v = a.basis_vector(j);
    for (std::size_t r = 0; r < ideal.dim(); ++r) {
      F c = v[ideal.pivots()[r]];
      if (!c.is_zero()) vec::axpy<F>(v, -c, ideal.basis().row(r));
    }
    for (std::size_t q = 0; q < reps.size(); ++q) projection(q, j) = v[reps[q]];
  }

  LeibnizAlgebra<F> quotient(reps.size());
  for (std::size_t s = 0; s < reps.size(); ++s)
    for (std::size_t t = 0; t < reps.size(); ++t)
      quotient.set_bracket(s, t, projection.apply(a.bracket_basis(reps[s], reps[t])));
  return {std::move(quotient), std::move(projection), std::move(reps)};
}

/// Checks that f: a → b preserves brackets on basis pairs.
template <Field F>
Report<F> check_homomorphism(const LeibnizAlgebra<F>& a, const LeibnizAlgebra<F>& b, const Matrix<F>& f,
                             const std::string& label = "hom") {
  if (f.rows() != b.dim() || f.cols() != a.dim())
    throw DimensionMismatch("homomorphism matrix " + f.shape() + " between algebras of dimensions " +
                            std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  Report<F> report;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      report.expect_equal(label, {i, j}, f.apply(a.bracket_basis(i, j)), b.bracket(f.column(i), f.column(j)));
  return report;
}

/// True if f is a bijective bracket-preserving map.
template <Field F>
bool is_isomorphism(const LeibnizAlgebra<F>& a, const LeibnizAlgebra<F>& b, const Matrix<F>& f) {
  return a.dim() == b.dim() && rank(f) == a.dim() && check_homomorphism(a, b, f).ok();
}

/// a ⊕ b with a's basis first.
template <Field F>
LeibnizAlgebra<F> direct_sum(const LeibnizAlgebra<F>& a, const LeibnizAlgebra<F>& b) {
  const std::size_t n = a.dim(), m = b.dim();
  LeibnizAlgebra<F> s(n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.set_bracket(i, j, vec::concat<F>(a.bracket_basis(i, j), vec::zero<F>(m)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      s.set_bracket(n + i, n + j, vec::concat<F>(vec::zero<F>(n), b.bracket_basis(i, j)));
  return s;
}

}  // namespace lbxm

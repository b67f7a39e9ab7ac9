/**
 * @file linalg.hpp
 * @brief Exact Gaussian elimination and the subspace calculus.
 *
 * All subspaces are stored by their reduced row-echelon basis, which is
 * unique; equality of subspaces is therefore equality of bases. Pivots are
 * always chosen as the first nonzero column, and nullspace vectors are
 * generated in order of free columns before being brought to RREF.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "lbxm/error.hpp"
#include "lbxm/matrix.hpp"

namespace lbxm {

/// Incrementally maintained RREF of a growing set of row vectors.
///
/// Rows are kept sorted by pivot column, normalized, and with every pivot
/// column cleared in all other rows. Inserting a dependent row is a no-op.
template <Field F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == width_; }
  const std::vector<Vector<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the current rows; the remainder has zeros in every pivot column.
  Vector<F> reduce(Vector<F> v) const {
    if (v.size() != width_) throw DimensionMismatch("row of width " + std::to_string(v.size()) +
                                                    " in echelon basis of width " + std::to_string(width_));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      F c = v[pivots_[r]];
      if (!c.is_zero()) vec::axpy<F>(v, -c, rows_[r]);
    }
    return v;
  }

  /// Returns true if v enlarged the span.
  bool insert(Vector<F> v) {
    v = reduce(std::move(v));
    auto it = std::find_if(v.begin(), v.end(), [](const F& x) { return !x.is_zero(); });
    if (it == v.end()) return false;
    std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    F inv = F::from_int(1) / v[pivot];
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    for (auto& row : rows_) {
      F c = row[pivot];
      if (!c.is_zero()) vec::axpy<F>(row, -c, v);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, pivot);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

 private:
  std::size_t width_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

template <Field F>
struct RrefResult {
  Matrix<F> matrix;                 // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank = 0;
};

template <Field F>
RrefResult<F> rref(const Matrix<F>& m) {
  EchelonBasis<F> eb(m.cols());
  for (std::size_t i = 0; i < m.rows() && !eb.full(); ++i)
    eb.insert(Vector<F>(m.row(i).begin(), m.row(i).end()));
  RrefResult<F> out{Matrix<F>(m.rows(), m.cols()), eb.pivots(), eb.rank()};
  for (std::size_t i = 0; i < eb.rank(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.matrix(i, j) = eb.rows()[i][j];
  return out;
}

template <Field F>
class Subspace {
 public:
  Subspace() = default;

  /// The zero subspace of 𝕜^n.
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }

  static Subspace full(std::size_t n) { return from_echelon(identity_echelon(n)); }

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector<F>>& vectors) {
    EchelonBasis<F> eb(ambient_dim);
    for (const auto& v : vectors) {
      if (eb.full()) break;
      eb.insert(v);
    }
    return from_echelon(eb);
  }

  /// Row space of m.
  static Subspace row_space(const Matrix<F>& m) {
    EchelonBasis<F> eb(m.cols());
    for (std::size_t i = 0; i < m.rows() && !eb.full(); ++i) eb.insert(Vector<F>(m.row(i).begin(), m.row(i).end()));
    return from_echelon(eb);
  }

  /// Column space of m, i.e. the image of m as a linear map.
  static Subspace column_space(const Matrix<F>& m) { return row_space(m.transpose()); }

  static Subspace from_echelon(const EchelonBasis<F>& eb) {
    Subspace s(eb.width());
    s.basis_ = Matrix<F>::from_rows(eb.width(), eb.rows());
    s.pivots_ = eb.pivots();
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  /// Basis vectors as rows, in RREF.
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector<F> vector(std::size_t i) const { return Vector<F>(basis_.row(i).begin(), basis_.row(i).end()); }
  std::vector<Vector<F>> vectors() const {
    std::vector<Vector<F>> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(vector(i));
    return out;
  }

  /// n × dim matrix whose columns are the basis vectors: the inclusion map.
  Matrix<F> inclusion() const { return basis_.transpose(); }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Coordinates of v in the RREF basis, or nullopt if v lies outside.
  std::optional<Vector<F>> coordinates(std::span<const F> v) const {
    check_ambient(v.size());
    Vector<F> coords(dim());
    Vector<F> rest(v.begin(), v.end());
    for (std::size_t r = 0; r < dim(); ++r) {
      coords[r] = rest[pivots_[r]];
      if (!coords[r].is_zero()) vec::axpy<F>(rest, -coords[r], basis_.row(r));
    }
    if (!vec::is_zero<F>(rest)) return std::nullopt;
    return coords;
  }

  bool contains(std::span<const F> v) const { return coordinates(v).has_value(); }

  bool contains(const Subspace& other) const {
    check_ambient(other.ambient_);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Linear combination of the basis with the given coefficients.
  Vector<F> combine(std::span<const F> coords) const {
    if (coords.size() != dim()) throw DimensionMismatch("coordinate vector has wrong length");
    Vector<F> v(ambient_);
    for (std::size_t r = 0; r < dim(); ++r) vec::axpy<F>(v, coords[r], basis_.row(r));
    return v;
  }

  /// Matrix (dim × n) expressing ambient vectors of this subspace in its basis.
  /// Only meaningful on vectors inside the subspace: it reads pivot coordinates.
  Matrix<F> coordinate_map() const {
    Matrix<F> m(dim(), ambient_);
    for (std::size_t r = 0; r < dim(); ++r) m(r, pivots_[r]) = F::from_int(1);
    return m;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  void check_ambient(std::size_t n) const {
    if (n != ambient_)
      throw DimensionMismatch("ambient dimension " + std::to_string(n) + " vs " + std::to_string(ambient_));
  }

 private:
  static EchelonBasis<F> identity_echelon(std::size_t n) {
    EchelonBasis<F> eb(n);
    for (std::size_t i = 0; i < n; ++i) eb.insert(vec::unit<F>(n, i));
    return eb;
  }

  std::size_t ambient_ = 0;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}
template <Field F>
Subspace<F> nullspace(const Matrix<F>& m) {
  auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector<F>> vectors;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<F> v(n);
    v[f] = F::from_int(1);
    for (std::size_t row = 0; row < r.rank; ++row) v[r.pivots[row]] = -r.matrix(row, f);
    vectors.push_back(std::move(v));
  }
  return Subspace<F>::span(n, vectors);
}

/// Nullspace of the linear map whose columns are given one by one.
///
/// Useful when a constraint system is produced by evaluating a linear
/// residual on unit vectors: column j is the residual of the j-th unknown.
template <Field F>
Subspace<F> nullspace_of_columns(std::size_t rows, const std::vector<Vector<F>>& columns) {
  return nullspace(Matrix<F>::from_columns(rows, columns));
}

template <Field F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b.ambient_dim());
  auto vs = a.vectors();
  auto ws = b.vectors();
  vs.insert(vs.end(), ws.begin(), ws.end());
  return Subspace<F>::span(a.ambient_dim(), vs);
}

template <Field F>
Subspace<F> intersection(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b.ambient_dim());
  const std::size_t n = a.ambient_dim();
  // x·A = y·B  ⇔  (x, y) ∈ nullspace([Aᵀ | −Bᵀ])
  Matrix<F> m(n, a.dim() + b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t j = 0; j < n; ++j) m(j, r) = a.basis()(r, j);
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::size_t j = 0; j < n; ++j) m(j, a.dim() + r) = -b.basis()(r, j);
  auto null = nullspace(m);
  std::vector<Vector<F>> vectors;
  for (std::size_t k = 0; k < null.dim(); ++k) {
    auto xy = null.vector(k);
    vectors.push_back(a.combine(std::span<const F>(xy.data(), a.dim())));
  }
  return Subspace<F>::span(n, vectors);
}

/// Coset representatives of a inside b: the basis vectors of b (in order)
/// that are not in the span of a together with the earlier representatives.
template <Field F>
std::vector<Vector<F>> quotient_basis(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b.ambient_dim());
  if (!b.contains(a)) throw PreconditionFailed("quotient_basis: subspace is not contained in the ambient subspace");
  EchelonBasis<F> eb(a.ambient_dim());
  for (std::size_t i = 0; i < a.dim(); ++i) eb.insert(a.vector(i));
  std::vector<Vector<F>> reps;
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (eb.insert(b.vector(i))) reps.push_back(b.vector(i));
  return reps;
}

/// Image f(S) of a subspace under a linear map.
template <Field F>
Subspace<F> image(const Matrix<F>& f, const Subspace<F>& s) {
  s.check_ambient(f.cols());
  std::vector<Vector<F>> vs;
  for (std::size_t i = 0; i < s.dim(); ++i) vs.push_back(f.apply(s.basis().row(i)));
  return Subspace<F>::span(f.rows(), vs);
}

/// Preimage f⁻¹(S).
template <Field F>
Subspace<F> preimage(const Matrix<F>& f, const Subspace<F>& s) {
  s.check_ambient(f.rows());
  // v ∈ f⁻¹(S) ⇔ f v has zero component outside S. Project onto non-pivot coordinates after reduction.
  const std::size_t n = f.cols();
  std::vector<Vector<F>> columns;
  for (std::size_t j = 0; j < n; ++j) {
    Vector<F> img = f.column(j);
    for (std::size_t r = 0; r < s.dim(); ++r) {
      F c = img[s.pivots()[r]];
      if (!c.is_zero()) vec::axpy<F>(img, -c, s.basis().row(r));
    }
    columns.push_back(std::move(img));
  }
  return nullspace_of_columns<F>(f.rows(), columns);
}

/// Solves m x = b; returns one solution or nullopt.
template <Field F>
std::optional<Vector<F>> solve(const Matrix<F>& m, std::type_identity_t<std::span<const F>> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side has wrong length");
  Matrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto r = rref(aug);
  Vector<F> x(m.cols());
  for (std::size_t row = 0; row < r.rank; ++row) {
    if (r.pivots[row] == m.cols()) return std::nullopt;
    x[r.pivots[row]] = r.matrix(row, m.cols());
  }
  return x;
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

}  // namespace lbxm

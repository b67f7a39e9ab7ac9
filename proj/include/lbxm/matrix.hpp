#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "lbxm/error.hpp"
#include "lbxm/field.hpp"

namespace lbxm {

template <Field F>
using Vector = std::vector<F>;

namespace vec {

template <Field F>
Vector<F> zero(std::size_t n) {
  return Vector<F>(n, F{});
}

template <Field F>
Vector<F> unit(std::size_t n, std::size_t i) {
  Vector<F> v(n, F{});
  v.at(i) = F::from_int(1);
  return v;
}

template <Field F>
bool is_zero(std::span<const F> v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

template <Field F>
void check_same_size(std::span<const F> a, std::span<const F> b) {
  if (a.size() != b.size())
    throw DimensionMismatch("vector sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

/// y += c * x
template <Field F>
void axpy(Vector<F>& y, const F& c, std::span<const F> x) {
  check_same_size<F>(y, x);
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += c * x[i];
}

template <Field F>
Vector<F> add(Vector<F> a, std::span<const F> b) {
  axpy(a, F::from_int(1), b);
  return a;
}

template <Field F>
Vector<F> sub(Vector<F> a, std::span<const F> b) {
  axpy(a, F::from_int(-1), b);
  return a;
}

template <Field F>
Vector<F> scale(Vector<F> a, const F& c) {
  for (auto& x : a) x *= c;
  return a;
}

template <Field F>
Vector<F> neg(Vector<F> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <Field F>
Vector<F> concat(std::span<const F> a, std::span<const F> b) {
  Vector<F> r(a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace vec

/// Dense row-major matrix. As a linear map it acts on column vectors:
/// an r×c matrix sends 𝕜^c to 𝕜^r, and composition is the matrix product.
template <Field F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F::from_int(1);
    return m;
  }

  static Matrix from_rows(std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<Vector<F>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<F>& data() const { return data_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const F> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<F> column(std::size_t j) const {
    Vector<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const { return vec::is_zero<F>(data_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector<F> apply(std::span<const F> v) const {
    if (v.size() != cols_)
      throw DimensionMismatch("applying " + shape() + " matrix to vector of size " + std::to_string(v.size()));
    Vector<F> out(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const F& a = (*this)(i, j);
        if (!a.is_zero()) out[i] += a * v[j];
      }
    }
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const F& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= F::from_int(-1); }
  friend Matrix operator*(Matrix a, const F& c) { return a *= c; }
  friend Matrix operator*(const F& c, Matrix a) { return a *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("product of " + a.shape() + " and " + b.shape());
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b(k, j);
          if (!bkj.is_zero()) r(i, j) += aik * bkj;
        }
      }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shapes " + shape() + " and " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

/// [[a, 0], [0, b]]
template <Field F>
Matrix<F> block_diagonal(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

}  // namespace lbxm

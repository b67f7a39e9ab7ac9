#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lbxm/error.hpp"
#include "lbxm/matrix.hpp"

namespace lbxm {

/// A failed identity: which one, on which basis elements, and both sides.
template <Field F>
struct Violation {
  std::string label;
  std::vector<std::size_t> witness;
  Vector<F> lhs;
  Vector<F> rhs;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of a validator. Failure is data, not an exception.
template <Field F>
struct Report {
  std::vector<Violation<F>> violations;

  bool ok() const { return violations.empty(); }

  /// Records a violation if lhs ≠ rhs. Returns whether they agreed.
  bool expect_equal(std::string label, std::vector<std::size_t> witness, Vector<F> lhs, Vector<F> rhs) {
    if (lhs == rhs) return true;
    violations.push_back({std::move(label), std::move(witness), std::move(lhs), std::move(rhs)});
    return false;
  }

  /// Appends the violations of a sub-check, prefixing their labels.
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) {
      auto copy = v;
      if (!prefix.empty()) copy.label = prefix + copy.label;
      violations.push_back(std::move(copy));
    }
  }
};

/// Compares two matrices column by column; a differing column j is recorded
/// with witness `prefix` followed by j.
template <Field F>
bool expect_equal_columns(Report<F>& report, const std::string& label, const Matrix<F>& a, const Matrix<F>& b,
                          std::vector<std::size_t> prefix = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(label + ": comparing " + a.shape() + " with " + b.shape());
  bool all = true;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto w = prefix;
    w.push_back(j);
    all = report.expect_equal(label, std::move(w), a.column(j), b.column(j)) && all;
  }
  return all;
}

}  // namespace lbxm

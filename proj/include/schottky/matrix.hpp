#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schottky/errors.hpp"

namespace schottky {

using Rational = mpq_class;
using Integer = mpz_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

// num/den in lowest terms; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> values)
      : rows_(rows), cols_(cols), data_(values) {
    if (data_.size() != rows * cols) {
      throw StructuralError("matrix initializer has " +
                            std::to_string(data_.size()) + " entries, expected " +
                            std::to_string(rows * cols));
    }
  }
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows * cols) {
      throw StructuralError("matrix data has wrong size");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_,
                          data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = i + 1; j < cols_; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) return false;
      }
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw StructuralError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<std::int64_t>;

RatMatrix to_rational(const IntMatrix& m);

// Exact determinant (fraction-free elimination).
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

// Rank over the rationals.
std::size_t rank(const RatMatrix& m);

// The unique x with a x = b, or nothing when the system is inconsistent or
// underdetermined.
std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b);

}  // namespace schottky

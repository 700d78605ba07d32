#pragma once

#include "crnkit/rational.hpp"

#include <cstddef>
#include <vector>

namespace crnkit {

// Dense row-major rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  std::vector<Rational> row(std::size_t r) const;
  RationalMatrix transpose() const;
  bool is_zero() const;

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
std::vector<Rational> operator*(const RationalMatrix& a, const std::vector<Rational>& x);
// Row vector times matrix: v^T A.
std::vector<Rational> left_multiply(const std::vector<Rational>& v, const RationalMatrix& a);

// In-place reduced row echelon form; returns pivot columns in order.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

// Basis of {x : A x = 0}, one vector per free column, with that free entry equal to 1.
std::vector<std::vector<Rational>> null_space(const RationalMatrix& a);

// Basis vectors as the columns of an n x d matrix.
RationalMatrix basis_matrix(const std::vector<std::vector<Rational>>& basis, std::size_t n);

}  // namespace crnkit

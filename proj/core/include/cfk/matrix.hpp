#pragma once

#include "cfk/algebra.hpp"

namespace cfk {

/// Dense matrix of polynomials. Maps between free modules use the row
/// convention: row i is the image of basis vector i.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols);

  static PolyMatrix identity(std::size_t n);
  static PolyMatrix from_rows(const std::vector<Element>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const MultiPoly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  MultiPoly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Element row(std::size_t i) const;

  bool is_zero() const;
  /// True iff every entry is a polynomial in d alone.
  bool is_univariate_in_d() const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MultiPoly> data_;
};

/// Image of x: result_k = sum_i x_i * m(i, k). Commutes with multiplication
/// by polynomials in d because coordinates and entries commute.
Element apply_map(const PolyMatrix& m, const Element& x);

/// Matrix of "first a, then b".
PolyMatrix compose(const PolyMatrix& a, const PolyMatrix& b);

/// Determinant of a square matrix with entries in Q[d] (fraction-free
/// Bareiss elimination).
MultiPoly determinant(const PolyMatrix& m);

}  // namespace cfk

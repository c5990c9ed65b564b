#include "cfk/matrix.hpp"

#include "cfk/error.hpp"

#include <algorithm>

namespace cfk {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = MultiPoly(1);
  return m;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<Element>& rows, std::size_t cols) {
  PolyMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rank() != cols) throw DimensionError("row has the wrong length");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Element PolyMatrix::row(std::size_t i) const {
  return Element(std::vector<MultiPoly>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)));
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_univariate_in_d() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const MultiPoly& p) { return p.only_involves({VarId::D()}); });
}

Element apply_map(const PolyMatrix& m, const Element& x) {
  if (x.rank() != m.rows()) throw DimensionError("element rank does not match the map's source");
  Element out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (!m.at(i, k).is_zero()) out[k] += x[i] * m.at(i, k);
    }
  }
  return out;
}

PolyMatrix compose(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("maps cannot be composed");
  PolyMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Element image = apply_map(b, a.row(i));
    for (std::size_t k = 0; k < b.cols(); ++k) out.at(i, k) = image[k];
  }
  return out;
}

MultiPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  if (!m.is_univariate_in_d()) throw PreconditionError("determinant expects entries in Q[d]");
  const std::size_t n = m.rows();
  if (n == 0) return MultiPoly(1);
  PolyMatrix a = m;
  MultiPoly previous(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a.at(swap_with, k).is_zero()) ++swap_with;
      if (swap_with == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_with, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const MultiPoly num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = divide_univariate(num, previous, VarId::D()).first;
      }
      a.at(i, k) = MultiPoly();
    }
    previous = a.at(k, k);
  }
  MultiPoly det = a.at(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace cfk

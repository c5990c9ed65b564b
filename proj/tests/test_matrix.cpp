#include <gtest/gtest.h>

#include "cfk/error.hpp"
#include "cfk/matrix.hpp"
#include "support.hpp"

using namespace cfk;
using cfk::test::P;

namespace {

MultiPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return MultiPoly(1);
  if (n == 1) return m.at(0, 0);
  MultiPoly det;
  for (std::size_t c = 0; c < n; ++c) {
    PolyMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor.at(i - 1, jj++) = m.at(i, j);
      }
    }
    MultiPoly term = m.at(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

PolyMatrix random_matrix(std::mt19937& rng, std::size_t n, std::size_t k, unsigned deg) {
  PolyMatrix m(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m.at(i, j) = test::random_poly(rng, {VarId::D()}, deg, 2);
  }
  return m;
}

}  // namespace

TEST(Matrix, DeterminantExamples) {
  EXPECT_EQ(determinant(PolyMatrix::identity(3)), MultiPoly(1));
  auto m = PolyMatrix::from_rows({Element({P("d"), P("1")}), Element({P("d^2"), P("d + 1")})}, 2);
  EXPECT_EQ(determinant(m), P("d"));
  PolyMatrix zero_pivot(2, 2);
  zero_pivot.at(0, 1) = P("1");
  zero_pivot.at(1, 0) = P("d");
  EXPECT_EQ(determinant(zero_pivot), P("-d"));
  EXPECT_THROW(determinant(PolyMatrix(2, 3)), DimensionError);
}

TEST(MatrixProperty, DeterminantMatchesCofactorExpansion) {
  std::mt19937 rng(41);
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + iter % 4;
    auto m = random_matrix(rng, n, n, 2);
    ASSERT_EQ(determinant(m), cofactor_det(m));
  }
}

TEST(MatrixProperty, ComposeMatchesSequentialApplication) {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 100; ++iter) {
    auto a = random_matrix(rng, 2, 3, 2);
    auto b = random_matrix(rng, 3, 2, 1);
    auto x = test::random_element(rng, 2);
    ASSERT_EQ(apply_map(compose(a, b), x), apply_map(b, apply_map(a, x)));
    auto sq_a = random_matrix(rng, 3, 3, 1);
    auto sq_b = random_matrix(rng, 3, 3, 1);
    ASSERT_EQ(determinant(compose(sq_a, sq_b)), determinant(sq_a) * determinant(sq_b));
  }
}

TEST(Matrix, ApplyMapUsesRowConvention) {
  // e0 -> 2 e1, e1 -> d e0
  auto m = PolyMatrix::from_rows({Element({P("0"), P("2")}), Element({P("d"), P("0")})}, 2);
  EXPECT_EQ(apply_map(m, Element({P("1"), P("0")})), Element({P("0"), P("2")}));
  EXPECT_EQ(apply_map(m, Element({P("d"), P("1")})), Element({P("d"), P("2*d")}));
  EXPECT_TRUE(m.is_univariate_in_d());
}

#include <gtest/gtest.h>

#include "cfk/algebra.hpp"
#include "cfk/error.hpp"
#include "support.hpp"

using namespace cfk;
using cfk::test::P;

namespace {

// Rank one, [L_l L] = (d + k l) L.
ConformalAlgebra rank_one(const Rational& k) {
  StructureTable t(1, 1, 1);
  t.set(0, 0, Element({MultiPoly::var(VarId::D()) + MultiPoly::var(VarId::L1()).scaled(k)}));
  return ConformalAlgebra(AlgebraKind::Lie, {"L"}, t);
}

bool table_skew(const ConformalAlgebra& a) {
  const auto flip = P("-l - d");
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) {
      for (std::size_t k = 0; k < a.rank(); ++k) {
        if (a.product(i, j)[k] != -substitute(a.product(j, i)[k], VarId::L1(), flip)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(Algebra, VirasoroPasses) {
  auto vir = rank_one(2);
  EXPECT_TRUE(check_axioms(vir).pass());
  auto prod = product_eval(vir, vir.basis(0), vir.basis(0), spectral::lambda());
  EXPECT_EQ(prod[0], P("d + 2*l"));
}

TEST(Algebra, AbelianPasses) {
  EXPECT_TRUE(check_axioms(ConformalAlgebra::abelian(AlgebraKind::Lie, {"A", "B", "C"})).pass());
  EXPECT_TRUE(
      check_axioms(ConformalAlgebra::abelian(AlgebraKind::Associative, {"A", "B", "C"})).pass());
}

TEST(Algebra, CorruptedVirasoroSkewResidual) {
  // c(d,l) + c(d,-l-d) with c = d + 3l
  auto bad = rank_one(3);
  auto skew = check_skew_symmetry(bad);
  ASSERT_FALSE(skew.pass());
  ASSERT_EQ(skew.violations.size(), 1u);
  EXPECT_EQ(skew.violations[0].residual[0], P("-d"));
}

TEST(Algebra, JacobiResidualMatchesHandExpansion) {
  for (int k : {1, 2, 3, -1}) {
    // [L_l [L_m L]] - [[L_l L]_{l+m} L] - [L_m [L_l L]] for c = d + k l
    const auto d = P("d"), l = P("l"), m = P("m");
    const MultiPoly kk(k);
    MultiPoly expected = (d + l + kk * m) * (d + kk * l) -
                         (-(l + m) + kk * l) * (d + kk * (l + m)) -
                         (d + m + kk * l) * (d + kk * m);
    auto report = check_jacobi(rank_one(k));
    if (expected.is_zero()) {
      EXPECT_TRUE(report.pass()) << k;
    } else {
      ASSERT_EQ(report.violations.size(), 1u) << k;
      EXPECT_EQ(report.violations[0].residual[0], expected) << k;
    }
  }
  EXPECT_EQ(check_jacobi(rank_one(3)).violations[0].residual[0], P("-d*l - 3*l^2 - 3*l*m"));
}

TEST(Algebra, CorpusAlgebrasPass) {
  auto sv = test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
  EXPECT_TRUE(check_axioms(*test::algebra(sv, "SV")).pass());
  auto e = test::load_fixture("assoc4", test::params({{"f", "0"}, {"h", "0"}, {"a", "0"},
                                                      {"b", "1"}, {"c", "0"}, {"g", "1"}}));
  EXPECT_TRUE(check_axioms(*test::algebra(e, "E")).pass());
  auto cur = test::load_fixture("current");
  EXPECT_TRUE(check_axioms(*test::algebra(cur, "Cur")).pass());
}

TEST(Algebra, CorruptedAssociativeFails) {
  auto doc = test::parse_or_throw(R"(
algebra A : assoc {
  gens e1, e2;
  [e1,e2] = e1;
  [e2,e2] = (d) e2;
}
)");
  auto report = check_axioms(*test::algebra(doc, "A"));
  ASSERT_FALSE(report.pass());
  // (e2_l e2)_{l+m} e2 = (-(l+m)) d e2,  e2_l (e2_m e2) = (d + l) d e2
  bool saw_222 = false;
  for (const auto& v : report.violations) {
    if (v.indices == std::vector<std::size_t>{1, 1, 1}) {
      saw_222 = true;
      EXPECT_EQ(v.residual[1], P("(-l - m) * d - (d + l) * d"));
    }
  }
  EXPECT_TRUE(saw_222);
}

TEST(Algebra, KindMismatchThrows) {
  auto lie = rank_one(2);
  EXPECT_THROW(check_associativity(lie), KindError);
  EXPECT_THROW(check_skew_symmetry(ConformalAlgebra::abelian(AlgebraKind::Associative, {"A"})),
               KindError);
}

TEST(AlgebraProperty, Sesquilinearity) {
  auto sv = test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
  const auto& a = *test::algebra(sv, "SV");
  std::mt19937 rng(21);
  const auto s = spectral::lambda();
  for (int iter = 0; iter < 60; ++iter) {
    auto x = test::random_element(rng, a.rank());
    auto y = test::random_element(rng, a.rank());
    auto p = test::random_poly(rng, {VarId::D()}, 2);
    auto base = product_eval(a, x, y, s);
    ASSERT_EQ(product_eval(a, x.times(p), y, s), base.times(substitute(p, VarId::D(), -s)));
    ASSERT_EQ(product_eval(a, x, y.times(p), s), base.times(substitute(p, VarId::D(), P("d + l"))));
  }
}

TEST(AlgebraProperty, SkewCheckMatchesTableRestatement) {
  std::mt19937 rng(22);
  const auto flip = P("-l - d");
  int passing = 0;
  for (int iter = 0; iter < 150; ++iter) {
    StructureTable t(2, 2, 2);
    const bool make_skew = iter % 2 == 0;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = i; j < 2; ++j) {
        Element e(2), f(2);
        for (std::size_t k = 0; k < 2; ++k) {
          auto c = test::random_poly(rng, {VarId::D(), VarId::L1()}, 2, 2);
          if (i == j && make_skew) c = c - substitute(c, VarId::L1(), flip);
          e[k] = c;
          f[k] = make_skew ? -substitute(c, VarId::L1(), flip)
                           : test::random_poly(rng, {VarId::D(), VarId::L1()}, 2, 2);
        }
        t.set(i, j, e);
        if (i != j) t.set(j, i, f);
      }
    }
    ConformalAlgebra a(AlgebraKind::Lie, {"A", "B"}, t);
    const bool by_check = check_skew_symmetry(a).pass();
    ASSERT_EQ(by_check, table_skew(a));
    passing += by_check;
  }
  EXPECT_GT(passing, 50);
}

TEST(AlgebraProperty, JacobiOnArbitraryElements) {
  auto sv = test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
  std::vector<ConformalAlgebra> algebras = {rank_one(2), *test::algebra(sv, "SV")};
  std::mt19937 rng(23);
  const auto lam = spectral::lambda(), mu = spectral::mu(), sum = spectral::lambda_plus_mu();
  for (const auto& a : algebras) {
    ASSERT_TRUE(check_axioms(a).pass());
    for (int iter = 0; iter < 25; ++iter) {
      auto x = test::random_element(rng, a.rank());
      auto y = test::random_element(rng, a.rank());
      auto z = test::random_element(rng, a.rank());
      Element r = product_eval(a, x, product_eval(a, y, z, mu), lam) -
                  product_eval(a, product_eval(a, x, y, lam), z, sum) -
                  product_eval(a, y, product_eval(a, x, z, lam), mu);
      ASSERT_TRUE(r.is_zero());
    }
  }
}

TEST(Algebra, RejectsTablesOutsideDL) {
  StructureTable t(1, 1, 1);
  t.set(0, 0, Element({P("m")}));
  EXPECT_FALSE(t.is_in_d_l());
}

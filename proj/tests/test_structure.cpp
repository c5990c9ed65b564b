#include <gtest/gtest.h>

#include "cfk/error.hpp"
#include "cfk/structure.hpp"
#include "support.hpp"

using namespace cfk;
using cfk::test::P;

namespace {

PolyMatrix rows(std::initializer_list<std::initializer_list<const char*>> r) {
  std::vector<Element> out;
  std::size_t cols = 0;
  for (auto row : r) {
    std::vector<MultiPoly> coords;
    for (const char* e : row) coords.push_back(P(e));
    cols = coords.size();
    out.emplace_back(std::move(coords));
  }
  return PolyMatrix::from_rows(out, cols);
}

Element el(std::initializer_list<const char*> coords) {
  std::vector<MultiPoly> c;
  for (const char* e : coords) c.push_back(P(e));
  return Element(std::move(c));
}

std::vector<Element> rows_of(const PolyMatrix& m) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

// Random unimodular T and its inverse, as products of elementary row operations.
std::pair<PolyMatrix, PolyMatrix> random_unimodular(std::mt19937& rng, std::size_t n) {
  PolyMatrix t = PolyMatrix::identity(n), inv = PolyMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int step = 0; step < 4; ++step) {
    PolyMatrix e = PolyMatrix::identity(n), e_inv = PolyMatrix::identity(n);
    const std::size_t i = pick(rng), j = pick(rng);
    if (i != j) {
      auto p = test::random_poly(rng, {VarId::D()}, 2, 2);
      e.at(i, j) = p;
      e_inv.at(i, j) = -p;
    } else {
      Rational c = test::random_rational(rng);
      if (c == 0) c = 3;
      e.at(i, i) = c;
      e_inv.at(i, i) = Rational(1 / c);
    }
    // rows of the new basis: e applied after t
    t = compose(t, e);
    inv = compose(e_inv, inv);
  }
  return {t, inv};
}

// Same algebra written in the basis f_i = row i of t.
ConformalAlgebra change_basis(const ConformalAlgebra& a, const PolyMatrix& t, const PolyMatrix& inv) {
  const std::size_t n = a.rank();
  StructureTable table(n, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table.set(i, j, apply_map(inv, product_eval(a, t.row(i), t.row(j), spectral::lambda())));
    }
  }
  return ConformalAlgebra(a.kind(), a.basis_names(), table);
}

ConformalAlgebra sv_deformed(const char* a, const char* b) {
  auto doc = test::load_fixture("sv", test::params({{"a", a}, {"b", b}, {"c", "0"}}));
  return *test::algebra(doc, "Qphi");
}

ConformalAlgebra sv_tilde(const char* c) {
  auto doc = test::load_fixture("sv_scale", test::params({{"a", "1"}, {"b", c}, {"c", c}}));
  return *test::algebra(doc, "Qt");
}

}  // namespace

TEST(Hnf, Examples) {
  EXPECT_EQ(hermite_normal_form(rows({{"d"}, {"d^2"}})), rows({{"d"}}));
  EXPECT_EQ(hermite_normal_form(rows({{"2"}})), rows({{"1"}}));
  EXPECT_EQ(hermite_normal_form(rows({{"0", "1"}, {"d", "0"}})), rows({{"d", "0"}, {"0", "1"}}));
  EXPECT_EQ(hermite_normal_form(rows({{"d", "0"}, {"0", "1"}})), rows({{"d", "0"}, {"0", "1"}}));
  EXPECT_EQ(hermite_normal_form(rows({{"d", "d + 3"}, {"0", "d"}})), rows({{"d", "3"}, {"0", "d"}}));
  EXPECT_EQ(hermite_normal_form(rows({{"0", "0"}})).rows(), 0u);
}

TEST(Submodule, SpanAndMembership) {
  auto full = span(1, {el({"d"}), el({"2"})});
  EXPECT_EQ(full, Submodule::full(1));
  EXPECT_TRUE(submodule_equals(full, Submodule::full(1)));
  EXPECT_TRUE(span(2, {}).is_zero());
  auto diag = span(2, {el({"1", "-1"})});
  EXPECT_EQ(diag.generators().rows(), 1u);
  auto dl = span(1, {el({"d"})});
  EXPECT_TRUE(member(dl, el({"d^2"})));
  EXPECT_FALSE(member(dl, el({"1"})));
  EXPECT_TRUE(member(dl, el({"0"})));
  EXPECT_TRUE(member(Submodule(3), Element(3)));
  EXPECT_THROW(span(1, {el({"l"})}), PreconditionError);
  EXPECT_THROW(member(dl, el({"1", "0"})), DimensionError);
}

TEST(StructureProperty, HnfIdempotentAndSameRowSpace) {
  std::mt19937 rng(61);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t r = 1 + iter % 3, c = 1 + (iter / 3) % 3;
    PolyMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = test::random_poly(rng, {VarId::D()}, 2, 2);
    }
    auto h = hermite_normal_form(m);
    ASSERT_EQ(hermite_normal_form(h), h);
    auto s_orig = span(c, rows_of(m));
    auto s_hnf = span(c, rows_of(h));
    for (const auto& v : rows_of(h)) ASSERT_TRUE(member(s_orig, v));
    for (const auto& v : rows_of(m)) ASSERT_TRUE(member(s_hnf, v));
    ASSERT_EQ(s_orig, s_hnf);
  }
}

TEST(StructureProperty, SpanIgnoresOrder) {
  std::mt19937 rng(62);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Element> vs;
    for (int k = 0; k < 3; ++k) vs.push_back(test::random_element(rng, 3));
    auto s = span(3, vs);
    std::shuffle(vs.begin(), vs.end(), rng);
    ASSERT_EQ(span(3, vs), s);
    vs.push_back(vs[0].times(P("d + 1")) + vs[1]);
    ASSERT_EQ(span(3, vs), s);
  }
}

TEST(Derived, Examples) {
  auto ab = ConformalAlgebra::abelian(AlgebraKind::Lie, {"A", "B", "C"});
  EXPECT_TRUE(derived_subalgebra(ab, Submodule::full(3)).is_zero());
  auto w = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", "0"}, {"f", "0"}}));
  const auto& vir = *test::algebra(w, "Vir");
  EXPECT_EQ(derived_subalgebra(vir, Submodule::full(1)), Submodule::full(1));
  EXPECT_EQ(derived_subalgebra(sv_deformed("0", "1"), Submodule::full(2)), span(2, {el({"0", "1"})}));
}

TEST(Solvability, Verdicts) {
  auto ab = ConformalAlgebra::abelian(AlgebraKind::Lie, {"A"});
  auto s = is_solvable(ab);
  EXPECT_EQ(s.verdict, Solvability::Verdict::Solvable);
  EXPECT_EQ(s.depth, 1u);

  auto w = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", "0"}, {"f", "0"}}));
  EXPECT_EQ(is_solvable(*test::algebra(w, "Vir")).verdict, Solvability::Verdict::NotSolvable);
  EXPECT_TRUE(is_abelian(*test::algebra(w, "Qf")));
  EXPECT_FALSE(is_abelian(*test::algebra(w, "Vir")));

  s = is_solvable(sv_deformed("0", "1"));
  EXPECT_EQ(s.verdict, Solvability::Verdict::Solvable);
  EXPECT_EQ(s.depth, 2u);
  EXPECT_EQ(is_solvable(sv_deformed("0", "0")).verdict, Solvability::Verdict::Solvable);
  EXPECT_EQ(is_solvable(sv_deformed("1", "0")).verdict, Solvability::Verdict::NotSolvable);
  EXPECT_EQ(is_solvable(sv_deformed("2", "1")).verdict, Solvability::Verdict::NotSolvable);
  EXPECT_EQ(is_solvable(sv_tilde("1")).verdict, Solvability::Verdict::NotSolvable);

  EXPECT_EQ(is_solvable(sv_deformed("0", "1"), 1).verdict, Solvability::Verdict::Unknown);
  EXPECT_EQ(to_string(Solvability::Verdict::NotSolvable), "not_solvable");
  EXPECT_THROW(is_solvable(ConformalAlgebra::abelian(AlgebraKind::Associative, {"A"})), KindError);
}

TEST(StructureProperty, DerivedIsMonotone) {
  std::mt19937 rng(63);
  auto doc = test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "0"}}));
  const auto& sv = *test::algebra(doc, "SV");
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<Element> big;
    for (int k = 0; k < 2; ++k) big.push_back(test::random_element(rng, 4, 1));
    auto t = span(4, big);
    std::vector<Element> small;
    for (const auto& g : t.generator_elements()) {
      small.push_back(g.times(test::random_poly(rng, {VarId::D()}, 1, 2)));
    }
    auto s = span(4, small);
    ASSERT_TRUE(contains(t, s));
    ASSERT_TRUE(contains(derived_subalgebra(sv, t), derived_subalgebra(sv, s)));
  }
}

TEST(StructureProperty, ProductsOfArbitraryElementsStayInDerived) {
  std::mt19937 rng(64);
  for (const auto& a : {sv_deformed("0", "1"), sv_deformed("2", "1"), sv_tilde("1")}) {
    for (int iter = 0; iter < 20; ++iter) {
      auto s = span(2, {test::random_element(rng, 2, 1)});
      auto der = derived_subalgebra(a, s);
      const auto gens = s.generator_elements();
      auto combo = [&] {
        Element x(2);
        for (const auto& g : gens) x += g.times(test::random_poly(rng, {VarId::D()}, 2, 2));
        return x;
      };
      auto prod = product_eval(a, combo(), combo(), spectral::lambda());
      std::vector<std::vector<MultiPoly>> by_power;
      for (std::size_t k = 0; k < prod.rank(); ++k) {
        auto coeffs = coefficient_list(prod[k], VarId::L1());
        if (by_power.size() < coeffs.size()) by_power.resize(coeffs.size(), std::vector<MultiPoly>(2));
        for (std::size_t p = 0; p < coeffs.size(); ++p) by_power[p][k] = coeffs[p];
      }
      for (auto& c : by_power) ASSERT_TRUE(member(der, Element(c)));
    }
  }
}

TEST(StructureProperty, SolvabilityInvariantUnderUnimodularChange) {
  std::mt19937 rng(65);
  for (const auto& a : {sv_tilde("1"), sv_deformed("0", "1"), sv_deformed("2", "1")}) {
    const auto expected = is_solvable(a).verdict;
    for (int iter = 0; iter < 10; ++iter) {
      auto [t, inv] = random_unimodular(rng, 2);
      ASSERT_EQ(compose(t, inv), PolyMatrix::identity(2));
      auto b = change_basis(a, t, inv);
      ASSERT_TRUE(check_axioms(b).pass());
      ASSERT_EQ(is_solvable(b).verdict, expected);
    }
  }
}

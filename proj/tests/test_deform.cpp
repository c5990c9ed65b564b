#include <gtest/gtest.h>

#include "cfk/deform.hpp"
#include "cfk/error.hpp"
#include "support.hpp"

using namespace cfk;
using cfk::test::P;

namespace {

ParamMap sv_params(const char* a, const char* b) {
  return test::params({{"a", a}, {"b", b}, {"c", "0"}});
}

PolyMatrix diag(std::initializer_list<const char*> entries) {
  PolyMatrix m(entries.size(), entries.size());
  std::size_t i = 0;
  for (const char* e : entries) {
    m.at(i, i) = P(e);
    ++i;
  }
  return m;
}

void expect_lemma(const MatchedPair& mp, const DeformationMap& phi) {
  ASSERT_TRUE(check_deformation_map(mp, phi).pass());
  EXPECT_TRUE(check_axioms(deformed_algebra(mp, phi)).pass());
  EXPECT_TRUE(graph_embedding_check(mp, phi).pass());
}

}  // namespace

TEST(Deform, WOneZeroDeformedBracket) {
  for (const char* f : {"1", "3", "-1/2"}) {
    auto doc = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", "0"}, {"f", f}}));
    const auto& mp = test::pair(doc, "P");
    const auto& phi = test::defmap(doc, "phi");
    expect_lemma(mp, phi);
    auto q = deformed_algebra(mp, phi);
    EXPECT_EQ(q.product(0, 0)[0], MultiPoly(parse_rational(f)) * P("d + 2*l"));
  }
}

TEST(Deform, WTwoZeroRejectsNonzeroMap) {
  // The residual is quadratic in f.
  std::vector<Element> residuals;
  for (const char* f : {"1", "2", "3"}) {
    auto doc = test::load_fixture("w_ab", test::params({{"a", "2"}, {"b", "0"}, {"f", f}}));
    auto report = check_deformation_map(test::pair(doc, "P"), test::defmap(doc, "phi"));
    ASSERT_FALSE(report.pass());
    residuals.push_back(report.violations[0].residual);
  }
  EXPECT_EQ(residuals[1], residuals[0].times(MultiPoly(4)));
  EXPECT_EQ(residuals[2], residuals[0].times(MultiPoly(9)));
}

TEST(Deform, ZeroMapLeavesComplementUnchanged) {
  auto sv = test::load_fixture("sv", sv_params("2", "1"));
  auto w = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", "3"}, {"f", "0"}}));
  auto assoc = test::load_fixture("assoc4", test::params({{"f", "0"}, {"h", "0"}, {"a", "0"},
                                                          {"b", "1"}, {"c", "0"}, {"g", "1"}}));
  for (const Document* doc : {&sv, &w, &assoc}) {
    const auto& mp = test::pair(*doc, "P");
    auto zero = DeformationMap::zero(mp);
    EXPECT_TRUE(check_deformation_map(mp, zero).pass());
    EXPECT_EQ(deformed_algebra(mp, zero).table(), mp.q->table());
  }
}

TEST(DeformProperty, PassingMapsGiveAlgebrasAndGraphs) {
  std::mt19937 rng(51);
  for (int iter = 0; iter < 12; ++iter) {
    const std::string a = to_string(test::random_rational(rng));
    const std::string b = to_string(test::random_rational(rng));
    const std::string c = to_string(test::random_rational(rng));
    auto w = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", b.c_str()}, {"f", a.c_str()}}));
    expect_lemma(test::pair(w, "P"), test::defmap(w, "phi"));
    auto sv = test::load_fixture("sv", sv_params(a.c_str(), b.c_str()));
    expect_lemma(test::pair(sv, "P"), test::defmap(sv, "phi"));
    auto mw = test::load_fixture(
        "multi_w", test::params({{"b", b.c_str()}, {"a1", a.c_str()}, {"a2", c.c_str()}, {"a3", b.c_str()}}));
    expect_lemma(test::pair(mw, "P"), test::defmap(mw, "phi"));
    EXPECT_EQ(deformed_algebra(test::pair(mw, "P"), test::defmap(mw, "phi")),
              *test::algebra(mw, "Qphi"));
  }
}

TEST(DeformProperty, AssociativeFamiliesPass) {
  std::mt19937 rng(52);
  for (int iter = 0; iter < 12; ++iter) {
    const std::string a = to_string(test::random_rational(rng));
    const std::string b = to_string(test::random_rational(rng));
    const std::string c = to_string(test::random_rational(rng));
    // family (4) needs a*g = b*c; pick g accordingly when a != 0
    const Rational ar = parse_rational(a);
    const std::string g = ar == 0 ? "0" : to_string(Rational(parse_rational(b) * parse_rational(c) / ar));
    const std::string bb = ar == 0 ? "0" : b;
    auto doc = test::load_fixture("assoc4", test::params({{"f", a.c_str()}, {"h", c.c_str()},
                                                          {"a", a.c_str()}, {"b", bb.c_str()},
                                                          {"c", c.c_str()}, {"g", g.c_str()}}));
    const auto& mp = test::pair(doc, "P");
    for (const char* name : {"phi1", "phi2", "phi3", "phi4", "phi_e2"}) {
      SCOPED_TRACE(name);
      expect_lemma(mp, test::defmap(doc, name));
    }
  }
}

TEST(Deform, MorphismScalingOnVirasoro) {
  for (const char* f : {"1", "3"}) {
    auto doc = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", "0"}, {"f", f}}));
    const auto& h = test::morphism(doc, "toVir");
    EXPECT_TRUE(check_morphism(h).pass());
    EXPECT_TRUE(is_isomorphism(h));
    // W -> L only intertwines when the scale is 1.
    Morphism unit{h.source, h.target, PolyMatrix::identity(1)};
    EXPECT_EQ(check_morphism(unit).pass(), std::string(f) == "1");
  }
}

TEST(Deform, IsomorphismNeedsUnitDeterminant) {
  auto ab = std::make_shared<const ConformalAlgebra>(
      ConformalAlgebra::abelian(AlgebraKind::Lie, {"W"}));
  Morphism id{ab, ab, PolyMatrix::identity(1)};
  EXPECT_TRUE(is_isomorphism(id));
  Morphism by_d{ab, ab, diag({"d"})};
  EXPECT_TRUE(check_morphism(by_d).pass());
  EXPECT_FALSE(is_isomorphism(by_d));
  EXPECT_FALSE(is_unimodular(diag({"0"})));
  EXPECT_TRUE(is_unimodular(diag({"-2"})));
}

TEST(Deform, SchroedingerVirasoroMorphismDirection) {
  // Y -> aY, M -> a^2 M maps the deformed complement onto the normalized one.
  auto doc = test::load_fixture("sv_scale", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
  EXPECT_TRUE(check_morphism(test::morphism(doc, "scale_up")).pass());
  EXPECT_TRUE(check_morphism(test::morphism(doc, "scale_down_rev")).pass());
  EXPECT_FALSE(check_morphism(test::morphism(doc, "scale_down")).pass());
}

TEST(Deform, EquivalenceIsReflexive) {
  auto sv = test::load_fixture("sv", sv_params("2", "1"));
  const auto& mp = test::pair(sv, "P");
  for (const char* name : {"phi", "phi01", "phi05", "phi00"}) {
    const auto& phi = test::defmap(sv, name);
    EXPECT_TRUE(check_equivalence(mp, phi, phi, PolyMatrix::identity(2)).pass()) << name;
  }
  auto w = test::load_fixture("w_ab", test::params({{"a", "1"}, {"b", "0"}, {"f", "3"}}));
  const auto& phi = test::defmap(w, "phi");
  EXPECT_TRUE(check_equivalence(test::pair(w, "P"), phi, phi, PolyMatrix::identity(1)).pass());
}

TEST(Deform, EquivalenceSymmetricAndTransitive) {
  auto sv = test::load_fixture("sv", sv_params("0", "2"));
  const auto& mp = test::pair(sv, "P");
  const auto& phi05 = test::defmap(sv, "phi05");
  const auto& phi01 = test::defmap(sv, "phi01");
  const auto& phi02 = test::defmap(sv, "phi");
  const auto a51 = diag({"5", "25"});
  const auto a21 = diag({"2", "4"});
  const auto a12 = diag({"1/2", "1/4"});
  EXPECT_TRUE(check_equivalence(mp, phi05, phi01, a51).pass());
  EXPECT_TRUE(check_equivalence(mp, phi02, phi01, a21).pass());
  EXPECT_TRUE(check_equivalence(mp, phi01, phi02, a12).pass());
  EXPECT_TRUE(check_equivalence(mp, phi01, phi05, diag({"1/5", "1/25"})).pass());
  EXPECT_TRUE(check_equivalence(mp, phi05, phi02, compose(a51, a12)).pass());
  EXPECT_FALSE(check_equivalence(mp, phi05, phi01, a21).pass());
}

TEST(Deform, EquivalenceRequiresAutomorphism) {
  auto sv = test::load_fixture("sv", sv_params("2", "1"));
  const auto& mp = test::pair(sv, "P");
  const auto& phi = test::defmap(sv, "phi01");
  EXPECT_THROW(check_equivalence(mp, phi, phi, diag({"d", "1"})), PreconditionError);
  EXPECT_THROW(check_equivalence(mp, phi, phi, diag({"0", "1"})), PreconditionError);
}

TEST(Deform, TableEntriesForSchroedingerVirasoro) {
  auto doc = test::load_fixture("sv", sv_params("2", "1"));
  auto q = deformed_algebra(test::pair(doc, "P"), test::defmap(doc, "phi"));
  // [Y,Y] = a(d + 2l) Y + (d + 2l) M, [Y,M] = (a d + 2b) M
  EXPECT_EQ(q.product(0, 0), Element({P("2*d + 4*l"), P("d + 2*l")}));
  EXPECT_EQ(q.product(0, 1), Element({P("0"), P("2*d + 2")}));
  EXPECT_EQ(q, *test::algebra(doc, "Qphi"));
}

#include <gtest/gtest.h>

#include "cfk/actions.hpp"
#include "cfk/error.hpp"
#include "support.hpp"

using namespace cfk;
using cfk::test::P;

namespace {

Document w_ab(const char* a, const char* b) {
  return test::load_fixture("w_ab", test::params({{"a", a}, {"b", b}, {"f", "0"}}));
}

}  // namespace

TEST(Actions, WabPairPassesAndRebuildsAmbient) {
  for (auto [a, b] : {std::pair{"1", "0"}, {"2", "0"}, {"1", "3"}, {"0", "1"}, {"-1", "1/2"}}) {
    auto doc = w_ab(a, b);
    const auto& mp = test::pair(doc, "P");
    EXPECT_TRUE(check_matched_pair(mp).pass()) << a << "," << b;
    EXPECT_EQ(build_bicrossed(mp), *test::algebra(doc, "Wab")) << a << "," << b;
  }
}

TEST(Actions, BicrossedEntriesByHand) {
  auto doc = w_ab("2", "1");
  auto e = build_bicrossed(test::pair(doc, "P"));
  // [W,L] is the right action; [L,W] follows from skew-symmetry: -((a-1)d + a(-l-d) - b).
  EXPECT_EQ(e.product(1, 0)[1], P("d + 2*l - 1"));
  EXPECT_EQ(e.product(0, 1)[1], P("d + 2*l + 1"));
  EXPECT_TRUE(e.product(1, 1).is_zero());
}

TEST(Actions, TrivialPairIsDirectSum) {
  auto doc = w_ab("1", "0");
  auto vir = test::algebra(doc, "Vir");
  auto ab = test::algebra(doc, "Ab");
  auto mp = MatchedPair::trivial(vir, ab);
  EXPECT_TRUE(check_matched_pair(mp).pass());
  EXPECT_TRUE(check_b1_b2_direct(mp).pass());
  auto e = build_bicrossed(mp);
  EXPECT_TRUE(e.product(0, 1).is_zero());
  EXPECT_TRUE(e.product(1, 0).is_zero());

  // Trivial actions over a broken component: direct sum fails too.
  auto bad = test::load_fixture("vir_corrupt");
  auto broken = MatchedPair::trivial(test::algebra(bad, "VirBad"), ab);
  EXPECT_FALSE(check_axioms(*test::algebra(bad, "VirBad")).pass());
  EXPECT_FALSE(check_axioms(build_bicrossed(broken)).pass());
  EXPECT_FALSE(check_matched_pair(broken).pass());
}

TEST(Actions, FlippedActionFails) {
  for (auto [a, b] : {std::pair{"1", "0"}, {"2", "1"}}) {
    auto doc = test::load_fixture("w_flipped", test::params({{"a", a}, {"b", b}}));
    const auto& mp = test::pair(doc, "Bad");
    EXPECT_FALSE(check_matched_pair(mp).pass());
    EXPECT_FALSE(check_jacobi(build_bicrossed(mp)).pass());
  }
}

TEST(Actions, ComponentsEmbed) {
  auto sv = test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
  auto w = w_ab("2", "1");
  auto assoc = test::load_fixture("assoc4", test::params({{"f", "0"}, {"h", "0"}, {"a", "0"},
                                                          {"b", "1"}, {"c", "0"}, {"g", "1"}}));
  for (const MatchedPair* mp :
       {&test::pair(sv, "P"), &test::pair(w, "P"), &test::pair(assoc, "P")}) {
    auto e = build_bicrossed(*mp);
    const std::size_t nr = mp->r->rank(), nq = mp->q->rank();
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nr; ++j) {
        for (std::size_t k = 0; k < nr; ++k) EXPECT_EQ(e.product(i, j)[k], mp->r->product(i, j)[k]);
        for (std::size_t k = 0; k < nq; ++k) EXPECT_TRUE(e.product(i, j)[nr + k].is_zero());
      }
    }
    // Q need not be closed in E (the actions may leak into R), but its
    // Q-component must match the table of Q.
    for (std::size_t i = 0; i < nq; ++i) {
      for (std::size_t j = 0; j < nq; ++j) {
        for (std::size_t k = 0; k < nq; ++k) {
          EXPECT_EQ(e.product(nr + i, nr + j)[nr + k], mp->q->product(i, j)[k]);
        }
      }
    }
  }
}

TEST(Actions, AssociativeBicrossed) {
  auto doc = test::load_fixture("assoc4", test::params({{"f", "0"}, {"h", "0"}, {"a", "0"},
                                                        {"b", "1"}, {"c", "0"}, {"g", "1"}}));
  const auto& mp = test::pair(doc, "P");
  EXPECT_TRUE(check_matched_pair(mp).pass());
  EXPECT_EQ(build_bicrossed(mp), *test::algebra(doc, "E"));
  EXPECT_THROW(check_b1_b2_direct(mp), KindError);
}

TEST(Actions, B1B2AgreesWithNormativeCheck) {
  std::vector<Document> docs;
  for (auto [a, b] : {std::pair{"1", "0"}, {"2", "0"}, {"1", "3"}, {"0", "1"}}) docs.push_back(w_ab(a, b));
  docs.push_back(test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}})));
  docs.push_back(test::load_fixture(
      "multi_w", test::params({{"b", "2"}, {"a1", "1"}, {"a2", "0"}, {"a3", "-2"}})));
  for (const auto& doc : docs) {
    const auto& mp = test::pair(doc, "P");
    EXPECT_EQ(check_b1_b2_direct(mp).pass(), check_matched_pair(mp).pass());
  }
}

TEST(ActionsProperty, RightToLeftRoundTrip) {
  auto doc = test::load_fixture("sv", test::params({{"a", "2"}, {"b", "1"}, {"c", "1/2"}}));
  auto r = test::algebra(doc, "R");
  std::mt19937 rng(31);
  for (int iter = 0; iter < 100; ++iter) {
    StructureTable t(2, 2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        Element e(2);
        for (std::size_t k = 0; k < 2; ++k) {
          e[k] = test::random_poly(rng, {VarId::D(), VarId::L1()}, 2, 2);
        }
        t.set(i, j, e);
      }
    }
    ModuleAction right(ActionSide::Right, r, 2, t);
    auto left = right_to_left(right);
    EXPECT_EQ(left.side(), ActionSide::Left);
    ASSERT_EQ(left_to_right(left), right);
    ASSERT_EQ(right_to_left(left_to_right(left)), left);
  }
}

TEST(Actions, RightToLeftByHand) {
  auto doc = w_ab("2", "1");
  const auto& mp = test::pair(doc, "P");
  // L_l W := -W <|_{-l-d} L = -((a-1)d + a(-l-d) - b) W
  auto left = right_to_left(mp.lhd);
  EXPECT_EQ(left.table().at(0, 0)[0], P("d + 2*l + 1"));
}

TEST(Actions, ValidateRejectsMismatchedKinds) {
  auto doc = w_ab("1", "0");
  auto assoc = std::make_shared<const ConformalAlgebra>(
      ConformalAlgebra::abelian(AlgebraKind::Associative, {"X"}));
  MatchedPair mp = test::pair(doc, "P");
  mp.q = assoc;
  EXPECT_THROW(mp.validate(), Error);
}

#include "cfk/actions.hpp"

#include "cfk/error.hpp"

namespace cfk {

ModuleAction::ModuleAction(ActionSide side, AlgebraRef acting, std::size_t carrier_rank,
                           StructureTable table)
    : side_(side), acting_(std::move(acting)), carrier_rank_(carrier_rank), table_(std::move(table)) {
  if (!acting_) throw PreconditionError("module action without an acting algebra");
  const std::size_t m = acting_->rank();
  const bool left = side_ == ActionSide::Left;
  const std::size_t rows = left ? m : carrier_rank_;
  const std::size_t cols = left ? carrier_rank_ : m;
  if (table_.left_rank() != rows || table_.right_rank() != cols ||
      table_.out_rank() != carrier_rank_) {
    throw DimensionError("action table does not match acting and carrier ranks");
  }
  if (!table_.is_in_d_l()) throw PreconditionError("action polynomials may only involve d and l");
}

ModuleAction ModuleAction::trivial(ActionSide side, AlgebraRef acting, std::size_t carrier_rank) {
  const std::size_t m = acting->rank();
  StructureTable t = side == ActionSide::Left ? StructureTable(m, carrier_rank, carrier_rank)
                                              : StructureTable(carrier_rank, m, carrier_rank);
  return {side, std::move(acting), carrier_rank, std::move(t)};
}

Element action_eval(const ModuleAction& act, const Element& lhs, const Element& rhs,
                    const MultiPoly& s) {
  return sesquilinear_eval(act.table(), lhs, rhs, s);
}

CheckReport check_module(const ModuleAction& act) {
  using namespace spectral;
  CheckReport report;
  const ConformalAlgebra& alg = act.acting();
  const std::size_t m = alg.rank();
  const std::size_t n = act.carrier_rank();
  const bool lie = act.kind() == AlgebraKind::Lie;
  for (std::size_t a = 0; a < m; ++a) {
    const Element ea = act.acting_basis(a);
    for (std::size_t b = 0; b < m; ++b) {
      const Element eb = act.acting_basis(b);
      for (std::size_t v = 0; v < n; ++v) {
        const Element ev = act.carrier_basis(v);
        Element residual;
        if (act.side() == ActionSide::Left) {
          // [a_l b]_{l+m} v = a_l (b_m v) - b_m (a_l v)   (Lie)
          // (a_l b)_{l+m} v = a_l (b_m v)                  (associative)
          residual = action_eval(act, product_eval(alg, ea, eb, lambda()), ev, lambda_plus_mu()) -
                     action_eval(act, ea, action_eval(act, eb, ev, mu()), lambda());
          if (lie) residual += action_eval(act, eb, action_eval(act, ea, ev, lambda()), mu());
        } else if (lie) {
          // v_m [a_l b] = (v_m a)_{l+m} b - (v_m b)_{-l-d} a
          residual = action_eval(act, ev, product_eval(alg, ea, eb, lambda()), mu()) -
                     action_eval(act, action_eval(act, ev, ea, mu()), eb, lambda_plus_mu()) +
                     action_eval(act, action_eval(act, ev, eb, mu()), ea, minus_lambda_minus_d());
        } else {
          // (v_l a)_{l+m} b = v_l (a_m b)
          residual = action_eval(act, action_eval(act, ev, ea, lambda()), eb, lambda_plus_mu()) -
                     action_eval(act, ev, product_eval(alg, ea, eb, mu()), lambda());
        }
        report.require(act.side() == ActionSide::Left ? "left-module" : "right-module", {a, b, v},
                       std::move(residual));
      }
    }
  }
  return report;
}

CheckReport check_bimodule(const ModuleAction& left, const ModuleAction& right) {
  using namespace spectral;
  if (left.kind() != AlgebraKind::Associative || right.kind() != AlgebraKind::Associative) {
    throw KindError("bimodule compatibility is defined for associative algebras");
  }
  if (left.side() != ActionSide::Left || right.side() != ActionSide::Right) {
    throw KindError("check_bimodule expects (left action, right action)");
  }
  if (left.carrier_rank() != right.carrier_rank() || left.acting().rank() != right.acting().rank()) {
    throw DimensionError("bimodule actions disagree on ranks");
  }
  CheckReport report;
  const std::size_t m = left.acting().rank();
  const std::size_t n = left.carrier_rank();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t b = 0; b < m; ++b) {
        const Element ea = left.acting_basis(a);
        const Element eb = right.acting_basis(b);
        const Element ev = left.carrier_basis(v);
        report.require(
            "bimodule", {a, v, b},
            action_eval(right, action_eval(left, ea, ev, lambda()), eb, lambda_plus_mu()) -
                action_eval(left, ea, action_eval(right, ev, eb, mu()), lambda()));
      }
    }
  }
  return report;
}

namespace {

// new(i, j) = -old(j, i)[l -> -l - d]
StructureTable transpose_flip(const StructureTable& t) {
  StructureTable out(t.right_rank(), t.left_rank(), t.out_rank());
  const MultiPoly flipped = spectral::minus_lambda_minus_d();
  for (std::size_t i = 0; i < t.left_rank(); ++i) {
    for (std::size_t j = 0; j < t.right_rank(); ++j) {
      out.set(j, i, -t.at(i, j).substituted(VarId::L1(), flipped));
    }
  }
  return out;
}

}  // namespace

ModuleAction right_to_left(const ModuleAction& act) {
  if (act.kind() != AlgebraKind::Lie || act.side() != ActionSide::Right) {
    throw KindError("right_to_left expects a right action of a Lie conformal algebra");
  }
  return {ActionSide::Left, act.acting_ref(), act.carrier_rank(), transpose_flip(act.table())};
}

ModuleAction left_to_right(const ModuleAction& act) {
  if (act.kind() != AlgebraKind::Lie || act.side() != ActionSide::Left) {
    throw KindError("left_to_right expects a left action of a Lie conformal algebra");
  }
  return {ActionSide::Right, act.acting_ref(), act.carrier_rank(), transpose_flip(act.table())};
}

namespace {

void expect_action(const ModuleAction& act, ActionSide side, const AlgebraRef& acting,
                   std::size_t carrier_rank, const char* name) {
  if (act.side() != side) throw KindError(std::string(name) + " has the wrong side");
  if (!(act.acting() == *acting)) {
    throw PreconditionError(std::string(name) + " is not an action of the expected algebra");
  }
  if (act.carrier_rank() != carrier_rank) {
    throw DimensionError(std::string(name) + " has the wrong carrier rank");
  }
}

}  // namespace

void MatchedPair::validate() const {
  if (!r || !q) throw PreconditionError("matched pair without component algebras");
  if (r->kind() != kind || q->kind() != kind) {
    throw KindError("matched pair components must share the pair's kind");
  }
  expect_action(lhd, ActionSide::Right, r, q->rank(), "<|");
  expect_action(rhd, ActionSide::Left, q, r->rank(), "|>");
  if (kind == AlgebraKind::Associative) {
    if (!lharp || !rharp) throw PreconditionError("associative matched pair needs <~ and ~>");
    expect_action(*lharp, ActionSide::Right, q, r->rank(), "<~");
    expect_action(*rharp, ActionSide::Left, r, q->rank(), "~>");
  } else if (lharp || rharp) {
    throw KindError("<~ and ~> are only defined for associative matched pairs");
  }
}

MatchedPair MatchedPair::trivial(AlgebraRef r, AlgebraRef q) {
  const AlgebraKind kind = r->kind();
  MatchedPair mp{kind,
                 r,
                 q,
                 ModuleAction::trivial(ActionSide::Right, r, q->rank()),
                 ModuleAction::trivial(ActionSide::Left, q, r->rank()),
                 std::nullopt,
                 std::nullopt};
  if (kind == AlgebraKind::Associative) {
    mp.lharp = ModuleAction::trivial(ActionSide::Right, q, r->rank());
    mp.rharp = ModuleAction::trivial(ActionSide::Left, r, q->rank());
  }
  mp.validate();
  return mp;
}

namespace {

Element concat(const Element& a, const Element& b) {
  std::vector<MultiPoly> coords = a.coords();
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return Element(std::move(coords));
}

}  // namespace

ConformalAlgebra build_bicrossed(const MatchedPair& mp) {
  using namespace spectral;
  mp.validate();
  const ConformalAlgebra& r = *mp.r;
  const ConformalAlgebra& q = *mp.q;
  const std::size_t nr = r.rank();
  const std::size_t nq = q.rank();
  const Element zero_r(nr);
  const Element zero_q(nq);
  StructureTable table(nr + nq, nr + nq, nr + nq);
  const bool lie = mp.kind == AlgebraKind::Lie;

  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nr; ++j) table.set(i, j, concat(r.product(i, j), zero_q));
  }
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) table.set(nr + i, nr + j, concat(zero_r, q.product(i, j)));
  }
  for (std::size_t a = 0; a < nr; ++a) {
    const Element ea = r.basis(a);
    for (std::size_t x = 0; x < nq; ++x) {
      const Element ex = q.basis(x);
      // x_l a: (x |>_l a) (+) (x <|_l a)
      table.set(nr + x, a,
                concat(action_eval(mp.rhd, ex, ea, lambda()), action_eval(mp.lhd, ex, ea, lambda())));
      if (lie) {
        // a_l y: (-y |>_{-l-d} a) (+) (-y <|_{-l-d} a)
        table.set(a, nr + x,
                  concat(-action_eval(mp.rhd, ex, ea, minus_lambda_minus_d()),
                         -action_eval(mp.lhd, ex, ea, minus_lambda_minus_d())));
      } else {
        // a_l y: (a <~_l y) (+) (a ~>_l y)
        table.set(a, nr + x,
                  concat(action_eval(*mp.lharp, ea, ex, lambda()),
                         action_eval(*mp.rharp, ea, ex, lambda())));
      }
    }
  }
  std::vector<std::string> names = r.basis_names();
  names.insert(names.end(), q.basis_names().begin(), q.basis_names().end());
  return {mp.kind, std::move(names), std::move(table)};
}

CheckReport check_matched_pair(const MatchedPair& mp) {
  mp.validate();
  CheckReport report;
  report.merge(check_axioms(*mp.r), "R: ");
  report.merge(check_axioms(*mp.q), "Q: ");
  report.merge(check_module(mp.lhd), "<|: ");
  report.merge(check_module(mp.rhd), "|>: ");
  if (mp.kind == AlgebraKind::Associative) {
    report.merge(check_module(*mp.lharp), "<~: ");
    report.merge(check_module(*mp.rharp), "~>: ");
    report.merge(check_bimodule(*mp.rharp, mp.lhd), "Q bimodule: ");
    report.merge(check_bimodule(mp.rhd, *mp.lharp), "R bimodule: ");
  }
  report.merge(check_axioms(build_bicrossed(mp)), "bicrossed: ");
  return report;
}

CheckReport check_b1_b2_direct(const MatchedPair& mp) {
  using namespace spectral;
  mp.validate();
  if (mp.kind != AlgebraKind::Lie) throw KindError("B1/B2 are conditions on Lie matched pairs");
  const ConformalAlgebra& r = *mp.r;
  const ConformalAlgebra& q = *mp.q;
  const MultiPoly d = MultiPoly::var(VarId::D());
  const MultiPoly all = -lambda() - mu() - d;
  CheckReport report;
  report.merge(check_axioms(r), "R: ");
  report.merge(check_axioms(q), "Q: ");
  report.merge(check_module(mp.lhd), "<|: ");
  report.merge(check_module(mp.rhd), "|>: ");

  for (std::size_t x = 0; x < q.rank(); ++x) {
    const Element ex = q.basis(x);
    for (std::size_t a = 0; a < r.rank(); ++a) {
      const Element ea = r.basis(a);
      for (std::size_t b = 0; b < r.rank(); ++b) {
        const Element eb = r.basis(b);
        const Element lhs = action_eval(mp.rhd, ex, product_eval(r, ea, eb, lambda()), all);
        const Element t1 =
            product_eval(r, action_eval(mp.rhd, ex, ea, minus_lambda_minus_d()), eb, minus_mu_minus_d());
        const Element t2 = product_eval(r, ea, action_eval(mp.rhd, ex, eb, minus_mu_minus_d()), lambda());
        const Element t3 = action_eval(mp.rhd, action_eval(mp.lhd, ex, ea, minus_lambda_minus_d()), eb,
                                       minus_mu_minus_d());
        const Element t4 = action_eval(mp.rhd, action_eval(mp.lhd, ex, eb, minus_mu_minus_d()), ea,
                                       minus_lambda_minus_d());
        report.require("B1", {x, a, b}, lhs - t1 - t2 - t3 + t4);
      }
    }
  }

  for (std::size_t x = 0; x < q.rank(); ++x) {
    const Element ex = q.basis(x);
    for (std::size_t y = 0; y < q.rank(); ++y) {
      const Element ey = q.basis(y);
      for (std::size_t a = 0; a < r.rank(); ++a) {
        const Element ea = r.basis(a);
        const Element lhs = action_eval(mp.lhd, product_eval(q, ex, ey, mu()), ea, minus_lambda_minus_d());
        const Element t1 = product_eval(q, ex, action_eval(mp.lhd, ey, ea, minus_lambda_minus_d()), mu());
        const Element t2 =
            product_eval(q, action_eval(mp.lhd, ex, ea, minus_lambda_minus_d()), ey, lambda_plus_mu());
        const Element t3 = action_eval(mp.lhd, ex, action_eval(mp.rhd, ey, ea, minus_lambda_minus_d()), mu());
        const Element t4 = action_eval(mp.lhd, ey, action_eval(mp.rhd, ex, ea, minus_lambda_minus_d()), all);
        report.require("B2", {x, y, a}, lhs - t1 - t2 - t3 + t4);
      }
    }
  }
  return report;
}

}  // namespace cfk

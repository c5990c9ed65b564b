#include "cfk/deform.hpp"

#include "cfk/error.hpp"

namespace cfk {

DeformationMap DeformationMap::zero(const MatchedPair& mp) {
  return {PolyMatrix(mp.q->rank(), mp.r->rank())};
}

void Morphism::validate() const {
  if (!source || !target) throw PreconditionError("morphism without source or target");
  if (source->kind() != target->kind()) throw KindError("morphism between algebras of different kinds");
  if (matrix.rows() != source->rank() || matrix.cols() != target->rank()) {
    throw DimensionError("morphism matrix does not match source and target ranks");
  }
}

Element apply_map(const DeformationMap& phi, const Element& x) { return apply_map(phi.matrix, x); }

Element apply_map(const Morphism& h, const Element& x) { return apply_map(h.matrix, x); }

namespace {

void require_shape(const MatchedPair& mp, const PolyMatrix& phi) {
  if (phi.rows() != mp.q->rank() || phi.cols() != mp.r->rank()) {
    throw DimensionError("deformation map must be an n_Q x n_R matrix");
  }
}

}  // namespace

std::vector<PairResidual> deformation_residuals(const MatchedPair& mp, const PolyMatrix& phi) {
  using namespace spectral;
  mp.validate();
  require_shape(mp, phi);
  const ConformalAlgebra& r = *mp.r;
  const ConformalAlgebra& q = *mp.q;
  const auto lam = lambda();
  const auto flip = minus_lambda_minus_d();
  const bool lie = mp.kind == AlgebraKind::Lie;

  std::vector<PairResidual> out;
  for (std::size_t i = 0; i < q.rank(); ++i) {
    const Element x = q.basis(i);
    const Element px = apply_map(phi, x);
    for (std::size_t j = 0; j < q.rank(); ++j) {
      const Element y = q.basis(j);
      const Element py = apply_map(phi, y);
      Element lhs = apply_map(phi, product_eval(q, x, y, lam)) - product_eval(r, px, py, lam);
      Element rhs(r.rank());
      if (lie) {
        rhs = apply_map(phi, action_eval(mp.lhd, y, px, flip)) -
              apply_map(phi, action_eval(mp.lhd, x, py, lam)) + action_eval(mp.rhd, x, py, lam) -
              action_eval(mp.rhd, y, px, flip);
      } else {
        rhs = action_eval(*mp.lharp, px, y, lam) + action_eval(mp.rhd, x, py, lam) -
              apply_map(phi, action_eval(*mp.rharp, px, y, lam)) -
              apply_map(phi, action_eval(mp.lhd, x, py, lam));
      }
      out.push_back({i, j, lhs - rhs});
    }
  }
  return out;
}

CheckReport check_deformation_map(const MatchedPair& mp, const DeformationMap& phi) {
  CheckReport report;
  for (auto& pr : deformation_residuals(mp, phi.matrix)) {
    report.require("deformation-map", {pr.left, pr.right}, std::move(pr.residual));
  }
  return report;
}

ConformalAlgebra deformed_algebra(const MatchedPair& mp, const DeformationMap& phi) {
  using namespace spectral;
  mp.validate();
  require_shape(mp, phi.matrix);
  const ConformalAlgebra& q = *mp.q;
  const auto lam = lambda();
  StructureTable table(q.rank(), q.rank(), q.rank());
  for (std::size_t i = 0; i < q.rank(); ++i) {
    const Element x = q.basis(i);
    const Element px = apply_map(phi, x);
    for (std::size_t j = 0; j < q.rank(); ++j) {
      const Element y = q.basis(j);
      const Element py = apply_map(phi, y);
      Element entry = q.product(i, j) + action_eval(mp.lhd, x, py, lam);
      if (mp.kind == AlgebraKind::Lie) {
        entry -= action_eval(mp.lhd, y, px, minus_lambda_minus_d());
      } else {
        entry += action_eval(*mp.rharp, px, y, lam);
      }
      table.set(i, j, std::move(entry));
    }
  }
  return {mp.kind, q.basis_names(), std::move(table)};
}

CheckReport graph_embedding_check(const MatchedPair& mp, const DeformationMap& phi) {
  const auto e = std::make_shared<const ConformalAlgebra>(build_bicrossed(mp));
  const auto q_phi = std::make_shared<const ConformalAlgebra>(deformed_algebra(mp, phi));
  const std::size_t nr = mp.r->rank();
  const std::size_t nq = mp.q->rank();

  // g(x) = phi(x) (+) x
  PolyMatrix graph(nq, nr + nq);
  for (std::size_t j = 0; j < nq; ++j) {
    for (std::size_t i = 0; i < nr; ++i) graph.at(j, i) = phi.matrix.at(j, i);
    graph.at(j, nr + j) = MultiPoly(1);
  }

  CheckReport report;
  const auto lam = spectral::lambda();
  for (std::size_t a = 0; a < nq; ++a) {
    for (std::size_t b = 0; b < nq; ++b) {
      const Element w = product_eval(*e, graph.row(a), graph.row(b), lam);
      // w lies in the graph iff its R part equals phi of its Q part.
      Element r_part(nr);
      Element q_part(nq);
      for (std::size_t k = 0; k < nr; ++k) r_part[k] = w[k];
      for (std::size_t k = 0; k < nq; ++k) q_part[k] = w[nr + k];
      report.require("graph-closure", {a, b}, r_part - apply_map(phi, q_part));
    }
  }
  report.merge(check_morphism(Morphism{q_phi, e, graph}), "graph-morphism: ");
  return report;
}

CheckReport check_morphism(const Morphism& h) {
  h.validate();
  const ConformalAlgebra& src = *h.source;
  const ConformalAlgebra& tgt = *h.target;
  const auto lam = spectral::lambda();
  CheckReport report;
  for (std::size_t i = 0; i < src.rank(); ++i) {
    const Element hi = h.matrix.row(i);
    for (std::size_t j = 0; j < src.rank(); ++j) {
      report.require("morphism", {i, j},
                     apply_map(h, src.product(i, j)) - product_eval(tgt, hi, h.matrix.row(j), lam));
    }
  }
  return report;
}

bool is_unimodular(const PolyMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const MultiPoly det = determinant(m);
  return det.is_constant() && !det.is_zero();
}

bool is_isomorphism(const Morphism& h) {
  h.validate();
  if (h.matrix.rows() != h.matrix.cols()) return false;
  return check_morphism(h).pass() && is_unimodular(h.matrix);
}

std::vector<PairResidual> equivalence_residuals(const MatchedPair& mp, const PolyMatrix& phi,
                                                const PolyMatrix& psi, const PolyMatrix& alpha) {
  using namespace spectral;
  mp.validate();
  require_shape(mp, phi);
  require_shape(mp, psi);
  const ConformalAlgebra& q = *mp.q;
  if (alpha.rows() != q.rank() || alpha.cols() != q.rank()) {
    throw DimensionError("alpha must be an n_Q x n_Q matrix");
  }
  const auto lam = lambda();
  const auto flip = minus_lambda_minus_d();

  std::vector<PairResidual> out;
  for (std::size_t i = 0; i < q.rank(); ++i) {
    const Element x = q.basis(i);
    const Element ax = alpha.row(i);
    for (std::size_t j = 0; j < q.rank(); ++j) {
      const Element y = q.basis(j);
      const Element ay = alpha.row(j);
      Element lhs = apply_map(alpha, product_eval(q, x, y, lam)) - product_eval(q, ax, ay, lam);
      Element rhs = action_eval(mp.lhd, ax, apply_map(psi, ay), lam) -
                    apply_map(alpha, action_eval(mp.lhd, x, apply_map(phi, y), lam));
      if (mp.kind == AlgebraKind::Lie) {
        rhs -= action_eval(mp.lhd, ay, apply_map(psi, ax), flip);
        rhs += apply_map(alpha, action_eval(mp.lhd, y, apply_map(phi, x), flip));
      } else {
        rhs += action_eval(*mp.rharp, apply_map(psi, ax), ay, lam);
        rhs -= apply_map(alpha, action_eval(*mp.rharp, apply_map(phi, x), y, lam));
      }
      out.push_back({i, j, lhs - rhs});
    }
  }
  return out;
}

CheckReport check_equivalence(const MatchedPair& mp, const DeformationMap& phi,
                              const DeformationMap& psi, const PolyMatrix& alpha) {
  if (!alpha.is_univariate_in_d() || !is_unimodular(alpha)) {
    throw PreconditionError("alpha is not a module automorphism of Q");
  }
  CheckReport report;
  for (auto& pr : equivalence_residuals(mp, phi.matrix, psi.matrix, alpha)) {
    report.require("equivalence", {pr.left, pr.right}, std::move(pr.residual));
  }
  return report;
}

}  // namespace cfk

#pragma once

// Deformation maps of matched pairs, the deformed complements they induce,
// algebra morphisms and the equivalence of deformation maps.

#include "cfk/actions.hpp"
#include "cfk/matrix.hpp"

namespace cfk {

/// Module map Q -> R, row j = image of the j-th generator of Q.
struct DeformationMap {
  PolyMatrix matrix;

  static DeformationMap zero(const MatchedPair& mp);
  friend bool operator==(const DeformationMap&, const DeformationMap&) = default;
};

/// Module map between algebras of the same kind, row i = image of e_i.
struct Morphism {
  AlgebraRef source;
  AlgebraRef target;
  PolyMatrix matrix;

  void validate() const;
};

Element apply_map(const DeformationMap& phi, const Element& x);
Element apply_map(const Morphism& h, const Element& x);

struct PairResidual {
  std::size_t left;
  std::size_t right;
  Element residual;
};

/// Residual "left side minus right side" of the deformation-map identity for
/// every ordered pair of Q generators. Entries of `phi` may carry unknowns;
/// they are treated as scalars.
std::vector<PairResidual> deformation_residuals(const MatchedPair& mp, const PolyMatrix& phi);

CheckReport check_deformation_map(const MatchedPair& mp, const DeformationMap& phi);

/// Q with the product twisted by phi. Computed whether or not phi passes
/// check_deformation_map.
ConformalAlgebra deformed_algebra(const MatchedPair& mp, const DeformationMap& phi);

/// The graph {phi(x) (+) x} is closed in the bicrossed product and
/// x -> phi(x) (+) x is a morphism from the deformed algebra into it.
CheckReport graph_embedding_check(const MatchedPair& mp, const DeformationMap& phi);

CheckReport check_morphism(const Morphism& h);

/// Morphism whose matrix has a nonzero constant determinant.
bool is_isomorphism(const Morphism& h);

/// True iff det(m) is a nonzero rational constant.
bool is_unimodular(const PolyMatrix& m);

/// Residuals of the equivalence identity for phi, psi related by alpha
/// (alpha: Q -> Q; entries may carry unknowns).
std::vector<PairResidual> equivalence_residuals(const MatchedPair& mp, const PolyMatrix& phi,
                                                const PolyMatrix& psi, const PolyMatrix& alpha);

/// Throws PreconditionError when alpha is not a module automorphism of Q.
CheckReport check_equivalence(const MatchedPair& mp, const DeformationMap& phi,
                              const DeformationMap& psi, const PolyMatrix& alpha);

}  // namespace cfk

#pragma once

// Modules over conformal algebras, matched pairs and bicrossed products.

#include "cfk/algebra.hpp"

#include <memory>
#include <optional>

namespace cfk {

enum class ActionSide { Left, Right };

using AlgebraRef = std::shared_ptr<const ConformalAlgebra>;

/// A left action acting x carrier -> carrier, or a right action
/// carrier x acting -> carrier, given on bases by a table in {d, l}.
class ModuleAction {
 public:
  ModuleAction(ActionSide side, AlgebraRef acting, std::size_t carrier_rank, StructureTable table);

  static ModuleAction trivial(ActionSide side, AlgebraRef acting, std::size_t carrier_rank);

  ActionSide side() const { return side_; }
  const ConformalAlgebra& acting() const { return *acting_; }
  const AlgebraRef& acting_ref() const { return acting_; }
  AlgebraKind kind() const { return acting_->kind(); }
  std::size_t carrier_rank() const { return carrier_rank_; }
  const StructureTable& table() const { return table_; }
  bool is_trivial() const { return table_.is_zero(); }

  Element acting_basis(std::size_t i) const { return acting_->basis(i); }
  Element carrier_basis(std::size_t i) const { return Element::basis(carrier_rank_, i); }

  friend bool operator==(const ModuleAction& a, const ModuleAction& b) {
    return a.side_ == b.side_ && *a.acting_ == *b.acting_ && a.carrier_rank_ == b.carrier_rank_ &&
           a.table_ == b.table_;
  }

 private:
  ActionSide side_;
  AlgebraRef acting_;
  std::size_t carrier_rank_;
  StructureTable table_;
};

/// Operands in written order: (acting, carrier) for a left action,
/// (carrier, acting) for a right action.
Element action_eval(const ModuleAction& act, const Element& lhs, const Element& rhs,
                    const MultiPoly& s);

CheckReport check_module(const ModuleAction& act);
/// Associative bimodule compatibility (a ~>_l v) <|_{l+m} b = a ~>_l (v <|_m b).
CheckReport check_bimodule(const ModuleAction& left, const ModuleAction& right);

/// Lie right module to left module via a_l v := -v_{-l-d} a.
ModuleAction right_to_left(const ModuleAction& act);
/// Inverse of right_to_left.
ModuleAction left_to_right(const ModuleAction& act);

/// (R, Q) with cross actions. Field names follow the carriers:
///   lhd   (<|) right action of R on Q:   Q x R -> Q
///   rhd   (|>) left action of Q on R:    Q x R -> R
///   lharp (<~) right action of Q on R:   R x Q -> R   (associative only)
///   rharp (~>) left action of R on Q:    R x Q -> Q   (associative only)
struct MatchedPair {
  AlgebraKind kind;
  AlgebraRef r;
  AlgebraRef q;
  ModuleAction lhd;
  ModuleAction rhd;
  std::optional<ModuleAction> lharp;
  std::optional<ModuleAction> rharp;

  /// Validates kinds, sides and dimensions; throws on mismatch.
  void validate() const;

  /// All actions zero.
  static MatchedPair trivial(AlgebraRef r, AlgebraRef q);
};

/// R (+) Q with the bicrossed product; basis ordered R first, then Q.
ConformalAlgebra build_bicrossed(const MatchedPair& mp);

/// Normative test: components satisfy their axioms, every action is a module
/// (and a bimodule, associative case), and the bicrossed product satisfies
/// the axioms.
CheckReport check_matched_pair(const MatchedPair& mp);

/// The definition of a Lie matched pair read literally: components satisfy
/// their axioms, both actions are modules, and the two compatibility
/// conditions hold when evaluated directly, innermost spectral substitution
/// first.
CheckReport check_b1_b2_direct(const MatchedPair& mp);

}  // namespace cfk

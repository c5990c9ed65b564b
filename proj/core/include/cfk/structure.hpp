#pragma once

// Submodules of free Q[d]-modules in Hermite normal form, and the derived
// series of a conformal algebra.

#include "cfk/matrix.hpp"

#include <optional>

namespace cfk {

/// Row-style Hermite normal form over Q[d]: nonzero rows only, pivot columns
/// strictly increasing, pivots monic, entries above each pivot reduced
/// modulo the pivot. Rows of the result generate the same submodule.
PolyMatrix hermite_normal_form(const PolyMatrix& m);

class Submodule {
 public:
  /// Zero submodule.
  explicit Submodule(std::size_t ambient_rank);

  static Submodule full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  /// Canonical generators (HNF rows).
  const PolyMatrix& generators() const { return hnf_; }
  std::vector<Element> generator_elements() const;
  bool is_zero() const { return hnf_.rows() == 0; }

  friend bool operator==(const Submodule& a, const Submodule& b) = default;

 private:
  friend Submodule span(std::size_t, const std::vector<Element>&);
  Submodule(std::size_t ambient_rank, PolyMatrix hnf);
  std::size_t ambient_rank_;
  PolyMatrix hnf_;
};

/// Throws PreconditionError if a coordinate involves anything besides d.
Submodule span(std::size_t ambient_rank, const std::vector<Element>& vectors);

bool member(const Submodule& s, const Element& v);
bool submodule_equals(const Submodule& s, const Submodule& t);
/// s is contained in t.
bool contains(const Submodule& t, const Submodule& s);

/// Span of all l-coefficients of g_l h over generator pairs of s.
Submodule derived_subalgebra(const ConformalAlgebra& a, const Submodule& s);

struct Solvability {
  enum class Verdict { Solvable, NotSolvable, Unknown };
  Verdict verdict;
  /// Length of the derived series when solvable, steps taken otherwise.
  std::size_t depth;
  /// D^0, D^1, ... as computed.
  std::vector<Submodule> series;
};

std::string to_string(Solvability::Verdict v);

Solvability is_solvable(const ConformalAlgebra& a, std::size_t max_depth = 10);

bool is_abelian(const ConformalAlgebra& a);

}  // namespace cfk

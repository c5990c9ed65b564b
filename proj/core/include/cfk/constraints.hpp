#pragma once

// Polynomial systems over the unknown coefficients of a degree-bounded
// ansatz, plus exact elimination and rational grid search.

#include "cfk/deform.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cfk {

/// Degree bounds for the entries of a symbolic map. Entry (row, col) with
/// bound k contributes unknowns for the coefficients of d^0 .. d^k; entries
/// without a bound are identically zero. Unknowns are numbered row-major,
/// then by power of d.
class AnsatzSpec {
 public:
  AnsatzSpec(std::size_t rows, std::size_t cols);

  /// Every entry bounded by `degree`.
  static AnsatzSpec uniform(std::size_t rows, std::size_t cols, unsigned degree);
  /// Only diagonal entries, bounded by `degree`.
  static AnsatzSpec diagonal(std::size_t n, unsigned degree);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  void set(std::size_t row, std::size_t col, std::optional<unsigned> degree);
  std::optional<unsigned> bound(std::size_t row, std::size_t col) const;

  std::size_t unknown_count() const;
  /// Matrix whose entries are sum_k U(first + k) d^k.
  PolyMatrix symbolic(std::uint32_t first_unknown = 0) const;
  /// Coefficients of a concrete map; nullopt if it lies outside the ansatz.
  std::optional<std::map<VarId, Rational>> coefficients_of(const PolyMatrix& m,
                                                           std::uint32_t first_unknown = 0) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::optional<unsigned>> bounds_;
};

using Assignment = std::map<VarId, Rational>;

/// Where an equation came from: the ordered pair of generators, the output
/// coordinate and the (d, l) monomial whose coefficient it is.
struct Provenance {
  std::size_t left;
  std::size_t right;
  std::size_t output;
  Monomial monomial;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ConstraintSystem {
  std::vector<VarId> unknowns;
  /// Human-readable meaning of each unknown, parallel to `unknowns`.
  std::vector<std::string> labels;
  /// Monic polynomials in the unknowns only; each one is "= 0".
  std::vector<MultiPoly> equations;
  std::vector<Provenance> provenance;

  bool empty() const { return equations.empty(); }
  friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;
};

std::string to_json(const ConstraintSystem& sys, int indent = 2);
/// Throws ParseError on malformed documents.
ConstraintSystem constraint_system_from_json(std::string_view text);

/// Scales p so that its graded-lex leading coefficient is 1.
MultiPoly make_monic(const MultiPoly& p);

/// Collects every (d, l)-coefficient of every residual coordinate into one
/// monic equation, dropping duplicates (first provenance wins).
ConstraintSystem collect_constraints(const std::vector<PairResidual>& residuals,
                                     std::vector<VarId> unknowns, std::vector<std::string> labels);

ConstraintSystem compile_deformation_constraints(const MatchedPair& mp, const AnsatzSpec& ansatz);

/// Throws PreconditionError when an unknown of the system is unassigned.
bool verify_assignment(const ConstraintSystem& sys, const Assignment& a);

/// Exact value of p at a total assignment of its unknowns.
Rational evaluate(const MultiPoly& p, const Assignment& a);

struct Substitution {
  VarId variable;
  /// Expression in the unknowns still present when the step was taken.
  MultiPoly value;
  /// Index of the equation (in the system at that step) that was solved.
  std::size_t equation;
};

struct Elimination {
  ConstraintSystem residual;
  /// Unknowns solved to constants.
  Assignment partial;
  std::vector<Substitution> steps;
  bool consistent = true;
  /// Set when an equation reduced to a nonzero constant.
  std::optional<MultiPoly> contradiction;
};

/// Repeatedly solves equations of the form c*u + r = 0 with c a nonzero
/// constant and r free of u, preferring equations in a single unknown.
Elimination linear_eliminate(const ConstraintSystem& sys);

/// Extends a solution of the residual system through the recorded steps.
Assignment back_substitute(const Elimination& elim, const Assignment& residual_solution);

struct GridSpec {
  long max_numerator = 2;
  long max_denominator = 2;
};

/// Distinct rationals n/d with |n| <= N and 1 <= d <= Dmax, ascending.
std::vector<Rational> grid_values(const GridSpec& grid);

/// All grid points satisfying every equation, in lexicographic order of the
/// unknown list. Throws CapExceeded when the system has more than
/// `unknown_cap` unknowns.
std::vector<Assignment> grid_search(const ConstraintSystem& sys, const GridSpec& grid,
                                    std::size_t unknown_cap = 6);

struct SolveResult {
  Elimination elimination;
  /// Solutions of the original system.
  std::vector<Assignment> solutions;
};

SolveResult solve(const ConstraintSystem& sys, const GridSpec& grid, std::size_t unknown_cap = 6);

/// Equations on the coefficients of alpha making it a morphism between the
/// two deformed complements.
ConstraintSystem compile_equivalence_constraints(const MatchedPair& mp, const DeformationMap& phi,
                                                 const DeformationMap& psi,
                                                 const AnsatzSpec& alpha_ansatz);

struct EquivalenceSearch {
  ConstraintSystem system;
  SolveResult solve;
  /// Grid solutions whose alpha is invertible and passes check_equivalence.
  std::vector<PolyMatrix> witnesses;
  /// Grid solutions rejected because alpha is not invertible.
  std::size_t singular_candidates = 0;
};

EquivalenceSearch find_equivalence_witnesses(const MatchedPair& mp, const DeformationMap& phi,
                                             const DeformationMap& psi,
                                             const AnsatzSpec& alpha_ansatz, const GridSpec& grid,
                                             std::size_t unknown_cap = 6);

/// Concrete matrix obtained by substituting an assignment into a symbolic one.
PolyMatrix instantiate(const PolyMatrix& symbolic, const Assignment& a);

}  // namespace cfk

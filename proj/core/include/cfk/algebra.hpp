#pragma once

// Finite conformal algebras: free modules of rank n over Q[d] with a
// lambda-product given on the basis, extended to all elements by
// sesquilinearity.

#include "cfk/poly.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace cfk {

enum class AlgebraKind { Lie, Associative };

std::string to_string(AlgebraKind kind);

/// Element of a free module: coordinates are polynomials in d and the
/// spectral parameters l, m (and unknowns, during constraint compilation).
class Element {
 public:
  Element() = default;
  explicit Element(std::size_t rank) : coords_(rank) {}
  explicit Element(std::vector<MultiPoly> coords) : coords_(std::move(coords)) {}

  static Element basis(std::size_t rank, std::size_t i, const MultiPoly& coeff = MultiPoly(1));

  std::size_t rank() const { return coords_.size(); }
  const MultiPoly& operator[](std::size_t i) const { return coords_[i]; }
  MultiPoly& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<MultiPoly>& coords() const { return coords_; }

  bool is_zero() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element operator-() const;
  /// Multiplies every coordinate by p.
  Element times(const MultiPoly& p) const;
  /// Applies a substitution coordinate-wise.
  Element substituted(VarId v, const MultiPoly& r) const;

  friend bool operator==(const Element& a, const Element& b) { return a.coords_ == b.coords_; }

  std::vector<std::string> to_strings() const;

 private:
  std::vector<MultiPoly> coords_;
};

/// A bilinear table of structure polynomials in {d, l}: entry (i, j) is the
/// vector of coefficients of (left_i . right_j) in an output basis.
class StructureTable {
 public:
  StructureTable() = default;
  StructureTable(std::size_t left_rank, std::size_t right_rank, std::size_t out_rank);

  std::size_t left_rank() const { return left_; }
  std::size_t right_rank() const { return right_; }
  std::size_t out_rank() const { return out_; }

  const Element& at(std::size_t i, std::size_t j) const { return entries_[i * right_ + j]; }
  void set(std::size_t i, std::size_t j, Element value);

  bool is_zero() const;
  /// True iff every entry involves only d and l.
  bool is_in_d_l() const;

  friend bool operator==(const StructureTable& a, const StructureTable& b) = default;

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::size_t out_ = 0;
  std::vector<Element> entries_;
};

/// Evaluates x_s y for x, y arbitrary elements, where s is affine in
/// {d, l, m}:
///   result_k = sum_{i,j} x_i[d -> -s] * y_j[d -> d + s] * t_ij^k[l -> s].
/// Nested expressions are evaluated innermost first: the d left in an inner
/// result is rewritten by the outer sesquilinearity.
Element sesquilinear_eval(const StructureTable& table, const Element& x, const Element& y,
                          const MultiPoly& s);

/// Spectral arguments that appear in the axioms.
namespace spectral {
MultiPoly lambda();                 // l
MultiPoly mu();                     // m
MultiPoly lambda_plus_mu();         // l + m
MultiPoly minus_lambda_minus_d();   // -l - d
MultiPoly minus_mu_minus_d();       // -m - d
}  // namespace spectral

class ConformalAlgebra {
 public:
  ConformalAlgebra(AlgebraKind kind, std::vector<std::string> basis_names, StructureTable table);

  /// All products zero.
  static ConformalAlgebra abelian(AlgebraKind kind, std::vector<std::string> basis_names);

  AlgebraKind kind() const { return kind_; }
  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const StructureTable& table() const { return table_; }
  /// Coefficient vector of e_i _l e_j.
  const Element& product(std::size_t i, std::size_t j) const { return table_.at(i, j); }
  Element basis(std::size_t i) const { return Element::basis(rank(), i); }

  friend bool operator==(const ConformalAlgebra& a, const ConformalAlgebra& b) = default;

 private:
  AlgebraKind kind_;
  std::vector<std::string> names_;
  StructureTable table_;
};

struct Violation {
  std::string identity;
  std::vector<std::size_t> indices;
  Element residual;
};

struct CheckReport {
  std::vector<Violation> violations;
  /// Free-form diagnostics that do not by themselves fail the check.
  std::vector<std::string> notes;

  bool pass() const { return violations.empty(); }
  void merge(const CheckReport& other, const std::string& prefix = {});
  void require(std::string identity, std::vector<std::size_t> indices, Element residual);
};

/// x _s y in A.
Element product_eval(const ConformalAlgebra& a, const Element& x, const Element& y,
                     const MultiPoly& s);

/// [a_l b] + [b_{-l-d} a] = 0 on basis pairs.
CheckReport check_skew_symmetry(const ConformalAlgebra& a);
/// [a_l [b_m c]] - [[a_l b]_{l+m} c] - [b_m [a_l c]] = 0 on basis triples.
CheckReport check_jacobi(const ConformalAlgebra& a);
/// (a_l b)_{l+m} c - a_l (b_m c) = 0 on basis triples.
CheckReport check_associativity(const ConformalAlgebra& a);
/// Skew-symmetry and Jacobi for Lie algebras, associativity otherwise.
CheckReport check_axioms(const ConformalAlgebra& a);

}  // namespace cfk

#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Variables are D (the derivation), L1 and L2 (spectral parameters) and an
// open-ended family of unknowns U(0), U(1), ... used by the constraint
// compiler. Terms are kept in graded-lexicographic order with
// D < L1 < L2 < U(0) < U(1) < ... as variable order, leading term first.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfk {

using Rational = mpq_class;

/// Parses "n" or "n/d" (optional leading '-') into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class VarId {
 public:
  static constexpr VarId D() { return VarId{0}; }
  static constexpr VarId L1() { return VarId{1}; }
  static constexpr VarId L2() { return VarId{2}; }
  static constexpr VarId U(std::uint32_t k) { return VarId{3 + k}; }
  static constexpr VarId from_index(std::uint32_t index) { return VarId{index}; }

  constexpr std::uint32_t index() const { return index_; }
  constexpr bool is_unknown() const { return index_ >= 3; }
  constexpr std::uint32_t unknown_index() const { return index_ - 3; }

  /// Normative rendering: d, l, m, u0, u1, ...
  std::string name() const;

  constexpr auto operator<=>(const VarId&) const = default;

 private:
  constexpr explicit VarId(std::uint32_t index) : index_(index) {}
  std::uint32_t index_;
};

/// Exponent vector indexed by VarId::index(); trailing zeros are trimmed.
using Monomial = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Monomial& m);

/// Strict "greater than" in graded-lexicographic order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c);             // NOLINT(google-explicit-constructor)

  static MultiPoly var(VarId v);
  static MultiPoly monomial(Monomial m, const Rational& c);

  /// Parses the normative text form (see to_string); throws ParseError.
  static MultiPoly parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the empty monomial.
  Rational constant_term() const;
  /// Coefficient of the graded-lex leading term; zero for the zero polynomial.
  Rational leading_coefficient() const;

  std::uint32_t degree(VarId v) const;
  std::uint32_t total_degree() const;
  bool involves(VarId v) const;
  /// True iff every variable occurring is in `allowed`.
  bool only_involves(std::initializer_list<VarId> allowed) const;
  bool has_unknowns() const;
  /// One past the largest variable index occurring (0 for constants).
  std::uint32_t variable_bound() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& q);
  MultiPoly& operator-=(const MultiPoly& q);
  MultiPoly& operator*=(const MultiPoly& q);
  MultiPoly scaled(const Rational& c) const;

  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
  friend bool operator==(const MultiPoly& p, const MultiPoly& q) { return p.terms_ == q.terms_; }

  /// Normative text: `d^2 + 4*d*l - 1/2*u0`, `0` for zero.
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

enum class ArithOp { Add, Sub, Mul };

MultiPoly arith(const MultiPoly& p, const MultiPoly& q, ArithOp op);
MultiPoly pow(const MultiPoly& p, std::uint32_t e);

/// Ring-homomorphic replacement of every occurrence of v by r.
MultiPoly substitute(const MultiPoly& p, VarId v, const MultiPoly& r);

/// p = sum_k coeff[k] * v^k with every coeff[k] free of v.
/// The zero polynomial yields a single zero coefficient.
std::vector<MultiPoly> coefficient_list(const MultiPoly& p, VarId v);

MultiPoly eval_at(const MultiPoly& p, VarId v, const Rational& c);

/// Groups the terms of p by their exponents on `vars`; each value is free of
/// `vars`. Keys are exponent tuples ordered like `vars`, iterated in
/// graded-lex descending order.
std::vector<std::pair<Monomial, MultiPoly>> collect_by(const MultiPoly& p,
                                                       const std::vector<VarId>& vars);

/// Euclidean division of polynomials univariate in v: a = q*b + r with
/// deg_v(r) < deg_v(b). Throws PreconditionError when either argument has
/// other variables or b is zero.
std::pair<MultiPoly, MultiPoly> divide_univariate(const MultiPoly& a, const MultiPoly& b,
                                                  VarId v);

}  // namespace cfk

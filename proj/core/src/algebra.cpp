#include "cfk/algebra.hpp"

#include "cfk/error.hpp"

#include <algorithm>

namespace cfk {

std::string to_string(AlgebraKind kind) {
  return kind == AlgebraKind::Lie ? "lie" : "assoc";
}

Element Element::basis(std::size_t rank, std::size_t i, const MultiPoly& coeff) {
  Element e(rank);
  e.coords_.at(i) = coeff;
  return e;
}

bool Element::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const MultiPoly& p) { return p.is_zero(); });
}

Element& Element::operator+=(const Element& other) {
  if (other.rank() != rank()) throw DimensionError("element ranks differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  if (other.rank() != rank()) throw DimensionError("element ranks differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Element Element::times(const MultiPoly& p) const {
  Element r = *this;
  for (auto& c : r.coords_) c *= p;
  return r;
}

Element Element::substituted(VarId v, const MultiPoly& r) const {
  Element out = *this;
  for (auto& c : out.coords_) c = substitute(c, v, r);
  return out;
}

std::vector<std::string> Element::to_strings() const {
  std::vector<std::string> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.to_string());
  return out;
}

StructureTable::StructureTable(std::size_t left_rank, std::size_t right_rank,
                               std::size_t out_rank)
    : left_(left_rank),
      right_(right_rank),
      out_(out_rank),
      entries_(left_rank * right_rank, Element(out_rank)) {}

void StructureTable::set(std::size_t i, std::size_t j, Element value) {
  if (i >= left_ || j >= right_) throw DimensionError("table index out of range");
  if (value.rank() != out_) throw DimensionError("table entry has wrong length");
  entries_[i * right_ + j] = std::move(value);
}

bool StructureTable::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Element& e) { return e.is_zero(); });
}

bool StructureTable::is_in_d_l() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Element& e) {
    return std::all_of(e.coords().begin(), e.coords().end(), [](const MultiPoly& p) {
      return p.only_involves({VarId::D(), VarId::L1()});
    });
  });
}

namespace {

void require_affine(const MultiPoly& s) {
  if (s.total_degree() > 1 || !s.only_involves({VarId::D(), VarId::L1(), VarId::L2()})) {
    throw PreconditionError("spectral argument must be affine in d, l, m: " + s.to_string());
  }
}

}  // namespace

Element sesquilinear_eval(const StructureTable& table, const Element& x, const Element& y,
                          const MultiPoly& s) {
  if (x.rank() != table.left_rank() || y.rank() != table.right_rank()) {
    throw DimensionError("operand rank does not match the structure table");
  }
  require_affine(s);
  const MultiPoly d = MultiPoly::var(VarId::D());
  const MultiPoly left_shift = -s;
  const MultiPoly right_shift = d + s;

  std::vector<MultiPoly> xs(x.rank());
  std::vector<MultiPoly> ys(y.rank());
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (!x[i].is_zero()) xs[i] = substitute(x[i], VarId::D(), left_shift);
  }
  for (std::size_t j = 0; j < y.rank(); ++j) {
    if (!y[j].is_zero()) ys[j] = substitute(y[j], VarId::D(), right_shift);
  }

  Element result(table.out_rank());
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (xs[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.rank(); ++j) {
      if (ys[j].is_zero()) continue;
      const Element& entry = table.at(i, j);
      if (entry.is_zero()) continue;
      const MultiPoly weight = xs[i] * ys[j];
      for (std::size_t k = 0; k < table.out_rank(); ++k) {
        if (entry[k].is_zero()) continue;
        result[k] += weight * substitute(entry[k], VarId::L1(), s);
      }
    }
  }
  return result;
}

namespace spectral {
MultiPoly lambda() { return MultiPoly::var(VarId::L1()); }
MultiPoly mu() { return MultiPoly::var(VarId::L2()); }
MultiPoly lambda_plus_mu() { return lambda() + mu(); }
MultiPoly minus_lambda_minus_d() { return -lambda() - MultiPoly::var(VarId::D()); }
MultiPoly minus_mu_minus_d() { return -mu() - MultiPoly::var(VarId::D()); }
}  // namespace spectral

ConformalAlgebra::ConformalAlgebra(AlgebraKind kind, std::vector<std::string> basis_names,
                                   StructureTable table)
    : kind_(kind), names_(std::move(basis_names)), table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (table_.left_rank() != n || table_.right_rank() != n || table_.out_rank() != n) {
    throw DimensionError("structure table does not match the number of generators");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (names_[i] == names_[j]) throw PreconditionError("duplicate generator " + names_[i]);
    }
  }
  if (!table_.is_in_d_l()) {
    throw PreconditionError("structure polynomials may only involve d and l");
  }
}

ConformalAlgebra ConformalAlgebra::abelian(AlgebraKind kind, std::vector<std::string> basis_names) {
  const std::size_t n = basis_names.size();
  return {kind, std::move(basis_names), StructureTable(n, n, n)};
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const auto& v : other.violations) {
    violations.push_back(v);
    if (!prefix.empty()) violations.back().identity = prefix + v.identity;
  }
  for (const auto& n : other.notes) notes.push_back(prefix.empty() ? n : prefix + n);
}

void CheckReport::require(std::string identity, std::vector<std::size_t> indices,
                          Element residual) {
  if (!residual.is_zero()) {
    violations.push_back({std::move(identity), std::move(indices), std::move(residual)});
  }
}

Element product_eval(const ConformalAlgebra& a, const Element& x, const Element& y,
                     const MultiPoly& s) {
  return sesquilinear_eval(a.table(), x, y, s);
}

namespace {

void require_kind(const ConformalAlgebra& a, AlgebraKind kind, const char* what) {
  if (a.kind() != kind) {
    throw KindError(std::string(what) + " requires a " + to_string(kind) + " algebra");
  }
}

}  // namespace

CheckReport check_skew_symmetry(const ConformalAlgebra& a) {
  require_kind(a, AlgebraKind::Lie, "skew-symmetry");
  CheckReport report;
  const auto lam = spectral::lambda();
  const auto flipped = spectral::minus_lambda_minus_d();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) {
      report.require("skew-symmetry", {i, j},
                     product_eval(a, a.basis(i), a.basis(j), lam) +
                         product_eval(a, a.basis(j), a.basis(i), flipped));
    }
  }
  return report;
}

CheckReport check_jacobi(const ConformalAlgebra& a) {
  require_kind(a, AlgebraKind::Lie, "Jacobi identity");
  CheckReport report;
  const auto lam = spectral::lambda();
  const auto mu = spectral::mu();
  const auto sum = spectral::lambda_plus_mu();
  const std::size_t n = a.rank();
  for (std::size_t i = 0; i < n; ++i) {
    const Element ei = a.basis(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Element ej = a.basis(j);
      const Element ij = product_eval(a, ei, ej, lam);
      for (std::size_t k = 0; k < n; ++k) {
        const Element ek = a.basis(k);
        Element residual = product_eval(a, ei, product_eval(a, ej, ek, mu), lam) -
                           product_eval(a, ij, ek, sum) -
                           product_eval(a, ej, product_eval(a, ei, ek, lam), mu);
        report.require("jacobi", {i, j, k}, std::move(residual));
      }
    }
  }
  return report;
}

CheckReport check_associativity(const ConformalAlgebra& a) {
  require_kind(a, AlgebraKind::Associative, "associativity");
  CheckReport report;
  const auto lam = spectral::lambda();
  const auto mu = spectral::mu();
  const auto sum = spectral::lambda_plus_mu();
  const std::size_t n = a.rank();
  for (std::size_t i = 0; i < n; ++i) {
    const Element ei = a.basis(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Element ij = product_eval(a, ei, a.basis(j), lam);
      for (std::size_t k = 0; k < n; ++k) {
        const Element ek = a.basis(k);
        report.require("associativity", {i, j, k},
                       product_eval(a, ij, ek, sum) -
                           product_eval(a, ei, product_eval(a, a.basis(j), ek, mu), lam));
      }
    }
  }
  return report;
}

CheckReport check_axioms(const ConformalAlgebra& a) {
  if (a.kind() == AlgebraKind::Associative) return check_associativity(a);
  CheckReport report = check_skew_symmetry(a);
  report.merge(check_jacobi(a));
  return report;
}

}  // namespace cfk

#include "cfk/structure.hpp"

#include "cfk/error.hpp"

#include <algorithm>

namespace cfk {

namespace {

using Row = std::vector<MultiPoly>;

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

// target -= factor * source
void subtract_multiple(Row& target, const Row& source, const MultiPoly& factor) {
  if (factor.is_zero()) return;
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (!source[k].is_zero()) target[k] -= factor * source[k];
  }
}

void scale_row(Row& r, const Rational& c) {
  for (auto& p : r) p = p.scaled(c);
}

const VarId kD = VarId::D();

}  // namespace

PolyMatrix hermite_normal_form(const PolyMatrix& m) {
  if (!m.is_univariate_in_d()) throw PreconditionError("HNF expects entries in Q[d]");
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Row r = m.row(i).coords();
    if (!row_is_zero(r)) rows.push_back(std::move(r));
  }
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
    // Euclid on column `col` among rows[next..] until one nonzero entry remains.
    for (;;) {
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t i = next; i < rows.size(); ++i) {
        if (rows[i][col].is_zero()) continue;
        ++nonzero;
        if (!best || rows[i][col].degree(kD) < rows[*best][col].degree(kD)) best = i;
      }
      if (!best) break;
      std::swap(rows[next], rows[*best]);
      if (nonzero == 1) break;
      for (std::size_t i = next + 1; i < rows.size(); ++i) {
        if (rows[i][col].is_zero()) continue;
        const auto [quot, rem] = divide_univariate(rows[i][col], rows[next][col], kD);
        subtract_multiple(rows[i], rows[next], quot);
      }
    }
    if (rows[next][col].is_zero()) continue;
    scale_row(rows[next], 1 / rows[next][col].leading_coefficient());
    for (std::size_t i = 0; i < next; ++i) {
      const auto [quot, rem] = divide_univariate(rows[i][col], rows[next][col], kD);
      subtract_multiple(rows[i], rows[next], quot);
    }
    ++next;
  }
  rows.resize(next);
  PolyMatrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = rows[i][j];
  }
  return out;
}

Submodule::Submodule(std::size_t ambient_rank) : ambient_rank_(ambient_rank), hnf_(0, ambient_rank) {}

Submodule::Submodule(std::size_t ambient_rank, PolyMatrix hnf)
    : ambient_rank_(ambient_rank), hnf_(std::move(hnf)) {}

Submodule Submodule::full(std::size_t ambient_rank) {
  Submodule s(ambient_rank);
  s.hnf_ = PolyMatrix::identity(ambient_rank);
  return s;
}

std::vector<Element> Submodule::generator_elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < hnf_.rows(); ++i) out.push_back(hnf_.row(i));
  return out;
}

Submodule span(std::size_t ambient_rank, const std::vector<Element>& vectors) {
  for (const auto& v : vectors) {
    if (v.rank() != ambient_rank) throw DimensionError("vector rank does not match the ambient rank");
    for (const auto& c : v.coords()) {
      if (!c.only_involves({VarId::D()})) {
        throw PreconditionError("span: coordinate " + c.to_string() + " is not a polynomial in d");
      }
    }
  }
  return Submodule(ambient_rank, hermite_normal_form(PolyMatrix::from_rows(vectors, ambient_rank)));
}

bool member(const Submodule& s, const Element& v) {
  if (v.rank() != s.ambient_rank()) throw DimensionError("vector rank does not match the ambient rank");
  Row rest = v.coords();
  for (const auto& c : rest) {
    if (!c.only_involves({kD})) return false;
  }
  const PolyMatrix& g = s.generators();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::size_t pivot = 0;
    while (g.at(i, pivot).is_zero()) ++pivot;
    for (std::size_t k = 0; k < pivot; ++k) {
      if (!rest[k].is_zero()) return false;
    }
    const auto [quot, rem] = divide_univariate(rest[pivot], g.at(i, pivot), kD);
    if (!rem.is_zero()) return false;
    subtract_multiple(rest, g.row(i).coords(), quot);
  }
  return row_is_zero(rest);
}

bool submodule_equals(const Submodule& s, const Submodule& t) {
  if (s.ambient_rank() != t.ambient_rank()) throw DimensionError("submodules of different ambient ranks");
  return s == t;
}

bool contains(const Submodule& t, const Submodule& s) {
  const auto gens = s.generator_elements();
  return std::all_of(gens.begin(), gens.end(), [&](const Element& g) { return member(t, g); });
}

Submodule derived_subalgebra(const ConformalAlgebra& a, const Submodule& s) {
  if (s.ambient_rank() != a.rank()) throw DimensionError("submodule is not in the algebra's module");
  const auto gens = s.generator_elements();
  const auto lam = spectral::lambda();
  std::vector<Element> products;
  for (const auto& g : gens) {
    for (const auto& h : gens) {
      const Element w = product_eval(a, g, h, lam);
      std::vector<Element> by_power;
      for (std::size_t k = 0; k < w.rank(); ++k) {
        const auto coeffs = coefficient_list(w[k], VarId::L1());
        if (by_power.size() < coeffs.size()) by_power.resize(coeffs.size(), Element(w.rank()));
        for (std::size_t p = 0; p < coeffs.size(); ++p) by_power[p][k] = coeffs[p];
      }
      for (auto& v : by_power) {
        if (!v.is_zero()) products.push_back(std::move(v));
      }
    }
  }
  return span(a.rank(), products);
}

std::string to_string(Solvability::Verdict v) {
  switch (v) {
    case Solvability::Verdict::Solvable:
      return "solvable";
    case Solvability::Verdict::NotSolvable:
      return "not_solvable";
    case Solvability::Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Solvability is_solvable(const ConformalAlgebra& a, std::size_t max_depth) {
  if (a.kind() != AlgebraKind::Lie) throw KindError("solvability is checked for Lie conformal algebras");
  Solvability result{Solvability::Verdict::Unknown, 0, {Submodule::full(a.rank())}};
  for (std::size_t k = 0;; ++k) {
    const Submodule& current = result.series.back();
    if (current.is_zero()) {
      result.verdict = Solvability::Verdict::Solvable;
      result.depth = k;
      return result;
    }
    if (k == max_depth) {
      result.depth = k;
      return result;
    }
    Submodule next = derived_subalgebra(a, current);
    const bool stable = next == current;
    result.series.push_back(std::move(next));
    if (stable) {
      result.verdict = Solvability::Verdict::NotSolvable;
      result.depth = k + 1;
      return result;
    }
  }
}

bool is_abelian(const ConformalAlgebra& a) { return a.table().is_zero(); }

}  // namespace cfk

#include "cfk/constraints.hpp"

#include "cfk/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace cfk {

using nlohmann::ordered_json;

AnsatzSpec::AnsatzSpec(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bounds_(rows * cols) {}

AnsatzSpec AnsatzSpec::uniform(std::size_t rows, std::size_t cols, unsigned degree) {
  AnsatzSpec a(rows, cols);
  std::fill(a.bounds_.begin(), a.bounds_.end(), degree);
  return a;
}

AnsatzSpec AnsatzSpec::diagonal(std::size_t n, unsigned degree) {
  AnsatzSpec a(n, n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, degree);
  return a;
}

void AnsatzSpec::set(std::size_t row, std::size_t col, std::optional<unsigned> degree) {
  if (row >= rows_ || col >= cols_) throw DimensionError("ansatz entry out of range");
  bounds_[row * cols_ + col] = degree;
}

std::optional<unsigned> AnsatzSpec::bound(std::size_t row, std::size_t col) const {
  return bounds_.at(row * cols_ + col);
}

std::size_t AnsatzSpec::unknown_count() const {
  std::size_t n = 0;
  for (const auto& b : bounds_) {
    if (b) n += *b + 1;
  }
  return n;
}

PolyMatrix AnsatzSpec::symbolic(std::uint32_t first_unknown) const {
  PolyMatrix m(rows_, cols_);
  std::uint32_t next = first_unknown;
  const MultiPoly d = MultiPoly::var(VarId::D());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto b = bound(r, c);
      if (!b) continue;
      for (unsigned k = 0; k <= *b; ++k) m.at(r, c) += MultiPoly::var(VarId::U(next++)) * pow(d, k);
    }
  }
  return m;
}

std::optional<Assignment> AnsatzSpec::coefficients_of(const PolyMatrix& m,
                                                      std::uint32_t first_unknown) const {
  if (m.rows() != rows_ || m.cols() != cols_) throw DimensionError("matrix does not match the ansatz");
  Assignment out;
  std::uint32_t next = first_unknown;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const MultiPoly& e = m.at(r, c);
      const auto b = bound(r, c);
      if (!b) {
        if (!e.is_zero()) return std::nullopt;
        continue;
      }
      if (!e.only_involves({VarId::D()}) || (!e.is_zero() && e.degree(VarId::D()) > *b)) {
        return std::nullopt;
      }
      const auto coeffs = coefficient_list(e, VarId::D());
      for (unsigned k = 0; k <= *b; ++k) {
        out[VarId::U(next++)] = k < coeffs.size() ? coeffs[k].constant_term() : Rational(0);
      }
    }
  }
  return out;
}

MultiPoly make_monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_coefficient());
}

namespace {

Monomial pad2(Monomial m) {
  m.resize(2, 0);
  return m;
}

std::vector<std::string> labels_for(const AnsatzSpec& a, const std::string& map_name,
                                    const std::vector<std::string>& row_names,
                                    const std::vector<std::string>& col_names) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const auto b = a.bound(r, c);
      if (!b) continue;
      for (unsigned k = 0; k <= *b; ++k) {
        out.push_back(map_name + "[" + row_names[r] + "," + col_names[c] + "] d^" + std::to_string(k));
      }
    }
  }
  return out;
}

std::vector<VarId> unknown_range(std::size_t n) {
  std::vector<VarId> out;
  for (std::uint32_t k = 0; k < n; ++k) out.push_back(VarId::U(k));
  return out;
}

// Dense lookup table for repeated evaluation.
class ValueTable {
 public:
  explicit ValueTable(std::uint32_t bound) : values_(bound), set_(bound, false) {}
  void assign(VarId v, const Rational& q) {
    if (v.index() >= values_.size()) {
      values_.resize(v.index() + 1);
      set_.resize(v.index() + 1, false);
    }
    values_[v.index()] = q;
    set_[v.index()] = true;
  }
  Rational eval(const MultiPoly& p) const {
    Rational total = 0;
    for (const auto& [m, c] : p.terms()) {
      Rational t = c;
      for (std::size_t idx = 0; idx < m.size(); ++idx) {
        if (m[idx] == 0) continue;
        if (idx < 3) throw PreconditionError("evaluate: polynomial involves d, l or m");
        if (idx >= set_.size() || !set_[idx]) {
          throw PreconditionError("evaluate: unknown " + VarId::from_index(idx).name() + " is not assigned");
        }
        for (std::uint32_t e = 0; e < m[idx]; ++e) t *= values_[idx];
      }
      total += t;
    }
    return total;
  }

 private:
  std::vector<Rational> values_;
  std::vector<bool> set_;
};

ValueTable table_from(const Assignment& a) {
  ValueTable t(0);
  for (const auto& [v, q] : a) t.assign(v, q);
  return t;
}

void append_unique(ConstraintSystem& sys, std::set<std::string>& seen, MultiPoly eq, Provenance prov) {
  eq = make_monic(eq);
  if (eq.is_zero()) return;
  if (!seen.insert(eq.to_string()).second) return;
  sys.equations.push_back(std::move(eq));
  sys.provenance.push_back(std::move(prov));
}

}  // namespace

Rational evaluate(const MultiPoly& p, const Assignment& a) { return table_from(a).eval(p); }

ConstraintSystem collect_constraints(const std::vector<PairResidual>& residuals,
                                     std::vector<VarId> unknowns, std::vector<std::string> labels) {
  ConstraintSystem sys;
  sys.unknowns = std::move(unknowns);
  sys.labels = std::move(labels);
  if (sys.labels.size() != sys.unknowns.size()) throw DimensionError("one label per unknown is required");
  std::set<std::string> seen;
  for (const auto& pr : residuals) {
    for (std::size_t k = 0; k < pr.residual.rank(); ++k) {
      const MultiPoly& coord = pr.residual[k];
      if (coord.involves(VarId::L2())) throw PreconditionError("residual involves m");
      for (auto& [key, coeff] : collect_by(coord, {VarId::D(), VarId::L1()})) {
        append_unique(sys, seen, coeff, {pr.left, pr.right, k, pad2(key)});
      }
    }
  }
  return sys;
}

ConstraintSystem compile_deformation_constraints(const MatchedPair& mp, const AnsatzSpec& ansatz) {
  mp.validate();
  if (ansatz.rows() != mp.q->rank() || ansatz.cols() != mp.r->rank()) {
    throw DimensionError("ansatz must be n_Q x n_R");
  }
  const PolyMatrix phi = ansatz.symbolic();
  return collect_constraints(deformation_residuals(mp, phi), unknown_range(ansatz.unknown_count()),
                             labels_for(ansatz, "phi", mp.q->basis_names(), mp.r->basis_names()));
}

ConstraintSystem compile_equivalence_constraints(const MatchedPair& mp, const DeformationMap& phi,
                                                 const DeformationMap& psi,
                                                 const AnsatzSpec& alpha_ansatz) {
  mp.validate();
  if (alpha_ansatz.rows() != mp.q->rank() || alpha_ansatz.cols() != mp.q->rank()) {
    throw DimensionError("alpha ansatz must be n_Q x n_Q");
  }
  const PolyMatrix alpha = alpha_ansatz.symbolic();
  return collect_constraints(equivalence_residuals(mp, phi.matrix, psi.matrix, alpha),
                             unknown_range(alpha_ansatz.unknown_count()),
                             labels_for(alpha_ansatz, "alpha", mp.q->basis_names(), mp.q->basis_names()));
}

bool verify_assignment(const ConstraintSystem& sys, const Assignment& a) {
  for (const auto& u : sys.unknowns) {
    if (!a.count(u)) throw PreconditionError("assignment misses unknown " + u.name());
  }
  const ValueTable t = table_from(a);
  return std::all_of(sys.equations.begin(), sys.equations.end(),
                     [&](const MultiPoly& eq) { return t.eval(eq) == 0; });
}

namespace {

struct Pivot {
  std::size_t equation;
  VarId variable;
  MultiPoly value;
};

std::vector<VarId> unknowns_of(const MultiPoly& p) {
  std::vector<VarId> out;
  for (std::uint32_t idx = 3; idx < p.variable_bound(); ++idx) {
    if (p.involves(VarId::from_index(idx))) out.push_back(VarId::from_index(idx));
  }
  return out;
}

// u with deg_u(eq) = 1 and a constant coefficient of u.
std::optional<Pivot> solvable_for(const MultiPoly& eq, std::size_t index, VarId u) {
  if (eq.degree(u) != 1) return std::nullopt;
  const auto coeffs = coefficient_list(eq, u);
  if (!coeffs[1].is_constant()) return std::nullopt;
  return Pivot{index, u, coeffs[0].scaled(-1 / coeffs[1].constant_term())};
}

std::optional<Pivot> find_pivot(const ConstraintSystem& sys) {
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto vars = unknowns_of(sys.equations[i]);
    if (vars.size() == 1) {
      if (auto p = solvable_for(sys.equations[i], i, vars[0])) return p;
    }
  }
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto vars = unknowns_of(sys.equations[i]);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      if (auto p = solvable_for(sys.equations[i], i, *it)) return p;
    }
  }
  return std::nullopt;
}

}  // namespace

Elimination linear_eliminate(const ConstraintSystem& sys) {
  Elimination out;
  out.residual = sys;
  auto check_constants = [&out]() {
    for (const auto& eq : out.residual.equations) {
      if (eq.is_constant() && !eq.is_zero()) {
        out.consistent = false;
        out.contradiction = eq;
        return false;
      }
    }
    return true;
  };
  if (!check_constants()) return out;
  while (auto pivot = find_pivot(out.residual)) {
    out.steps.push_back({pivot->variable, pivot->value, pivot->equation});
    if (pivot->value.is_constant()) out.partial[pivot->variable] = pivot->value.constant_term();

    ConstraintSystem next;
    for (std::size_t k = 0; k < out.residual.unknowns.size(); ++k) {
      if (out.residual.unknowns[k] == pivot->variable) continue;
      next.unknowns.push_back(out.residual.unknowns[k]);
      next.labels.push_back(out.residual.labels[k]);
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < out.residual.equations.size(); ++i) {
      append_unique(next, seen, substitute(out.residual.equations[i], pivot->variable, pivot->value),
                    out.residual.provenance[i]);
    }
    out.residual = std::move(next);
    if (!check_constants()) return out;
  }
  return out;
}

Assignment back_substitute(const Elimination& elim, const Assignment& residual_solution) {
  Assignment a = residual_solution;
  for (auto it = elim.steps.rbegin(); it != elim.steps.rend(); ++it) {
    a[it->variable] = evaluate(it->value, a);
  }
  return a;
}

std::vector<Rational> grid_values(const GridSpec& grid) {
  if (grid.max_numerator < 0 || grid.max_denominator < 1) {
    throw PreconditionError("grid needs N >= 0 and Dmax >= 1");
  }
  std::set<Rational> values;
  for (long d = 1; d <= grid.max_denominator; ++d) {
    for (long n = -grid.max_numerator; n <= grid.max_numerator; ++n) {
      Rational q(n, d);
      q.canonicalize();
      values.insert(q);
    }
  }
  return {values.begin(), values.end()};
}

std::vector<Assignment> grid_search(const ConstraintSystem& sys, const GridSpec& grid,
                                    std::size_t unknown_cap) {
  const std::size_t n = sys.unknowns.size();
  if (n > unknown_cap) {
    throw CapExceeded("grid search over " + std::to_string(n) + " unknowns exceeds the cap of " +
                      std::to_string(unknown_cap));
  }
  const auto values = grid_values(grid);

  // Each equation is tested as soon as its last unknown (in list order) is set.
  std::vector<std::vector<const MultiPoly*>> ready(n + 1);
  for (const auto& eq : sys.equations) {
    std::size_t last = 0;
    for (const auto& v : unknowns_of(eq)) {
      const auto pos = std::find(sys.unknowns.begin(), sys.unknowns.end(), v);
      if (pos == sys.unknowns.end()) throw PreconditionError("equation uses undeclared unknown " + v.name());
      last = std::max<std::size_t>(last, static_cast<std::size_t>(pos - sys.unknowns.begin()) + 1);
    }
    ready[last].push_back(&eq);
  }

  std::vector<Assignment> out;
  ValueTable table(0);
  std::vector<std::size_t> choice(n, 0);
  auto passes = [&](std::size_t level) {
    return std::all_of(ready[level].begin(), ready[level].end(),
                       [&](const MultiPoly* eq) { return table.eval(*eq) == 0; });
  };
  if (!passes(0)) return out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  // Iterative depth-first enumeration in lexicographic order.
  std::size_t level = 0;
  choice[0] = 0;
  for (;;) {
    if (choice[level] == values.size()) {
      if (level == 0) break;
      --level;
      ++choice[level];
      continue;
    }
    table.assign(sys.unknowns[level], values[choice[level]]);
    if (!passes(level + 1)) {
      ++choice[level];
      continue;
    }
    if (level + 1 == n) {
      Assignment a;
      for (std::size_t k = 0; k < n; ++k) a[sys.unknowns[k]] = values[choice[k]];
      out.push_back(std::move(a));
      ++choice[level];
      continue;
    }
    ++level;
    choice[level] = 0;
  }
  return out;
}

SolveResult solve(const ConstraintSystem& sys, const GridSpec& grid, std::size_t unknown_cap) {
  SolveResult out{linear_eliminate(sys), {}};
  if (!out.elimination.consistent) return out;
  for (const auto& partial : grid_search(out.elimination.residual, grid, unknown_cap)) {
    Assignment full = back_substitute(out.elimination, partial);
    if (!verify_assignment(sys, full)) {
      throw std::logic_error("back-substituted assignment does not satisfy the system");
    }
    out.solutions.push_back(std::move(full));
  }
  return out;
}

PolyMatrix instantiate(const PolyMatrix& symbolic, const Assignment& a) {
  PolyMatrix out = symbolic;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      for (const auto& [v, q] : a) {
        if (out.at(r, c).involves(v)) out.at(r, c) = eval_at(out.at(r, c), v, q);
      }
      if (out.at(r, c).has_unknowns()) throw PreconditionError("assignment leaves unknowns in the matrix");
    }
  }
  return out;
}

EquivalenceSearch find_equivalence_witnesses(const MatchedPair& mp, const DeformationMap& phi,
                                             const DeformationMap& psi,
                                             const AnsatzSpec& alpha_ansatz, const GridSpec& grid,
                                             std::size_t unknown_cap) {
  EquivalenceSearch out;
  out.system = compile_equivalence_constraints(mp, phi, psi, alpha_ansatz);
  out.solve = solve(out.system, grid, unknown_cap);
  const PolyMatrix symbolic = alpha_ansatz.symbolic();
  for (const auto& sol : out.solve.solutions) {
    PolyMatrix alpha = instantiate(symbolic, sol);
    if (!is_unimodular(alpha)) {
      ++out.singular_candidates;
      continue;
    }
    if (check_equivalence(mp, phi, psi, alpha).pass()) out.witnesses.push_back(std::move(alpha));
  }
  return out;
}

std::string to_json(const ConstraintSystem& sys, int indent) {
  ordered_json doc;
  doc["unknowns"] = ordered_json::array();
  for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
    doc["unknowns"].push_back({{"name", sys.unknowns[k].name()}, {"label", sys.labels[k]}});
  }
  doc["equations"] = ordered_json::array();
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const auto& p = sys.provenance[i];
    doc["equations"].push_back({{"poly", sys.equations[i].to_string()},
                                {"pair", {p.left, p.right}},
                                {"output", p.output},
                                {"monomial", p.monomial}});
  }
  return doc.dump(indent);
}

ConstraintSystem constraint_system_from_json(std::string_view text) {
  ConstraintSystem sys;
  try {
    const auto doc = ordered_json::parse(text);
    for (const auto& u : doc.at("unknowns")) {
      const auto name = u.at("name").get<std::string>();
      const MultiPoly v = MultiPoly::parse(name);
      const auto vars = unknowns_of(v);
      if (vars.size() != 1 || v != MultiPoly::var(vars[0])) throw ParseError("bad unknown name " + name);
      sys.unknowns.push_back(vars[0]);
      sys.labels.push_back(u.value("label", name));
    }
    for (const auto& e : doc.at("equations")) {
      MultiPoly eq = MultiPoly::parse(e.at("poly").get<std::string>());
      if (!eq.only_involves({}) && (eq.involves(VarId::D()) || eq.involves(VarId::L1()) ||
                                    eq.involves(VarId::L2()))) {
        throw ParseError("equation " + eq.to_string() + " involves d, l or m");
      }
      const auto pair = e.at("pair");
      sys.equations.push_back(std::move(eq));
      sys.provenance.push_back({pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>(),
                                e.at("output").get<std::size_t>(),
                                e.at("monomial").get<Monomial>()});
    }
  } catch (const ordered_json::exception& ex) {
    throw ParseError(std::string("constraint system JSON: ") + ex.what());
  }
  return sys;
}

}  // namespace cfk

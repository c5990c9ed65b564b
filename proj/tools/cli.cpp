#include "cli.hpp"

#include "cfk/constraints.hpp"
#include "cfk/dsl.hpp"
#include "cfk/error.hpp"
#include "cfk/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace cfk::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Raised after the report has been filled with the reason.
struct Stop {
  int code;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

json strings(const Element& e) { return e.to_strings(); }

json violations_json(const CheckReport& r) {
  json out = json::array();
  for (const auto& v : r.violations) {
    out.push_back({{"identity", v.identity}, {"indices", v.indices}, {"residual", strings(v.residual)}});
  }
  return out;
}

json check_json(const std::string& name, const std::string& kind, const std::string& check,
                const CheckReport& r) {
  json j{{"declaration", name}, {"kind", kind}, {"check", check}, {"status", r.pass() ? "pass" : "fail"}};
  if (!r.pass()) j["violations"] = violations_json(r);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

json matrix_json(const PolyMatrix& m, const std::vector<std::string>& src, const std::vector<std::string>& tgt) {
  json out = json::object();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::object();
    for (std::size_t k = 0; k < m.cols(); ++k) row[tgt[k]] = m.at(i, k).to_string();
    out[src[i]] = row;
  }
  return out;
}

json assignment_json(const Assignment& a) {
  json out = json::object();
  for (const auto& [v, q] : a) out[v.name()] = to_string(q);
  return out;
}

json elimination_json(const Elimination& e) {
  json steps = json::array();
  for (const auto& s : e.steps) steps.push_back({{"variable", s.variable.name()}, {"value", s.value.to_string()}});
  json residual_unknowns = json::array();
  for (std::size_t k = 0; k < e.residual.unknowns.size(); ++k) {
    residual_unknowns.push_back({{"name", e.residual.unknowns[k].name()}, {"label", e.residual.labels[k]}});
  }
  json residual_eqs = json::array();
  for (const auto& eq : e.residual.equations) residual_eqs.push_back(eq.to_string());
  json j{{"consistent", e.consistent},
         {"steps", steps},
         {"residual_unknowns", residual_unknowns},
         {"residual_equations", residual_eqs}};
  if (e.contradiction) j["contradiction"] = e.contradiction->to_string();
  return j;
}

struct Invocation {
  fs::path base;
  std::ostream& err;
  json report;

  fs::path resolve(const std::string& p) const {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
  }

  std::string read_input(const std::string& p) {
    std::ifstream in(resolve(p), std::ios::binary);
    if (!in) {
      report["error"] = "cannot read " + p;
      throw Stop{kInputError};
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    report["inputs"].push_back({{"file", fs::path(p).filename().string()}, {"fnv1a64", fnv1a64(text)}});
    return text;
  }

  void write_output(const std::string& p, const std::string& text) {
    std::ofstream out(resolve(p), std::ios::binary);
    if (!out || !(out << text)) {
      report["error"] = "cannot write " + p;
      throw Stop{kInputError};
    }
  }

  Document load(const std::string& file, const ParamMap& params) {
    const std::string text = read_input(file);
    ParseResult r = parse_document(text, params);
    if (!r.diagnostics.empty()) {
      json diags = json::array();
      const std::string shown = fs::path(file).filename().string();
      for (const auto& d : r.diagnostics) {
        err << format_diagnostic(d, shown) << '\n';
        diags.push_back({{"line", d.line},
                         {"column", d.column},
                         {"length", d.length},
                         {"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
                         {"message", d.message}});
      }
      report["diagnostics"] = diags;
    }
    if (!r.ok()) throw Stop{kInputError};
    return std::move(*r.document);
  }

  [[noreturn]] void input_error(const std::string& message) {
    report["error"] = message;
    throw Stop{kInputError};
  }

  template <typename T>
  const T& require(const T* p, const std::string& what, const std::string& name) {
    if (!p) input_error("no " + what + " named '" + name + "'");
    return *p;
  }
};

ParamMap parse_params(const std::vector<std::string>& raw, Invocation& inv) {
  ParamMap out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) inv.input_error("--param expects NAME=RATIONAL, got '" + p + "'");
    try {
      out[p.substr(0, eq)] = parse_rational(p.substr(eq + 1));
    } catch (const Error& e) {
      inv.input_error("--param " + p + ": " + e.what());
    }
  }
  return out;
}

json params_json(const ParamMap& params) {
  json out = json::object();
  for (const auto& [k, v] : params) out[k] = to_string(v);
  return out;
}

// --- commands ---------------------------------------------------------------

struct Options {
  std::string file;
  std::vector<std::string> names;
  std::string pair;
  std::string map;
  std::string phi;
  std::string psi;
  std::string alpha;
  std::string algebra;
  std::string expect;
  std::string out_path;
  std::string out_name;
  unsigned degree = 0;
  long grid_num = 2;
  long grid_den = 2;
  std::size_t cap = 6;
  std::size_t max_depth = 10;
  bool search_diagonal = false;
  bool update = false;
};

int cmd_check(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  json results = json::array();
  bool all = true;
  std::vector<std::string> missing = o.names;
  for (const auto& decl : doc.declarations) {
    const std::string& name = declaration_name(decl);
    if (!o.names.empty()) {
      auto it = std::find(missing.begin(), missing.end(), name);
      if (std::find(o.names.begin(), o.names.end(), name) == o.names.end()) continue;
      if (it != missing.end()) missing.erase(it);
    }
    auto add = [&](const std::string& kind, const std::string& check, const CheckReport& r) {
      all &= r.pass();
      results.push_back(check_json(name, kind, check, r));
    };
    if (const auto* a = std::get_if<AlgebraDecl>(&decl)) {
      add("algebra", "axioms", check_axioms(*a->algebra));
    } else if (const auto* p = std::get_if<MatchedDecl>(&decl)) {
      const CheckReport normative = check_matched_pair(p->pair);
      add("matched", "matched-pair", normative);
      if (p->pair.kind == AlgebraKind::Lie) {
        const CheckReport direct = check_b1_b2_direct(p->pair);
        json j = check_json(name, "matched", "b1-b2-direct", direct);
        j["agrees_with_matched_pair"] = direct.pass() == normative.pass();
        if (direct.pass() != normative.pass()) {
          all = false;
          j["diagnostic"] = "convention mismatch between the direct compatibility conditions and the axiom check";
        }
        results.push_back(j);
      }
    } else if (const auto* f = std::get_if<DefmapDecl>(&decl)) {
      const MatchedDecl& p = *doc.find_matched(f->pair_name);
      add("defmap", "deformation-map", check_deformation_map(p.pair, f->map));
    } else {
      const auto& h = std::get<MorphismDecl>(decl);
      add("morphism", "morphism", check_morphism(h.morphism));
    }
  }
  if (!missing.empty()) inv.input_error("no declaration named '" + missing.front() + "'");
  inv.report["results"] = results;
  return all ? kPass : kFail;
}

int cmd_bicrossed(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  const MatchedDecl& p = inv.require(doc.find_matched(o.pair), "matched pair", o.pair);
  const CheckReport r = check_matched_pair(p.pair);
  inv.report["results"] = json::array({check_json(p.name, "matched", "matched-pair", r)});
  if (!r.pass()) return kFail;
  const std::string name = o.out_name.empty() ? p.name + "_bicrossed" : o.out_name;
  const auto e = std::make_shared<const ConformalAlgebra>(build_bicrossed(p.pair));
  const std::string text = serialize(Declaration{AlgebraDecl{name, e}});
  inv.report["algebra"] = text;
  int code = kPass;
  if (!o.expect.empty()) {
    const AlgebraDecl& want = inv.require(doc.find_algebra(o.expect), "algebra", o.expect);
    const bool same = *want.algebra == *e;
    inv.report["matches_expected"] = {{"algebra", o.expect}, {"equal", same}};
    if (!same) code = kFail;
  }
  if (!o.out_path.empty()) inv.write_output(o.out_path, text);
  return code;
}

int cmd_deform(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  const MatchedDecl& p = inv.require(doc.find_matched(o.pair), "matched pair", o.pair);
  const DefmapDecl& f = inv.require(doc.find_defmap(o.map), "deformation map", o.map);
  if (f.pair_name != p.name) inv.input_error("deformation map '" + f.name + "' belongs to pair '" + f.pair_name + "'");
  const CheckReport r = check_deformation_map(p.pair, f.map);
  json results = json::array({check_json(f.name, "defmap", "deformation-map", r)});
  if (!r.pass()) {
    inv.report["results"] = results;
    return kFail;
  }
  const CheckReport g = graph_embedding_check(p.pair, f.map);
  results.push_back(check_json(f.name, "defmap", "graph-embedding", g));
  inv.report["results"] = results;
  const std::string name = o.out_name.empty() ? f.name + "_deformed" : o.out_name;
  const auto q = std::make_shared<const ConformalAlgebra>(deformed_algebra(p.pair, f.map));
  const std::string text = serialize(Declaration{AlgebraDecl{name, q}});
  inv.report["algebra"] = text;
  int code = g.pass() ? kPass : kFail;
  if (!o.expect.empty()) {
    const AlgebraDecl& want = inv.require(doc.find_algebra(o.expect), "algebra", o.expect);
    const bool same = want.algebra->table() == q->table() && want.algebra->kind() == q->kind();
    inv.report["matches_expected"] = {{"algebra", o.expect}, {"equal", same}};
    if (!same) code = kFail;
  }
  if (!o.out_path.empty()) inv.write_output(o.out_path, text);
  return code;
}

int cmd_constraints(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  const MatchedDecl& p = inv.require(doc.find_matched(o.pair), "matched pair", o.pair);
  const ConstraintSystem sys =
      compile_deformation_constraints(p.pair, AnsatzSpec::uniform(p.pair.q->rank(), p.pair.r->rank(), o.degree));
  const std::string text = to_json(sys);
  inv.report["degree"] = o.degree;
  inv.report["system"] = json::parse(text);
  inv.report["elimination"] = elimination_json(linear_eliminate(sys));
  if (!o.out_path.empty()) inv.write_output(o.out_path, text + "\n");
  return kPass;
}

int cmd_solve(Invocation& inv, const Options& o) {
  ConstraintSystem sys;
  try {
    sys = constraint_system_from_json(inv.read_input(o.file));
  } catch (const ParseError& e) {
    inv.input_error(e.what());
  }
  const GridSpec grid{o.grid_num, o.grid_den};
  inv.report["grid"] = {{"num", grid.max_numerator}, {"den", grid.max_denominator},
                        {"values", grid_values(grid).size()}};
  const Elimination elim = linear_eliminate(sys);
  inv.report["elimination"] = elimination_json(elim);
  if (elim.residual.unknowns.size() > o.cap) {
    inv.report["error"] = "residual system has " + std::to_string(elim.residual.unknowns.size()) +
                          " unknowns; the cap is " + std::to_string(o.cap);
    return kCapExceeded;
  }
  const SolveResult r = solve(sys, grid, o.cap);
  json sols = json::array();
  for (const auto& a : r.solutions) sols.push_back(assignment_json(a));
  inv.report["solutions"] = sols;
  inv.report["solution_count"] = r.solutions.size();
  return kPass;
}

int cmd_equiv(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  const MatchedDecl& p = inv.require(doc.find_matched(o.pair), "matched pair", o.pair);
  const DefmapDecl& phi = inv.require(doc.find_defmap(o.phi), "deformation map", o.phi);
  const DefmapDecl& psi = inv.require(doc.find_defmap(o.psi), "deformation map", o.psi);
  const auto& qn = p.pair.q->basis_names();
  json results = json::array({check_json(phi.name, "defmap", "deformation-map", check_deformation_map(p.pair, phi.map)),
                              check_json(psi.name, "defmap", "deformation-map", check_deformation_map(p.pair, psi.map))});
  inv.report["results"] = results;
  if (!o.alpha.empty()) {
    const MorphismDecl& a = inv.require(doc.find_morphism(o.alpha), "morphism", o.alpha);
    if (*a.morphism.source != *p.pair.q || *a.morphism.target != *p.pair.q) {
      inv.input_error("alpha must be declared as a map from Q to Q");
    }
    if (!is_unimodular(a.morphism.matrix)) {
      inv.report["equivalence"] = {{"alpha", o.alpha}, {"status", "fail"}, {"reason", "alpha is not invertible"}};
      return kFail;
    }
    const CheckReport r = check_equivalence(p.pair, phi.map, psi.map, a.morphism.matrix);
    json j{{"alpha", o.alpha}, {"status", r.pass() ? "pass" : "fail"}};
    if (!r.pass()) j["violations"] = violations_json(r);
    inv.report["equivalence"] = j;
    return r.pass() ? kPass : kFail;
  }
  if (!o.search_diagonal) inv.input_error("equiv needs --alpha NAME or --search-diagonal");
  const GridSpec grid{o.grid_num, o.grid_den};
  const EquivalenceSearch s =
      find_equivalence_witnesses(p.pair, phi.map, psi.map, AnsatzSpec::diagonal(qn.size(), o.degree), grid, o.cap);
  json witnesses = json::array();
  for (const auto& w : s.witnesses) witnesses.push_back(matrix_json(w, qn, qn));
  json eqs = json::array();
  for (const auto& e : s.system.equations) eqs.push_back(e.to_string());
  json unknowns = json::array();
  for (std::size_t k = 0; k < s.system.unknowns.size(); ++k) {
    unknowns.push_back({{"name", s.system.unknowns[k].name()}, {"label", s.system.labels[k]}});
  }
  const bool found = !s.witnesses.empty();
  inv.report["equivalence"] = {
      {"family", "diagonal, degree " + std::to_string(o.degree)},
      {"grid", {{"num", grid.max_numerator}, {"den", grid.max_denominator}}},
      {"unknowns", unknowns},
      {"equations", eqs},
      {"elimination", elimination_json(s.solve.elimination)},
      {"grid_solutions", s.solve.solutions.size()},
      {"singular_candidates", s.singular_candidates},
      {"witnesses", witnesses},
      {"status", found ? "pass" : "fail"},
      {"verdict", found ? "equivalent" : "not found within searched family"}};
  return found ? kPass : kFail;
}

int cmd_morphism(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  const std::vector<std::string> names = o.names.empty() ? std::vector<std::string>{} : o.names;
  json results = json::array();
  bool all = true;
  for (const auto& decl : doc.declarations) {
    const auto* h = std::get_if<MorphismDecl>(&decl);
    if (!h) continue;
    if (!names.empty() && std::find(names.begin(), names.end(), h->name) == names.end()) continue;
    const CheckReport r = check_morphism(h->morphism);
    json j = check_json(h->name, "morphism", "morphism", r);
    j["source"] = h->source_name;
    j["target"] = h->target_name;
    if (h->morphism.matrix.rows() == h->morphism.matrix.cols() && h->morphism.matrix.is_univariate_in_d()) {
      j["determinant"] = determinant(h->morphism.matrix).to_string();
      j["isomorphism"] = r.pass() && is_unimodular(h->morphism.matrix);
    } else {
      j["isomorphism"] = false;
    }
    all &= r.pass();
    results.push_back(j);
  }
  for (const auto& n : names) {
    if (!doc.find_morphism(n)) inv.input_error("no morphism named '" + n + "'");
  }
  inv.report["results"] = results;
  return all ? kPass : kFail;
}

int cmd_structure(Invocation& inv, const Options& o, const ParamMap& params) {
  const Document doc = inv.load(o.file, params);
  const AlgebraDecl& a = inv.require(doc.find_algebra(o.algebra), "algebra", o.algebra);
  const ConformalAlgebra& alg = *a.algebra;
  json j{{"algebra", a.name}, {"abelian", is_abelian(alg)}};
  if (alg.kind() != AlgebraKind::Lie) {
    inv.report["structure"] = j;
    return kPass;
  }
  const Solvability s = is_solvable(alg, o.max_depth);
  json series = json::array();
  for (const auto& sub : s.series) {
    json gens = json::array();
    for (const auto& g : sub.generator_elements()) gens.push_back(strings(g));
    series.push_back(gens);
  }
  j["verdict"] = to_string(s.verdict);
  j["depth"] = s.depth;
  j["max_depth"] = o.max_depth;
  j["basis"] = alg.basis_names();
  j["derived_series"] = series;
  inv.report["structure"] = j;
  return s.verdict == Solvability::Verdict::Unknown ? kCapExceeded : kPass;
}

// --- corpus ----------------------------------------------------------------

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

json strip_timings(json j) {
  if (j.is_object()) {
    j.erase("timings");
    for (auto& [k, v] : j.items()) v = strip_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timings(v);
  }
  return j;
}

int cmd_corpus(Invocation& inv, const Options& o) {
  const fs::path root = inv.resolve(o.file);
  if (!fs::is_directory(root)) inv.input_error("not a directory: " + o.file);
  std::vector<fs::path> fixtures;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "params.txt")) fixtures.push_back(entry.path());
  }
  std::sort(fixtures.begin(), fixtures.end());
  json summary = json::array();
  bool all = true;
  for (const auto& dir : fixtures) {
    std::ifstream params(dir / "params.txt");
    json runs = json::array();
    for (std::string line; std::getline(params, line);) {
      if (line.empty() || line[0] == '#') continue;
      const auto args = split_words(line);
      if (args.empty()) continue;
      std::ostringstream out;
      std::ostringstream err;
      const int code = run(args, out, err, dir);
      json report;
      try {
        report = json::parse(out.str());
      } catch (const json::exception&) {
        report = {{"unparsed_output", out.str()}};
      }
      runs.push_back({{"args", args}, {"exit_code", code}, {"report", strip_timings(report)}});
    }
    const fs::path golden = dir / "expected.json";
    const json current{{"schema", 1}, {"runs", runs}};
    json entry{{"fixture", dir.filename().string()}, {"runs", runs.size()}};
    if (o.update) {
      std::ofstream(golden) << current.dump(2) << '\n';
      entry["status"] = "updated";
    } else if (!fs::exists(golden)) {
      entry["status"] = "fail";
      entry["reason"] = "missing expected.json";
      all = false;
    } else {
      json expected;
      try {
        std::ifstream in(golden);
        expected = json::parse(in);
      } catch (const json::exception& e) {
        expected = json{{"parse_error", e.what()}};
      }
      if (strip_timings(expected) == current) {
        entry["status"] = "pass";
      } else {
        entry["status"] = "fail";
        json diff = json::array();
        for (const auto& d : json::diff(strip_timings(expected), current)) {
          diff.push_back(d);
          if (diff.size() == 10) break;
        }
        entry["diff"] = diff;
        all = false;
        inv.err << "corpus fixture " << dir.filename().string() << " differs from its golden report\n";
      }
    }
    summary.push_back(entry);
  }
  inv.report["fixtures"] = summary;
  return all ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const fs::path& base_dir) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Exact checks for finite conformal algebras, matched pairs and deformation maps", "cfk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Options o;
  std::vector<std::string> raw_params;
  std::string json_path;
  auto common = [&](CLI::App* sub, bool with_file_params) {
    sub->add_option("--json", json_path, "Write the report to PATH instead of stdout");
    if (with_file_params) sub->add_option("--param", raw_params, "Bind a parameter, NAME=RATIONAL (repeatable)");
  };

  auto* check = app.add_subcommand("check", "Check axioms, matched pairs, deformation maps and morphisms");
  check->add_option("file", o.file, "Input .cfk file")->required();
  check->add_option("--name", o.names, "Only check these declarations");
  common(check, true);

  auto* bicrossed = app.add_subcommand("bicrossed", "Build the bicrossed product of a matched pair");
  bicrossed->add_option("file", o.file)->required();
  bicrossed->add_option("--pair", o.pair)->required();
  bicrossed->add_option("-o", o.out_path, "Write the product as .cfk");
  bicrossed->add_option("--as", o.out_name, "Name of the written algebra");
  bicrossed->add_option("--expect", o.expect, "Compare with this declared algebra");
  common(bicrossed, true);

  auto* deform = app.add_subcommand("deform", "Verify a deformation map and build the deformed complement");
  deform->add_option("file", o.file)->required();
  deform->add_option("--pair", o.pair)->required();
  deform->add_option("--map", o.map)->required();
  deform->add_option("-o", o.out_path);
  deform->add_option("--as", o.out_name);
  deform->add_option("--expect", o.expect, "Compare the deformed table with this declared algebra");
  common(deform, true);

  auto* constraints = app.add_subcommand("constraints", "Compile deformation-map constraints for a polynomial ansatz");
  constraints->add_option("file", o.file)->required();
  constraints->add_option("--pair", o.pair)->required();
  constraints->add_option("--degree", o.degree, "Degree bound of every map entry")->default_val(0);
  constraints->add_option("-o", o.out_path, "Write the constraint system JSON");
  common(constraints, true);

  auto* solve_cmd = app.add_subcommand("solve", "Eliminate and grid-search a constraint system");
  solve_cmd->add_option("file", o.file, "Constraint system JSON")->required();
  solve_cmd->add_option("--grid-num", o.grid_num)->default_val(2);
  solve_cmd->add_option("--grid-den", o.grid_den)->default_val(2);
  solve_cmd->add_option("--cap", o.cap, "Maximum number of unknowns searched")->default_val(6);
  common(solve_cmd, false);

  auto* equiv = app.add_subcommand("equiv", "Test or search for an equivalence between deformation maps");
  equiv->add_option("file", o.file)->required();
  equiv->add_option("--pair", o.pair)->required();
  equiv->add_option("--phi", o.phi)->required();
  equiv->add_option("--psi", o.psi)->required();
  equiv->add_option("--alpha", o.alpha, "Declared morphism Q -> Q to test");
  equiv->add_flag("--search-diagonal", o.search_diagonal, "Grid-search diagonal alpha");
  equiv->add_option("--degree", o.degree)->default_val(0);
  equiv->add_option("--grid-num", o.grid_num)->default_val(2);
  equiv->add_option("--grid-den", o.grid_den)->default_val(2);
  equiv->add_option("--cap", o.cap)->default_val(6);
  common(equiv, true);

  auto* morphism = app.add_subcommand("morphism", "Check declared morphisms");
  morphism->add_option("file", o.file)->required();
  morphism->add_option("--name", o.names);
  common(morphism, true);

  auto* structure = app.add_subcommand("structure", "Derived series and solvability");
  structure->add_option("file", o.file)->required();
  structure->add_option("--algebra", o.algebra)->required();
  structure->add_option("--max-depth", o.max_depth)->default_val(10);
  common(structure, true);

  auto* corpus = app.add_subcommand("corpus", "Run every fixture of a corpus directory against its golden report");
  corpus->add_option("dir", o.file)->required();
  corpus->add_flag("--update", o.update, "Rewrite the golden reports");
  common(corpus, false);

  std::vector<const char*> argv{"cfk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  json echo = args;
  Invocation inv{base_dir, err, json::object()};
  inv.report["schema"] = 1;
  inv.report["command"] = echo;
  inv.report["inputs"] = json::array();

  int code = kPass;
  try {
    const ParamMap params = parse_params(raw_params, inv);
    inv.report["params"] = params_json(params);
    if (name == "check") code = cmd_check(inv, o, params);
    else if (name == "bicrossed") code = cmd_bicrossed(inv, o, params);
    else if (name == "deform") code = cmd_deform(inv, o, params);
    else if (name == "constraints") code = cmd_constraints(inv, o, params);
    else if (name == "solve") code = cmd_solve(inv, o);
    else if (name == "equiv") code = cmd_equiv(inv, o, params);
    else if (name == "morphism") code = cmd_morphism(inv, o, params);
    else if (name == "structure") code = cmd_structure(inv, o, params);
    else code = cmd_corpus(inv, o);
  } catch (const Stop& s) {
    code = s.code;
  } catch (const CapExceeded& e) {
    inv.report["error"] = e.what();
    code = kCapExceeded;
  } catch (const Error& e) {
    inv.report["error"] = e.what();
    code = kInputError;
  }
  if (inv.report.contains("error")) err << "cfk " << name << ": " << inv.report["error"].get<std::string>() << '\n';

  inv.report["status"] = code == kPass ? "pass" : code == kFail ? "fail" : "error";
  inv.report["exit_code"] = code;
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
  inv.report["timings"] = {{"total_ms", elapsed.count()}};

  const std::string text = inv.report.dump(2) + "\n";
  if (json_path.empty()) {
    out << text;
  } else {
    std::ofstream f(inv.resolve(json_path), std::ios::binary);
    if (!(f << text)) {
      err << "cfk: cannot write " << json_path << '\n';
      return kInputError;
    }
  }
  return code;
}

}  // namespace cfk::cli

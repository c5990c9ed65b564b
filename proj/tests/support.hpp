#pragma once

#include "cfk/dsl.hpp"
#include "cfk/error.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cfk::test {

inline std::filesystem::path corpus_dir() { return CFK_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document parse_or_throw(std::string_view text, const ParamMap& params = {}) {
  auto res = parse_document(text, params);
  if (!res.ok()) {
    std::string msg;
    for (const auto& d : res.diagnostics) msg += format_diagnostic(d, "<test>") + "\n";
    throw std::runtime_error(msg);
  }
  return *res.document;
}

inline Document load_fixture(const std::string& name, const ParamMap& params = {}) {
  return parse_or_throw(read_file(corpus_dir() / name / "input.cfk"), params);
}

inline ParamMap params(std::initializer_list<std::pair<const char*, const char*>> kv) {
  ParamMap m;
  for (const auto& [k, v] : kv) m[k] = parse_rational(v);
  return m;
}

inline AlgebraRef algebra(const Document& doc, std::string_view name) {
  const auto* a = doc.find_algebra(name);
  if (!a) throw std::runtime_error("no algebra " + std::string(name));
  return a->algebra;
}

inline const MatchedPair& pair(const Document& doc, std::string_view name) {
  const auto* m = doc.find_matched(name);
  if (!m) throw std::runtime_error("no matched pair " + std::string(name));
  return m->pair;
}

inline const DeformationMap& defmap(const Document& doc, std::string_view name) {
  const auto* m = doc.find_defmap(name);
  if (!m) throw std::runtime_error("no defmap " + std::string(name));
  return m->map;
}

inline const Morphism& morphism(const Document& doc, std::string_view name) {
  const auto* m = doc.find_morphism(name);
  if (!m) throw std::runtime_error("no morphism " + std::string(name));
  return m->morphism;
}

inline MultiPoly P(std::string_view s) { return MultiPoly::parse(s); }

// Small random rationals n/k with |n| <= 3, 1 <= k <= 2.
inline Rational random_rational(std::mt19937& rng, int num = 3, int den = 2) {
  std::uniform_int_distribution<int> n(-num, num);
  std::uniform_int_distribution<int> k(1, den);
  Rational q(n(rng), k(rng));
  q.canonicalize();
  return q;
}

inline MultiPoly random_poly(std::mt19937& rng, const std::vector<VarId>& vars, unsigned max_deg,
                             int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  MultiPoly p;
  for (int t = nterms(rng); t > 0; --t) {
    MultiPoly m = random_rational(rng);
    for (auto v : vars) m *= pow(MultiPoly::var(v), deg(rng));
    p += m;
  }
  return p;
}

inline Element random_element(std::mt19937& rng, std::size_t rank, unsigned max_deg = 2) {
  Element e(rank);
  for (std::size_t i = 0; i < rank; ++i) e[i] = random_poly(rng, {VarId::D()}, max_deg, 3);
  return e;
}

}  // namespace cfk::test

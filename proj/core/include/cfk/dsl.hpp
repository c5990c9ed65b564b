#pragma once

// The .cfk text format: algebras, matched pairs, deformation maps and
// morphisms, with span-carrying diagnostics and a canonical serializer.
//
//   algebra Vir : lie { gens L; [L,L] = (d + 2*l) L; }
//   matched W : lie { R = Vir; Q = Ab; W <| L = (l - b) W; }
//   defmap phi on W { W -> (3) L; }
//   morphism h : Qa -> Vir { W -> (3) L; }
//
// Polynomials use d and l (and m, which is rejected in tables); any other
// identifier inside a polynomial must be a parameter.

#include "cfk/deform.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cfk {

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  /// 1-based line and column (bytes), and length of the offending text.
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;
};

/// "name:line:col: error: message"
std::string format_diagnostic(const Diagnostic& d, std::string_view source_name);

struct AlgebraDecl {
  std::string name;
  AlgebraRef algebra;
};

struct MatchedDecl {
  std::string name;
  std::string r_name;
  std::string q_name;
  MatchedPair pair;
};

struct DefmapDecl {
  std::string name;
  std::string pair_name;
  /// Complement and ambient subalgebra of the pair, for generator names.
  AlgebraRef q;
  AlgebraRef r;
  DeformationMap map;
};

struct MorphismDecl {
  std::string name;
  std::string source_name;
  std::string target_name;
  Morphism morphism;
};

using Declaration = std::variant<AlgebraDecl, MatchedDecl, DefmapDecl, MorphismDecl>;

const std::string& declaration_name(const Declaration& d);

struct Document {
  std::vector<Declaration> declarations;

  const AlgebraDecl* find_algebra(std::string_view name) const;
  const MatchedDecl* find_matched(std::string_view name) const;
  const DefmapDecl* find_defmap(std::string_view name) const;
  const MorphismDecl* find_morphism(std::string_view name) const;
};

bool operator==(const Document& a, const Document& b);

using ParamMap = std::map<std::string, Rational>;

struct ParseResult {
  /// Present iff no error diagnostics were produced.
  std::optional<Document> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

/// Never throws on malformed input; collects up to `max_diagnostics` errors.
ParseResult parse_document(std::string_view text, const ParamMap& params = {},
                           std::size_t max_diagnostics = 20);

/// Canonical text; parse_document(serialize(doc)) == doc.
std::string serialize(const Document& doc);
std::string serialize(const Declaration& decl);

}  // namespace cfk

#include "cfk/dsl.hpp"

#include "cfk/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace cfk {

std::string format_diagnostic(const Diagnostic& d, std::string_view source_name) {
  std::ostringstream out;
  out << source_name << ':' << d.line << ':' << d.column << ": "
      << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message;
  return out.str();
}

const std::string& declaration_name(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

namespace {

template <typename T>
const T* find_decl(const Document& doc, std::string_view name) {
  for (const auto& d : doc.declarations) {
    if (const auto* p = std::get_if<T>(&d); p && p->name == name) return p;
  }
  return nullptr;
}

bool same_action(const std::optional<ModuleAction>& a, const std::optional<ModuleAction>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

bool same_decl(const Declaration& x, const Declaration& y) {
  if (x.index() != y.index()) return false;
  if (const auto* a = std::get_if<AlgebraDecl>(&x)) {
    const auto& b = std::get<AlgebraDecl>(y);
    return a->name == b.name && *a->algebra == *b.algebra;
  }
  if (const auto* a = std::get_if<MatchedDecl>(&x)) {
    const auto& b = std::get<MatchedDecl>(y);
    return a->name == b.name && a->r_name == b.r_name && a->q_name == b.q_name &&
           a->pair.kind == b.pair.kind && *a->pair.r == *b.pair.r && *a->pair.q == *b.pair.q &&
           a->pair.lhd == b.pair.lhd && a->pair.rhd == b.pair.rhd &&
           same_action(a->pair.lharp, b.pair.lharp) && same_action(a->pair.rharp, b.pair.rharp);
  }
  if (const auto* a = std::get_if<DefmapDecl>(&x)) {
    const auto& b = std::get<DefmapDecl>(y);
    return a->name == b.name && a->pair_name == b.pair_name && *a->q == *b.q && *a->r == *b.r &&
           a->map == b.map;
  }
  const auto& a = std::get<MorphismDecl>(x);
  const auto& b = std::get<MorphismDecl>(y);
  return a.name == b.name && a.source_name == b.source_name && a.target_name == b.target_name &&
         *a.morphism.source == *b.morphism.source && *a.morphism.target == *b.morphism.target &&
         a.morphism.matrix == b.morphism.matrix;
}

}  // namespace

const AlgebraDecl* Document::find_algebra(std::string_view name) const {
  return find_decl<AlgebraDecl>(*this, name);
}
const MatchedDecl* Document::find_matched(std::string_view name) const {
  return find_decl<MatchedDecl>(*this, name);
}
const DefmapDecl* Document::find_defmap(std::string_view name) const {
  return find_decl<DefmapDecl>(*this, name);
}
const MorphismDecl* Document::find_morphism(std::string_view name) const {
  return find_decl<MorphismDecl>(*this, name);
}

bool operator==(const Document& a, const Document& b) {
  if (a.declarations.size() != b.declarations.size()) return false;
  for (std::size_t i = 0; i < a.declarations.size(); ++i) {
    if (!same_decl(a.declarations[i], b.declarations[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  std::size_t length;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> errors;
};

LexResult lex(std::string_view src) {
  static const char* const two_char[] = {"->", "<|", "|>", "<~", "~>"};
  static const std::string single = "{}[](),;:=+-*/^";
  LexResult out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t start_line = line;
    const std::size_t start_col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.tokens.push_back({Tok::Ident, std::string(src.substr(i, j - i)), start_line, start_col, j - i});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.tokens.push_back({Tok::Number, std::string(src.substr(i, j - i)), start_line, start_col, j - i});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* two : two_char) {
      if (src.substr(i, 2) == two) {
        out.tokens.push_back({Tok::Symbol, two, start_line, start_col, 2});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (single.find(c) != std::string::npos) {
      out.tokens.push_back({Tok::Symbol, std::string(1, c), start_line, start_col, 1});
      advance(1);
      continue;
    }
    // Report a whole UTF-8 sequence as one character.
    std::size_t len = 1;
    while (i + len < src.size() && (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80) ++len;
    out.errors.push_back({Diagnostic::Severity::Error,
                          "unexpected character '" + std::string(src.substr(i, len)) + "'", start_line,
                          start_col, len});
    advance(len);
  }
  out.tokens.push_back({Tok::End, "", line, col, 0});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

struct Abort {};       // cap reached
struct SyntaxFail {};  // diagnostic recorded; resynchronize

// Which generator names a term list may refer to, and which variables its
// coefficients may use.
struct TermContext {
  const ConformalAlgebra* out;
  std::string out_desc;
  bool allow_l;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParamMap& params, std::size_t cap,
         std::vector<Diagnostic> lex_errors)
      : toks_(std::move(tokens)), params_(params), cap_(cap), diags_(std::move(lex_errors)) {
    if (diags_.size() >= cap_) diags_.resize(cap_);
  }

  ParseResult run() {
    Document doc;
    try {
      for (const auto& [name, value] : params_) {
        (void)value;
        if (name == "d" || name == "l" || name == "m") {
          error_at(toks_.front(), "parameter '" + name + "' shadows a polynomial variable");
        }
      }
      while (peek().kind != Tok::End) {
        try {
          parse_declaration(doc);
        } catch (const SyntaxFail&) {
          skip_declaration();
        }
      }
    } catch (const Abort&) {
      Diagnostic d = span_of(peek());
      d.message = "too many errors; giving up";
      diags_.push_back(std::move(d));
    }
    std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::pair(a.line, a.column) < std::pair(b.line, b.column);
    });
    ParseResult result;
    bool has_error = false;
    for (const auto& d : diags_) has_error |= d.severity == Diagnostic::Severity::Error;
    if (!has_error) result.document = std::move(doc);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool at_word(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  // Span of a token, or of the last real token when at end of input.
  Diagnostic span_of(const Token& t) const {
    if (t.kind != Tok::End || pos_ == 0) return {Diagnostic::Severity::Error, "", t.line, t.column, t.length};
    const Token& last = toks_[toks_.size() >= 2 ? toks_.size() - 2 : 0];
    return {Diagnostic::Severity::Error, "", last.line, last.column, last.length};
  }

  void error_at(const Token& t, std::string message) {
    Diagnostic d = span_of(t);
    d.message = std::move(message);
    diags_.push_back(std::move(d));
    if (diags_.size() >= cap_) throw Abort{};
  }
  [[noreturn]] void fail_at(const Token& t, std::string message) {
    error_at(t, std::move(message));
    throw SyntaxFail{};
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }

  const Token& expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail_at(peek(), "expected '" + std::string(s) + "', found " + describe(peek()));
    return take();
  }
  const Token& expect_word(std::string_view s) {
    if (!at_word(s)) fail_at(peek(), "expected '" + std::string(s) + "', found " + describe(peek()));
    return take();
  }
  const Token& expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) fail_at(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    return take();
  }

  // Skip to the end of the current statement (past ';'), stopping at '}'.
  void skip_statement() {
    while (peek().kind != Tok::End && !at_symbol(";") && !at_symbol("}")) take();
    if (at_symbol(";")) take();
  }

  // Skip past the closing brace of the current declaration, or to the next
  // declaration keyword.
  void skip_declaration() {
    int depth = 0;
    while (peek().kind != Tok::End) {
      if (depth == 0 && is_declaration_keyword(peek()) && pos_ > decl_start_) return;
      const Token& t = take();
      if (t.kind == Tok::Symbol && t.text == "{") ++depth;
      if (t.kind == Tok::Symbol && t.text == "}") {
        if (--depth <= 0) return;
      }
    }
  }

  static bool is_declaration_keyword(const Token& t) {
    return t.kind == Tok::Ident &&
           (t.text == "algebra" || t.text == "matched" || t.text == "defmap" || t.text == "morphism");
  }

  bool is_variable_name(const std::string& s) const {
    return s == "d" || s == "l" || s == "m" || params_.count(s) > 0;
  }

  // --- polynomials -----------------------------------------------------------

  MultiPoly parse_poly() {
    MultiPoly sum;
    bool negate = false;
    if (at_symbol("-") || at_symbol("+")) negate = take().text == "-";
    sum = parse_product();
    if (negate) sum = -sum;
    while (at_symbol("+") || at_symbol("-")) {
      const bool minus = take().text == "-";
      MultiPoly p = parse_product();
      if (minus) {
        sum -= p;
      } else {
        sum += p;
      }
    }
    return sum;
  }

  MultiPoly parse_product() {
    MultiPoly acc = parse_power();
    while (at_symbol("*") || at_symbol("/")) {
      const bool divide = take().text == "/";
      const Token& at = peek();
      MultiPoly rhs = parse_power();
      if (!divide) {
        acc *= rhs;
      } else if (!rhs.is_constant() || rhs.is_zero()) {
        fail_at(at, "division is only allowed by a nonzero constant");
      } else {
        acc = acc.scaled(1 / rhs.constant_term());
      }
    }
    return acc;
  }

  MultiPoly parse_power() {
    MultiPoly base = parse_factor();
    if (at_symbol("^")) {
      take();
      if (peek().kind != Tok::Number) fail_at(peek(), "expected an integer exponent, found " + describe(peek()));
      const Token& e = take();
      if (e.text.size() > 3) fail_at(e, "exponent too large");
      base = pow(base, static_cast<std::uint32_t>(std::stoul(e.text)));
    }
    return base;
  }

  MultiPoly parse_factor() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      take();
      return MultiPoly(Rational(mpz_class(t.text)));
    }
    if (t.kind == Tok::Ident) {
      take();
      if (t.text == "d") return MultiPoly::var(VarId::D());
      if (t.text == "l") return MultiPoly::var(VarId::L1());
      if (t.text == "m") return MultiPoly::var(VarId::L2());
      if (auto it = params_.find(t.text); it != params_.end()) return MultiPoly(it->second);
      fail_at(t, "unbound parameter '" + t.text + "'");
    }
    if (at_symbol("(")) {
      take();
      MultiPoly inner = parse_poly();
      expect_symbol(")");
      return inner;
    }
    if (at_symbol("-")) {
      take();
      return -parse_power();
    }
    fail_at(t, "expected a polynomial, found " + describe(t));
  }

  // --- terms ------------------------------------------------------------------

  // `term (("+"|"-") term)*`, a term being `[poly] NAME`; or the literal 0.
  Element parse_terms(const TermContext& ctx) {
    Element value(ctx.out->rank());
    if (peek().kind == Tok::Number && peek().text == "0" && peek(1).kind == Tok::Symbol &&
        peek(1).text == ";") {
      take();
      return value;
    }
    bool minus = false;
    if (at_symbol("-") || at_symbol("+")) minus = take().text == "-";
    for (;;) {
      const Token& start = peek();
      auto [coeff, gen] = parse_term(ctx);
      if (minus) coeff = -coeff;
      if (coeff.involves(VarId::L2())) fail_at(start, "the variable m may not appear here");
      if (!ctx.allow_l && coeff.involves(VarId::L1())) {
        fail_at(start, "map entries must be polynomials in d only");
      }
      value[gen] += coeff;
      if (at_symbol("+") || at_symbol("-")) {
        minus = take().text == "-";
        continue;
      }
      return value;
    }
  }

  std::pair<MultiPoly, std::size_t> parse_term(const TermContext& ctx) {
    MultiPoly coeff(1);
    const Token& t = peek();
    const bool bare_generator = t.kind == Tok::Ident && !is_variable_name(t.text) &&
                                !(peek(1).kind == Tok::Symbol &&
                                  (peek(1).text == "*" || peek(1).text == "/" || peek(1).text == "^"));
    if (!bare_generator) coeff = parse_product();
    const Token& g = expect_ident("a generator name");
    return {coeff, generator_index(*ctx.out, g, ctx.out_desc)};
  }

  std::size_t generator_index(const ConformalAlgebra& a, const Token& t, const std::string& desc) {
    const auto& names = a.basis_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == t.text) return i;
    }
    fail_at(t, "unknown generator '" + t.text + "' of " + desc);
  }

  // --- references ---------------------------------------------------------

  std::string kind_of(const Document& doc, const std::string& name) const {
    if (doc.find_algebra(name)) return "an algebra";
    if (doc.find_matched(name)) return "a matched pair";
    if (doc.find_defmap(name)) return "a deformation map";
    if (doc.find_morphism(name)) return "a morphism";
    return {};
  }

  const AlgebraDecl& algebra_ref(const Document& doc, const Token& t) {
    if (const auto* a = doc.find_algebra(t.text)) return *a;
    const auto kind = kind_of(doc, t.text);
    if (!kind.empty()) fail_at(t, "'" + t.text + "' is " + kind + ", expected an algebra");
    fail_at(t, "unknown algebra '" + t.text + "'");
  }

  const MatchedDecl& pair_ref(const Document& doc, const Token& t) {
    if (const auto* p = doc.find_matched(t.text)) return *p;
    const auto kind = kind_of(doc, t.text);
    if (!kind.empty()) fail_at(t, "'" + t.text + "' is " + kind + ", expected a matched pair");
    fail_at(t, "unknown matched pair '" + t.text + "'");
  }

  // --- declarations ---------------------------------------------------------

  AlgebraKind parse_kind() {
    const Token& t = expect_ident("'lie' or 'assoc'");
    if (t.text == "lie") return AlgebraKind::Lie;
    if (t.text == "assoc") return AlgebraKind::Associative;
    fail_at(t, "expected 'lie' or 'assoc', found " + describe(t));
  }

  template <typename T>
  void check_unique(const Document& doc, const Token& name) {
    if (find_decl<T>(doc, name.text)) fail_at(name, "duplicate declaration of '" + name.text + "'");
  }

  void parse_declaration(Document& doc) {
    decl_start_ = pos_;
    const Token& kw = peek();
    if (at_word("algebra")) return parse_algebra(doc);
    if (at_word("matched")) return parse_matched(doc);
    if (at_word("defmap")) return parse_defmap(doc);
    if (at_word("morphism")) return parse_morphism(doc);
    fail_at(kw, "expected a declaration ('algebra', 'matched', 'defmap' or 'morphism'), found " + describe(kw));
  }

  void parse_algebra(Document& doc) {
    take();
    const Token& name = expect_ident("an algebra name");
    check_unique<AlgebraDecl>(doc, name);
    expect_symbol(":");
    const AlgebraKind kind = parse_kind();
    expect_symbol("{");
    expect_word("gens");
    std::vector<std::string> gens;
    bool failed = false;
    for (;;) {
      const Token& g = expect_ident("a generator name");
      if (is_variable_name(g.text)) {
        error_at(g, "generator name '" + g.text + "' shadows a variable or parameter");
        failed = true;
      } else if (std::find(gens.begin(), gens.end(), g.text) != gens.end()) {
        error_at(g, "duplicate generator '" + g.text + "'");
        failed = true;
      }
      gens.push_back(g.text);
      if (!at_symbol(",")) break;
      take();
    }
    expect_symbol(";");
    const std::size_t n = gens.size();
    // Placeholder algebra so terms can resolve generator names.
    const ConformalAlgebra names_only = ConformalAlgebra::abelian(kind, unique_names(gens));
    StructureTable table(n, n, n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    const TermContext ctx{&names_only, "algebra '" + name.text + "'", true};
    while (!at_symbol("}")) {
      if (peek().kind == Tok::End) fail_at(peek(), "expected '}' before end of input");
      if (is_declaration_keyword(peek())) fail_at(peek(), "expected '}' before " + describe(peek()));
      try {
        const Token& open = expect_symbol("[");
        const std::size_t i = generator_index(names_only, expect_ident("a generator name"), ctx.out_desc);
        expect_symbol(",");
        const std::size_t j = generator_index(names_only, expect_ident("a generator name"), ctx.out_desc);
        expect_symbol("]");
        expect_symbol("=");
        Element value = parse_terms(ctx);
        expect_symbol(";");
        if (!seen.insert({i, j}).second) {
          error_at(open, "duplicate bracket [" + gens[i] + "," + gens[j] + "]");
          failed = true;
          continue;
        }
        table.set(i, j, std::move(value));
      } catch (const SyntaxFail&) {
        failed = true;
        skip_statement();
      }
    }
    take();
    if (failed) return;
    try {
      doc.declarations.push_back(
          AlgebraDecl{name.text, std::make_shared<const ConformalAlgebra>(kind, gens, std::move(table))});
    } catch (const Error& e) {
      error_at(name, e.what());
    }
  }

  static std::vector<std::string> unique_names(const std::vector<std::string>& gens) {
    // Keeps the placeholder constructible when names repeat (already reported).
    std::vector<std::string> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      out.push_back(std::find(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(i), gens[i]) ==
                            gens.begin() + static_cast<std::ptrdiff_t>(i)
                        ? gens[i]
                        : gens[i] + "#" + std::to_string(i));
    }
    return out;
  }

  void parse_matched(Document& doc) {
    take();
    const Token& name = expect_ident("a matched pair name");
    check_unique<MatchedDecl>(doc, name);
    expect_symbol(":");
    const Token& kind_tok = peek();
    const AlgebraKind kind = parse_kind();
    expect_symbol("{");
    expect_word("R");
    expect_symbol("=");
    const Token& r_tok = expect_ident("an algebra name");
    const AlgebraDecl& r = algebra_ref(doc, r_tok);
    expect_symbol(";");
    expect_word("Q");
    expect_symbol("=");
    const Token& q_tok = expect_ident("an algebra name");
    const AlgebraDecl& q = algebra_ref(doc, q_tok);
    expect_symbol(";");
    bool failed = false;
    if (r.algebra->kind() != kind) {
      error_at(r_tok, "'" + r_tok.text + "' is " + to_string(r.algebra->kind()) + ", the pair is " +
                          to_string(kind));
      failed = true;
    }
    if (q.algebra->kind() != kind) {
      error_at(q_tok, "'" + q_tok.text + "' is " + to_string(q.algebra->kind()) + ", the pair is " +
                          to_string(kind));
      failed = true;
    }
    const ConformalAlgebra& ra = *r.algebra;
    const ConformalAlgebra& qa = *q.algebra;
    const std::size_t nr = ra.rank();
    const std::size_t nq = qa.rank();
    for (const auto& g : qa.basis_names()) {
      const auto& rn = ra.basis_names();
      if (std::find(rn.begin(), rn.end(), g) != rn.end()) {
        error_at(q_tok, "generator '" + g + "' occurs in both R and Q");
        failed = true;
      }
    }
    StructureTable lhd(nq, nr, nq);
    StructureTable rhd(nq, nr, nr);
    StructureTable lharp(nr, nq, nr);
    StructureTable rharp(nr, nq, nq);
    std::set<std::pair<std::string, std::pair<std::size_t, std::size_t>>> seen;
    const std::string r_desc = "algebra '" + r_tok.text + "'";
    const std::string q_desc = "algebra '" + q_tok.text + "'";
    while (!at_symbol("}")) {
      if (peek().kind == Tok::End) fail_at(peek(), "expected '}' before end of input");
      if (is_declaration_keyword(peek())) fail_at(peek(), "expected '}' before " + describe(peek()));
      try {
        const Token& lhs = expect_ident("a generator name");
        const Token& op = peek();
        if (!(at_symbol("<|") || at_symbol("|>") || at_symbol("<~") || at_symbol("~>"))) {
          fail_at(op, "expected an action operator ('<|', '|>', '<~' or '~>'), found " + describe(op));
        }
        take();
        const Token& rhs = expect_ident("a generator name");
        expect_symbol("=");
        const bool q_first = op.text == "<|" || op.text == "|>";
        if (!q_first && kind == AlgebraKind::Lie) {
          fail_at(op, "'" + op.text + "' is only available in associative matched pairs");
        }
        const std::size_t i = generator_index(q_first ? qa : ra, lhs, q_first ? q_desc : r_desc);
        const std::size_t j = generator_index(q_first ? ra : qa, rhs, q_first ? r_desc : q_desc);
        const bool into_q = op.text == "<|" || op.text == "~>";
        Element value = parse_terms({into_q ? &qa : &ra, into_q ? q_desc : r_desc, true});
        expect_symbol(";");
        if (!seen.insert({op.text, {i, j}}).second) {
          error_at(lhs, "duplicate action entry " + lhs.text + " " + op.text + " " + rhs.text);
          failed = true;
          continue;
        }
        StructureTable& t = op.text == "<|" ? lhd : op.text == "|>" ? rhd : op.text == "<~" ? lharp : rharp;
        t.set(i, j, std::move(value));
      } catch (const SyntaxFail&) {
        failed = true;
        skip_statement();
      }
    }
    take();
    if (failed) return;
    try {
      MatchedPair mp{kind,
                     r.algebra,
                     q.algebra,
                     ModuleAction(ActionSide::Right, r.algebra, nq, std::move(lhd)),
                     ModuleAction(ActionSide::Left, q.algebra, nr, std::move(rhd)),
                     std::nullopt,
                     std::nullopt};
      if (kind == AlgebraKind::Associative) {
        mp.lharp = ModuleAction(ActionSide::Right, q.algebra, nr, std::move(lharp));
        mp.rharp = ModuleAction(ActionSide::Left, r.algebra, nq, std::move(rharp));
      }
      mp.validate();
      doc.declarations.push_back(MatchedDecl{name.text, r_tok.text, q_tok.text, std::move(mp)});
    } catch (const Error& e) {
      error_at(kind_tok, e.what());
    }
  }

  // Shared body of defmap and morphism: rows `X -> terms;`.
  bool parse_map_rows(const ConformalAlgebra& src, const std::string& src_desc,
                      const ConformalAlgebra& tgt, const std::string& tgt_desc, PolyMatrix& out) {
    bool failed = false;
    std::set<std::size_t> seen;
    while (!at_symbol("}")) {
      if (peek().kind == Tok::End) fail_at(peek(), "expected '}' before end of input");
      if (is_declaration_keyword(peek())) fail_at(peek(), "expected '}' before " + describe(peek()));
      try {
        const Token& g = expect_ident("a generator name");
        const std::size_t i = generator_index(src, g, src_desc);
        expect_symbol("->");
        Element value = parse_terms({&tgt, tgt_desc, false});
        expect_symbol(";");
        if (!seen.insert(i).second) {
          error_at(g, "duplicate image of '" + g.text + "'");
          failed = true;
          continue;
        }
        for (std::size_t k = 0; k < tgt.rank(); ++k) out.at(i, k) = value[k];
      } catch (const SyntaxFail&) {
        failed = true;
        skip_statement();
      }
    }
    take();
    return !failed;
  }

  void parse_defmap(Document& doc) {
    take();
    const Token& name = expect_ident("a deformation map name");
    check_unique<DefmapDecl>(doc, name);
    expect_word("on");
    const Token& p_tok = expect_ident("a matched pair name");
    const MatchedDecl& p = pair_ref(doc, p_tok);
    expect_symbol("{");
    PolyMatrix m(p.pair.q->rank(), p.pair.r->rank());
    if (!parse_map_rows(*p.pair.q, "algebra '" + p.q_name + "'", *p.pair.r, "algebra '" + p.r_name + "'", m)) {
      return;
    }
    doc.declarations.push_back(
        DefmapDecl{name.text, p_tok.text, p.pair.q, p.pair.r, DeformationMap{std::move(m)}});
  }

  void parse_morphism(Document& doc) {
    take();
    const Token& name = expect_ident("a morphism name");
    check_unique<MorphismDecl>(doc, name);
    expect_symbol(":");
    const Token& s_tok = expect_ident("an algebra name");
    const AlgebraDecl& s = algebra_ref(doc, s_tok);
    expect_symbol("->");
    const Token& t_tok = expect_ident("an algebra name");
    const AlgebraDecl& t = algebra_ref(doc, t_tok);
    if (s.algebra->kind() != t.algebra->kind()) {
      fail_at(t_tok, "morphism between a " + to_string(s.algebra->kind()) + " and a " +
                         to_string(t.algebra->kind()) + " algebra");
    }
    expect_symbol("{");
    PolyMatrix m(s.algebra->rank(), t.algebra->rank());
    if (!parse_map_rows(*s.algebra, "algebra '" + s_tok.text + "'", *t.algebra,
                        "algebra '" + t_tok.text + "'", m)) {
      return;
    }
    doc.declarations.push_back(
        MorphismDecl{name.text, s_tok.text, t_tok.text, Morphism{s.algebra, t.algebra, std::move(m)}});
  }

  std::vector<Token> toks_;
  const ParamMap& params_;
  std::size_t cap_;
  std::vector<Diagnostic> diags_;
  std::size_t pos_ = 0;
  std::size_t decl_start_ = 0;
};

}  // namespace

ParseResult parse_document(std::string_view text, const ParamMap& params, std::size_t max_diagnostics) {
  LexResult lexed = lex(text);
  Parser parser(std::move(lexed.tokens), params, std::max<std::size_t>(max_diagnostics, 1),
                std::move(lexed.errors));
  return parser.run();
}

// ---------------------------------------------------------------------------
// Serializer

namespace {

std::string render_terms(const Element& value, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < value.rank(); ++k) {
    if (value[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (value[k] == MultiPoly(1)) {
      out += names[k];
    } else {
      out += "(" + value[k].to_string() + ") " + names[k];
    }
  }
  return out;
}

std::string kind_word(AlgebraKind k) { return k == AlgebraKind::Lie ? "lie" : "assoc"; }

void write_action(std::ostringstream& out, const ModuleAction& act, const std::string& op,
                  const std::vector<std::string>& left_names, const std::vector<std::string>& right_names,
                  const std::vector<std::string>& out_names) {
  const auto& t = act.table();
  for (std::size_t i = 0; i < t.left_rank(); ++i) {
    for (std::size_t j = 0; j < t.right_rank(); ++j) {
      if (t.at(i, j).is_zero()) continue;
      out << "  " << left_names[i] << ' ' << op << ' ' << right_names[j] << " = "
          << render_terms(t.at(i, j), out_names) << ";\n";
    }
  }
}

void write_rows(std::ostringstream& out, const PolyMatrix& m, const std::vector<std::string>& src,
                const std::vector<std::string>& tgt) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Element row = m.row(i);
    if (row.is_zero()) continue;
    out << "  " << src[i] << " -> " << render_terms(row, tgt) << ";\n";
  }
}

}  // namespace

std::string serialize(const Declaration& decl) {
  std::ostringstream out;
  if (const auto* a = std::get_if<AlgebraDecl>(&decl)) {
    const ConformalAlgebra& alg = *a->algebra;
    const auto& names = alg.basis_names();
    out << "algebra " << a->name << " : " << kind_word(alg.kind()) << " {\n  gens ";
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
    out << ";\n";
    for (std::size_t i = 0; i < alg.rank(); ++i) {
      for (std::size_t j = 0; j < alg.rank(); ++j) {
        if (alg.product(i, j).is_zero()) continue;
        out << "  [" << names[i] << "," << names[j] << "] = " << render_terms(alg.product(i, j), names) << ";\n";
      }
    }
    out << "}\n";
  } else if (const auto* p = std::get_if<MatchedDecl>(&decl)) {
    const MatchedPair& mp = p->pair;
    const auto& rn = mp.r->basis_names();
    const auto& qn = mp.q->basis_names();
    out << "matched " << p->name << " : " << kind_word(mp.kind) << " {\n  R = " << p->r_name
        << ";\n  Q = " << p->q_name << ";\n";
    write_action(out, mp.lhd, "<|", qn, rn, qn);
    write_action(out, mp.rhd, "|>", qn, rn, rn);
    if (mp.lharp) write_action(out, *mp.lharp, "<~", rn, qn, rn);
    if (mp.rharp) write_action(out, *mp.rharp, "~>", rn, qn, qn);
    out << "}\n";
  } else if (const auto* f = std::get_if<DefmapDecl>(&decl)) {
    out << "defmap " << f->name << " on " << f->pair_name << " {\n";
    write_rows(out, f->map.matrix, f->q->basis_names(), f->r->basis_names());
    out << "}\n";
  } else {
    const auto& h = std::get<MorphismDecl>(decl);
    out << "morphism " << h.name << " : " << h.source_name << " -> " << h.target_name << " {\n";
    write_rows(out, h.morphism.matrix, h.morphism.source->basis_names(), h.morphism.target->basis_names());
    out << "}\n";
  }
  return out.str();
}

std::string serialize(const Document& doc) {
  std::ostringstream out;
  bool first = true;
  for (const auto& decl : doc.declarations) {
    if (!first) out << '\n';
    first = false;
    out << serialize(decl);
  }
  return out.str();
}

}  // namespace cfk

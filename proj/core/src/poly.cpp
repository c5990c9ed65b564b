#include "cfk/poly.hpp"

#include "cfk/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace cfk {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  bool ok = !s.empty();
  std::size_t i = (ok && s[0] == '-') ? 1 : 0;
  bool seen_slash = false;
  bool digits_before = false;
  bool digits_after = false;
  for (; ok && i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digits_after : digits_before) = true;
    } else if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else {
      ok = false;
    }
  }
  if (!ok || !digits_before || (seen_slash && !digits_after)) {
    throw ParseError("malformed rational '" + s + "'");
  }
  Rational q(s);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string VarId::name() const {
  switch (index_) {
    case 0:
      return "d";
    case 1:
      return "l";
    case 2:
      return "m";
    default:
      return "u" + std::to_string(unknown_index());
  }
}

std::uint32_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t ea = i < a.size() ? a[i] : 0;
    const std::uint32_t eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly MultiPoly::var(VarId v) {
  Monomial m(v.index() + 1, 0);
  m[v.index()] = 1;
  return monomial(std::move(m), 1);
}

MultiPoly MultiPoly::monomial(Monomial m, const Rational& c) {
  trim(m);
  MultiPoly p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::leading_coefficient() const {
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::uint32_t MultiPoly::degree(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) {
    if (v.index() < m.size()) d = std::max(d, m[v.index()]);
  }
  return d;
}

std::uint32_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : cfk::total_degree(terms_.begin()->first);
}

bool MultiPoly::involves(VarId v) const { return degree(v) > 0; }

bool MultiPoly::only_involves(std::initializer_list<VarId> allowed) const {
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                  [i](VarId v) { return v.index() == i; });
      if (!ok) return false;
    }
  }
  return true;
}

bool MultiPoly::has_unknowns() const { return variable_bound() > 3; }

std::uint32_t MultiPoly::variable_bound() const {
  std::uint32_t bound = 0;
  for (const auto& [m, c] : terms_) bound = std::max<std::uint32_t>(bound, m.size());
  return bound;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& q) {
  *this = *this * q;
  return *this;
}

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  MultiPoly r;
  if (p.is_zero() || q.is_zero()) return r;
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) r.add_term(multiply(mp, mq), cp * cq);
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  MultiPoly r = *this;
  for (auto& [m, coeff] : r.terms_) coeff *= c;
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += VarId::from_index(static_cast<std::uint32_t>(i)).name();
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    if (factors.empty()) {
      out += cfk::to_string(magnitude);
    } else if (magnitude == 1) {
      out += factors;
    } else {
      out += cfk::to_string(magnitude) + "*" + factors;
    }
  }
  return out;
}

MultiPoly arith(const MultiPoly& p, const MultiPoly& q, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return p + q;
    case ArithOp::Sub:
      return p - q;
    case ArithOp::Mul:
      return p * q;
  }
  return {};
}

MultiPoly pow(const MultiPoly& p, std::uint32_t e) {
  MultiPoly result(1);
  MultiPoly base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly substitute(const MultiPoly& p, VarId v, const MultiPoly& r) {
  const auto idx = v.index();
  std::vector<MultiPoly> powers{MultiPoly(1)};
  MultiPoly out;
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = idx < m.size() ? m[idx] : 0;
    Monomial rest = m;
    if (idx < rest.size()) rest[idx] = 0;
    while (powers.size() <= e) powers.push_back(powers.back() * r);
    out += MultiPoly::monomial(std::move(rest), c) * powers[e];
  }
  return out;
}

std::vector<MultiPoly> coefficient_list(const MultiPoly& p, VarId v) {
  std::vector<MultiPoly> coeffs(p.degree(v) + 1);
  const auto idx = v.index();
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = idx < m.size() ? m[idx] : 0;
    Monomial rest = m;
    if (idx < rest.size()) rest[idx] = 0;
    coeffs[e] += MultiPoly::monomial(std::move(rest), c);
  }
  return coeffs;
}

MultiPoly eval_at(const MultiPoly& p, VarId v, const Rational& c) {
  return substitute(p, v, MultiPoly(c));
}

std::vector<std::pair<Monomial, MultiPoly>> collect_by(const MultiPoly& p,
                                                       const std::vector<VarId>& vars) {
  std::map<Monomial, MultiPoly, GrlexGreater> groups;
  for (const auto& [m, c] : p.terms()) {
    Monomial key(vars.size(), 0);
    Monomial rest = m;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto idx = vars[k].index();
      if (idx < rest.size()) {
        key[k] = rest[idx];
        rest[idx] = 0;
      }
    }
    trim(key);
    groups[key] += MultiPoly::monomial(std::move(rest), c);
  }
  return {groups.begin(), groups.end()};
}

std::pair<MultiPoly, MultiPoly> divide_univariate(const MultiPoly& a, const MultiPoly& b,
                                                  VarId v) {
  if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (!a.only_involves({v}) || !b.only_involves({v})) {
    throw PreconditionError("divide_univariate: arguments must be univariate in " + v.name());
  }
  const auto db = b.degree(v);
  const Rational lead = b.leading_coefficient();
  MultiPoly q;
  MultiPoly r = a;
  const MultiPoly x = MultiPoly::var(v);
  while (!r.is_zero() && r.degree(v) >= db) {
    const auto shift = r.degree(v) - db;
    MultiPoly t = pow(x, shift).scaled(r.leading_coefficient() / lead);
    q += t;
    r -= t * b;
  }
  return {q, r};
}

// Recursive-descent parser for the normative text form.
namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc;
    bool negate = accept('-');
    if (!negate) accept('+');
    for (;;) {
      MultiPoly t = term();
      acc += negate ? -t : t;
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        MultiPoly den = factor();
        if (!den.is_constant() || den.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(1 / den.constant_term());
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    if (accept('-')) return -factor();
    MultiPoly base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = pow(base, static_cast<std::uint32_t>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MultiPoly(Rational(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "d") return MultiPoly::var(VarId::D());
      if (word == "l") return MultiPoly::var(VarId::L1());
      if (word == "m") return MultiPoly::var(VarId::L2());
      if (word.size() > 1 && word[0] == 'u' &&
          std::all_of(word.begin() + 1, word.end(),
                      [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        return MultiPoly::var(VarId::U(static_cast<std::uint32_t>(std::stoul(std::string(word.substr(1))))));
      }
      pos_ = start;
      fail("unknown variable '" + std::string(word) + "'");
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace cfk

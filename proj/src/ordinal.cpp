#include "cbcalc/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace cbcalc {

Ordinal Ordinal::finite(Int n) {
  if (n < 0) throw OrdinalError("finite ordinal from negative integer");
  Ordinal o;
  if (n > 0) o.terms_.push_back({Ordinal(), std::move(n)});
  return o;
}

Ordinal Ordinal::omega() { return omega_pow(finite(1)); }

Ordinal Ordinal::omega_pow(Ordinal exponent, Int coefficient) {
  if (coefficient < 0) throw OrdinalError("negative coefficient");
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back({std::move(exponent), std::move(coefficient)});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient < 1) throw OrdinalError("CNF coefficient must be >= 1");
    if (i > 0 && compare(terms[i - 1].exponent, terms[i].exponent) != Cmp::GT)
      throw OrdinalError("CNF exponents must be strictly decreasing");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::is_zero() const { return terms_.empty(); }

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

Int Ordinal::finite_value() const {
  if (is_zero()) return 0;
  if (!is_finite()) throw OrdinalError("ordinal is not finite");
  return terms_[0].coefficient;
}

const std::vector<OrdinalTerm>& Ordinal::terms() const { return terms_; }

Cmp compare(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    Cmp c = compare(ta[i].exponent, tb[i].exponent);
    if (c != Cmp::EQ) return c;
    if (ta[i].coefficient != tb[i].coefficient)
      return ta[i].coefficient < tb[i].coefficient ? Cmp::LT : Cmp::GT;
  }
  if (ta.size() == tb.size()) return Cmp::EQ;
  return ta.size() < tb.size() ? Cmp::LT : Cmp::GT;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == Cmp::EQ; }
bool operator!=(const Ordinal& a, const Ordinal& b) { return compare(a, b) != Cmp::EQ; }
bool operator<(const Ordinal& a, const Ordinal& b) { return compare(a, b) == Cmp::LT; }
bool operator<=(const Ordinal& a, const Ordinal& b) { return compare(a, b) != Cmp::GT; }
bool operator>(const Ordinal& a, const Ordinal& b) { return compare(a, b) == Cmp::GT; }
bool operator>=(const Ordinal& a, const Ordinal& b) { return compare(a, b) != Cmp::LT; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& db = b.terms().front().exponent;
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    Cmp c = compare(t.exponent, db);
    if (c == Cmp::GT) {
      out.push_back(t);
    } else {
      break; // remaining terms of a are absorbed or merged into b's head
    }
  }
  // Merge coefficient when a still carries a term with exponent deg(b).
  std::size_t kept = out.size();
  bool merged = kept < a.terms().size() &&
                compare(a.terms()[kept].exponent, db) == Cmp::EQ;
  auto it = b.terms().begin();
  if (merged) {
    out.push_back({db, a.terms()[kept].coefficient + it->coefficient});
    ++it;
  }
  out.insert(out.end(), it, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
  std::vector<OrdinalTerm> out;
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb) {
      out.push_back(*ia++);
    } else if (ia == ea) {
      out.push_back(*ib++);
    } else {
      switch (compare(ia->exponent, ib->exponent)) {
        case Cmp::GT: out.push_back(*ia++); break;
        case Cmp::LT: out.push_back(*ib++); break;
        case Cmp::EQ:
          out.push_back({ia->exponent, ia->coefficient + ib->coefficient});
          ++ia;
          ++ib;
          break;
      }
    }
  }
  return Ordinal::from_terms(std::move(out));
}

ReducedPair reduce(const Ordinal& a) {
  std::vector<OrdinalTerm> quot;
  Int rem = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent.is_zero()) {
      rem = t.coefficient; // always the last term
    } else if (t.exponent.is_finite()) {
      // w^g * n = w * w^(g-1) * n for finite g >= 1
      quot.push_back({Ordinal::finite(t.exponent.finite_value() - 1), t.coefficient});
    } else {
      quot.push_back(t); // 1 + g = g for infinite g
    }
  }
  return {Ordinal::from_terms(std::move(quot)), std::move(rem)};
}

Ordinal omega_left_multiple(const Ordinal& a) {
  const Ordinal one = Ordinal::finite(1);
  std::vector<OrdinalTerm> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms())
    out.push_back({add(one, t.exponent), t.coefficient});
  return Ordinal::from_terms(std::move(out));
}

Ordinal degree(const Ordinal& a) {
  if (a.is_zero()) throw DegreeOfZeroError();
  return a.terms().front().exponent;
}

namespace {

// An exponent prints without parentheses when it is a natural or a single
// coefficient-1 power term; anything else would be ambiguous after "^".
bool exponent_is_atomic(const Ordinal& e) {
  if (e.is_finite()) return true;
  return e.terms().size() == 1 && e.terms()[0].coefficient == 1;
}

void format_term(std::ostringstream& os, const OrdinalTerm& t, bool unicode) {
  const char* w = unicode ? "ω" : "w";
  if (t.exponent.is_zero()) {
    os << t.coefficient;
    return;
  }
  os << w;
  if (!(t.exponent.is_finite() && t.exponent.finite_value() == 1)) {
    os << '^';
    if (exponent_is_atomic(t.exponent)) {
      os << format(t.exponent, unicode);
    } else {
      os << '(' << format(t.exponent, unicode) << ')';
    }
  }
  if (t.coefficient != 1) os << '*' << t.coefficient;
}

} // namespace

std::string format(const Ordinal& a, bool unicode) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << " + ";
    format_term(os, t, unicode);
    first = false;
  }
  return os.str();
}

namespace {

struct OrdinalParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw OrdinalParseError(msg + " at offset " + std::to_string(at), at);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_omega() const {
    if (pos < text.size() && text[pos] == 'w') return true;
    // UTF-8 omega
    return text.substr(pos, 2) == "\xcf\x89";
  }

  void eat_omega() { pos += (text[pos] == 'w') ? 1 : 2; }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool consume(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  Int parse_nat() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a natural number", start);
    return Int(std::string(text.substr(start, pos - start)));
  }

  // nat, bare coefficient-free w-power, or parenthesized ordinal
  Ordinal parse_exponent() {
    skip_ws();
    if (consume('(')) {
      Ordinal inner = parse_sum();
      if (!consume(')')) fail("expected ')'", pos);
      return inner;
    }
    if (at_omega()) {
      eat_omega();
      Ordinal exp = Ordinal::finite(1);
      if (consume('^')) exp = parse_exponent();
      return Ordinal::omega_pow(std::move(exp));
    }
    return Ordinal::finite(parse_nat());
  }

  // "w" ['^' exp] ['*' nat]  |  nat
  OrdinalTerm parse_term() {
    skip_ws();
    std::size_t at = pos;
    if (at >= text.size()) fail("expected a term", at);
    if (at_omega()) {
      eat_omega();
      Ordinal exp = Ordinal::finite(1);
      if (consume('^')) exp = parse_exponent();
      Int coeff = 1;
      if (consume('*')) {
        std::size_t cpos = pos;
        coeff = parse_nat();
        if (coeff < 1) fail("coefficient must be >= 1", cpos);
      }
      return {std::move(exp), std::move(coeff)};
    }
    Int n = parse_nat();
    if (n < 1) fail("zero term is only allowed as the whole ordinal", at);
    return {Ordinal(), std::move(n)};
  }

  Ordinal parse_sum() {
    skip_ws();
    // Standalone zero.
    if (pos < text.size() && text[pos] == '0') {
      std::size_t save = pos;
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] == ')') return Ordinal();
      pos = save; // "0..." inside a sum: let parse_term reject it
    }
    std::vector<OrdinalTerm> terms;
    terms.push_back(parse_term());
    while (consume('+')) {
      skip_ws();
      std::size_t term_at = pos;
      terms.push_back(parse_term());
      std::size_t i = terms.size() - 1;
      if (compare(terms[i - 1].exponent, terms[i].exponent) != Cmp::GT)
        fail("exponents must be strictly decreasing", term_at);
    }
    return Ordinal::from_terms(std::move(terms));
  }

  Ordinal parse_all() {
    Ordinal o = parse_sum();
    skip_ws();
    if (pos != text.size()) fail("trailing input", pos);
    return o;
  }
};

} // namespace

Ordinal parse_ordinal(std::string_view text) {
  OrdinalParser p{text};
  return p.parse_all();
}

namespace {

void to_json_impl(std::ostringstream& os, const Ordinal& a) {
  os << '[';
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << ',';
    first = false;
    os << '[';
    to_json_impl(os, t.exponent);
    os << ',';
    if (t.coefficient <= Int(UINT64_MAX))
      os << t.coefficient;
    else
      os << '"' << t.coefficient << '"';
    os << ']';
  }
  os << ']';
}

} // namespace

std::string ordinal_to_json(const Ordinal& a) {
  std::ostringstream os;
  to_json_impl(os, a);
  return os.str();
}

namespace {

Ordinal from_json_impl(const nlohmann::json& j) {
  if (!j.is_array()) throw OrdinalParseError("ordinal JSON must be an array", 0);
  std::vector<OrdinalTerm> terms;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw OrdinalParseError("ordinal JSON terms are [exponent, coefficient] pairs", 0);
    Ordinal exp = from_json_impl(pair[0]);
    Int coeff;
    if (pair[1].is_number_unsigned())
      coeff = Int(pair[1].get<std::uint64_t>());
    else if (pair[1].is_number_integer())
      coeff = Int(pair[1].get<std::int64_t>());
    else if (pair[1].is_string())
      coeff = Int(pair[1].get<std::string>());
    else
      throw OrdinalParseError("coefficient must be a number or a decimal string", 0);
    terms.push_back({std::move(exp), std::move(coeff)});
  }
  try {
    return Ordinal::from_terms(std::move(terms));
  } catch (const OrdinalError& e) {
    throw OrdinalParseError(e.what(), 0);
  }
}

} // namespace

Ordinal ordinal_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw OrdinalParseError(e.what(), e.byte);
  }
  return from_json_impl(j);
}

} // namespace cbcalc

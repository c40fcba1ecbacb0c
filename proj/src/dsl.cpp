#include "cbcalc/dsl.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "cbcalc/catalog.hpp"

namespace cbcalc::dsl {

using grouprank::GroupDescriptor;
using grouprank::MetabelianFlags;
using grouprank::PolycyclicFactor;
using grouprank::PrimeQuotient;
using modlen::ModuleDescriptor;

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << line << ":" << column << ": " << message;
  return os.str();
}

namespace {

struct Token {
  enum class Kind { Ident, Integer, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, column = 1;
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, column = 1;
  std::vector<Token> tokens;

  [[noreturn]] void fail(const std::string& msg) {
    throw DslError({msg, line, column});
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src[pos] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++pos;
    }
  }

  void run() {
    while (pos < src.size()) {
      char c = src[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      Token t;
      t.line = line;
      t.column = column;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
                src[pos] == '\''))
          advance(1);
        t.kind = Token::Kind::Ident;
        t.text = std::string(src.substr(start, pos - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos + 1 < src.size() &&
                  std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
        std::size_t start = pos;
        advance(1);
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
          advance(1);
        t.kind = Token::Kind::Integer;
        t.text = std::string(src.substr(start, pos - start));
      } else if (std::string("()[]{},=^-").find(c) != std::string::npos) {
        t.kind = Token::Kind::Symbol;
        t.text = std::string(1, c);
        advance(1);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      tokens.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.line = line;
    end.column = column;
    tokens.push_back(std::move(end));
  }
};

struct Parser {
  std::vector<Token> tokens;
  std::size_t at = 0;

  explicit Parser(std::string_view text) {
    Lexer lex{text, 0, 1, 1, {}};
    lex.run();
    tokens = std::move(lex.tokens);
  }

  const Token& peek() const { return tokens[at]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw DslError({msg, t.line, t.column});
  }

  bool at_symbol(const std::string& s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }

  bool at_ident(const std::string& s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }

  Token take() { return tokens[at++]; }

  void expect_symbol(const std::string& s) {
    if (!at_symbol(s)) fail("expected '" + s + "'");
    ++at;
  }

  bool accept_symbol(const std::string& s) {
    if (at_symbol(s)) {
      ++at;
      return true;
    }
    return false;
  }

  std::string expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected an identifier");
    return take().text;
  }

  Int expect_int() {
    if (peek().kind != Token::Kind::Integer) fail("expected an integer");
    return Int(take().text);
  }

  int expect_small_int(const char* what, long long lo, long long hi = 1 << 20) {
    Int v = expect_int();
    if (v < lo || v > hi) fail(std::string(what) + " outside its allowed range");
    return static_cast<int>(v);
  }

  bool expect_bool() {
    std::string id = expect_ident();
    if (id == "true") return true;
    if (id == "false") return false;
    fail("expected 'true' or 'false'");
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) fail("trailing input");
  }

  // --- module expressions -------------------------------------------------

  ModuleDescriptor parse_module_expr() {
    std::string head = expect_ident();
    try {
      if (head == "critical") {
        expect_symbol("(");
        int d = expect_small_int("dimension", 0);
        expect_symbol(")");
        return ModuleDescriptor::critical(d);
      }
      if (head == "torsionfree") {
        expect_symbol("(");
        int dim = 0;
        Int rank = 1;
        bool have_dim = false, have_rank = false;
        do {
          std::string key = expect_ident();
          expect_symbol("=");
          if (key == "dim") {
            dim = expect_small_int("dim", 0);
            have_dim = true;
          } else if (key == "rank") {
            rank = expect_int();
            have_rank = true;
          } else {
            fail("unknown torsionfree parameter '" + key + "'");
          }
        } while (accept_symbol(","));
        expect_symbol(")");
        if (!have_dim || !have_rank) fail("torsionfree needs dim= and rank=");
        return ModuleDescriptor::torsion_free(dim, rank);
      }
      if (head == "finite") {
        expect_symbol("(");
        Int k = expect_int();
        expect_symbol(")");
        return ModuleDescriptor::finite(k);
      }
      if (head == "series" || head == "directsum") {
        expect_symbol("(");
        std::vector<ModuleDescriptor> children;
        do {
          children.push_back(parse_module_expr());
        } while (accept_symbol(","));
        expect_symbol(")");
        return head == "series" ? ModuleDescriptor::series(std::move(children))
                                : ModuleDescriptor::direct_sum(std::move(children));
      }
      if (head == "ext") {
        expect_symbol("(");
        std::optional<ModuleDescriptor> sub, quot;
        do {
          std::string key = expect_ident();
          expect_symbol("=");
          if (key == "sub")
            sub = parse_module_expr();
          else if (key == "quot")
            quot = parse_module_expr();
          else
            fail("unknown ext parameter '" + key + "'");
        } while (accept_symbol(","));
        expect_symbol(")");
        if (!sub || !quot) fail("ext needs sub= and quot=");
        return ModuleDescriptor::extension(std::move(*sub), std::move(*quot));
      }
    } catch (const modlen::ModLenError& e) {
      fail(e.what());
    }
    fail("unknown module constructor '" + head + "'");
  }

  // --- group expressions --------------------------------------------------

  PolycyclicFactor parse_factor() {
    if (at_ident("Z")) {
      ++at;
      if (accept_symbol("^")) return PolycyclicFactor::free_abelian(expect_small_int("rank", 1));
      return PolycyclicFactor::infinite_cyclic();
    }
    if (at_ident("finite")) {
      ++at;
      return PolycyclicFactor::finite();
    }
    fail("expected a factor: Z, Z^k or finite");
  }

  GroupDescriptor parse_catalog_name(const std::string& head) {
    expect_symbol("(");
    std::map<std::string, Int> params;
    if (head == "Gn") {
      params["d"] = expect_int();
      expect_symbol(",");
      params["n"] = expect_int();
    } else {
      Int d = expect_int();
      params[head == "Z" ? "k" : "d"] = d;
    }
    expect_symbol(")");
    try {
      return catalog::get(head, params).descriptor;
    } catch (const catalog::CatalogError& e) {
      fail(e.what());
    }
  }

  GroupDescriptor parse_group_expr() {
    if (at_ident("Z")) {
      // bare Z or Z^k
      ++at;
      if (accept_symbol("^"))
        return GroupDescriptor::free_abelian(expect_small_int("rank", 1));
      if (at_symbol("(")) {
        --at;
        return parse_catalog_name(expect_ident());
      }
      return GroupDescriptor::free_abelian(1);
    }
    std::string head = expect_ident();
    try {
      if (head == "Heisenberg") return GroupDescriptor::nilpotent_of_hirsch(3);
      if (head == "H" || head == "Gamma" || head == "GammaPrime" || head == "Lambda" ||
          head == "LambdaPrime" || head == "FM" || head == "Gn")
        return parse_catalog_name(head);
      if (head == "nilpotent") {
        expect_symbol("(");
        std::string key = expect_ident();
        expect_symbol("=");
        if (key != "h") fail("nilpotent takes h=");
        int h = expect_small_int("h", 0);
        expect_symbol(")");
        return GroupDescriptor::nilpotent_of_hirsch(h);
      }
      if (head == "polycyclic") {
        expect_symbol("(");
        std::vector<PolycyclicFactor> factors;
        bool supersolvable = false, nilpotent = false;
        std::string key = expect_ident();
        expect_symbol("=");
        if (key != "factors") fail("polycyclic starts with factors=[...]");
        expect_symbol("[");
        do {
          factors.push_back(parse_factor());
        } while (accept_symbol(","));
        expect_symbol("]");
        while (accept_symbol(",")) {
          std::string flag = expect_ident();
          if (flag == "supersolvable")
            supersolvable = true;
          else if (flag == "nilpotent")
            nilpotent = true;
          else
            fail("unknown polycyclic flag '" + flag + "'");
        }
        expect_symbol(")");
        return GroupDescriptor::polycyclic(std::move(factors), supersolvable, nilpotent);
      }
      if (head == "wreath") {
        expect_symbol("(");
        std::string key = expect_ident();
        expect_symbol("=");
        if (key != "base") fail("wreath takes base=");
        int base_rank = -1;
        Int modulus = 0;
        if (at_ident("Z")) {
          ++at;
          base_rank = accept_symbol("^") ? expect_small_int("rank", 1) : 1;
        } else if (at_ident("C")) {
          ++at;
          expect_symbol("(");
          modulus = expect_int();
          expect_symbol(")");
        } else {
          fail("wreath base must be Z^k or C(m)");
        }
        expect_symbol(",");
        key = expect_ident();
        expect_symbol("=");
        if (key != "d") fail("wreath takes d=");
        int d = expect_small_int("d", 0);
        expect_symbol(")");
        return base_rank > 0 ? GroupDescriptor::wreath_free_abelian(base_rank, d)
                             : GroupDescriptor::wreath_cyclic(modulus, d);
      }
      if (head == "freemetabelian") {
        expect_symbol("(");
        int d = expect_small_int("d", 2);
        expect_symbol(")");
        return GroupDescriptor::free_metabelian(d);
      }
      if (head == "metabelian") {
        expect_symbol("(");
        std::optional<ModuleDescriptor> module;
        MetabelianFlags flags;
        do {
          std::string key = expect_ident();
          if (key == "module") {
            expect_symbol("=");
            module = parse_module_expr();
          } else if (key == "qrank") {
            expect_symbol("=");
            flags.q_rank = expect_small_int("qrank", 0);
          } else if (key == "generators") {
            expect_symbol("=");
            flags.generators = expect_small_int("generators", 1);
          } else if (key == "primequotient") {
            expect_symbol("=");
            expect_symbol("(");
            PrimeQuotient pq;
            pq.coheight = expect_small_int("coheight", 0);
            expect_symbol(",");
            pq.rank = expect_int();
            expect_symbol(")");
            flags.prime_quotient = pq;
          } else if (key == "qtorsionfree") {
            flags.q_torsion_free = true;
          } else if (key == "split") {
            flags.split = true;
          } else if (key == "faithful") {
            flags.faithful = true;
          } else if (key == "centralizer") {
            flags.module_contains_centralizer = true;
          } else {
            fail("unknown metabelian parameter '" + key + "'");
          }
        } while (accept_symbol(","));
        expect_symbol(")");
        if (!module) fail("metabelian needs module=");
        return GroupDescriptor::metabelian_ext(std::move(*module), std::move(flags));
      }
      if (head == "virtually") {
        expect_symbol("(");
        std::optional<GroupDescriptor> inner;
        Int index = 1;
        std::optional<int> ideal_dim;
        do {
          std::string key = expect_ident();
          expect_symbol("=");
          if (key == "inner")
            inner = parse_group_expr();
          else if (key == "index")
            index = expect_int();
          else if (key == "idealdim")
            ideal_dim = expect_small_int("idealdim", 1);
          else
            fail("unknown virtually parameter '" + key + "'");
        } while (accept_symbol(","));
        expect_symbol(")");
        if (!inner) fail("virtually needs inner=");
        return GroupDescriptor::virtually_metabelian(std::move(*inner), index, ideal_dim);
      }
      if (head == "wreathperm") {
        expect_symbol("(");
        grouprank::WreathPermutationalFlags f;
        do {
          std::string key = expect_ident();
          expect_symbol("=");
          bool val = expect_bool();
          if (key == "base_nontrivial")
            f.base_nontrivial = val;
          else if (key == "diag_infinite")
            f.diag_orbits_infinite = val;
          else if (key == "fp")
            f.finitely_presented = val;
          else
            fail("unknown wreathperm parameter '" + key + "'");
        } while (accept_symbol(","));
        expect_symbol(")");
        return GroupDescriptor::wreath_permutational(f);
      }
    } catch (const grouprank::GroupRankError& e) {
      fail(e.what());
    } catch (const modlen::ModLenError& e) {
      fail(e.what());
    }
    fail("unknown group constructor '" + head + "'");
  }

  // --- BS modules -----------------------------------------------------------

  sigma::BSModule parse_bs_expr() {
    std::string head = expect_ident();
    try {
      if (head == "classical") {
        Int modulus = 0;
        if (accept_symbol("(")) {
          std::string key = expect_ident();
          expect_symbol("=");
          if (key != "mod") fail("classical takes mod=");
          modulus = expect_int();
          expect_symbol(")");
        }
        return sigma::BSModule::classical(modulus);
      }
      if (head == "tensor") {
        expect_symbol("(");
        std::vector<sigma::BSModule> children;
        do {
          children.push_back(parse_bs_expr());
        } while (accept_symbol(","));
        expect_symbol(")");
        return sigma::BSModule::tensor(std::move(children));
      }
      if (head == "A") {
        expect_symbol("(");
        int d = expect_small_int("d", 1);
        Int modulus = 0;
        if (accept_symbol(",")) {
          std::string key = expect_ident();
          expect_symbol("=");
          if (key != "mod") fail("A takes mod=");
          modulus = expect_int();
        }
        expect_symbol(")");
        return sigma::BSModule::tensor_power(d, modulus);
      }
      if (head == "laurentline")
        return sigma::BSModule::explicit_fan(1, {{Int(1)}, {Int(-1)}});
      if (head == "fan") {
        expect_symbol("(");
        std::string key = expect_ident();
        expect_symbol("=");
        if (key != "qrank") fail("fan starts with qrank=");
        int qrank = expect_small_int("qrank", 1);
        expect_symbol(",");
        key = expect_ident();
        expect_symbol("=");
        if (key != "rays") fail("fan takes rays=[...]");
        expect_symbol("[");
        std::vector<std::vector<Int>> rays;
        do {
          expect_symbol("(");
          std::vector<Int> ray;
          do {
            ray.push_back(expect_int());
          } while (accept_symbol(","));
          expect_symbol(")");
          rays.push_back(std::move(ray));
        } while (accept_symbol(","));
        expect_symbol("]");
        expect_symbol(")");
        return sigma::BSModule::explicit_fan(qrank, std::move(rays));
      }
    } catch (const sigma::SigmaError& e) {
      fail(e.what());
    }
    fail("unknown module '" + head + "'");
  }
};

} // namespace

DescriptorDocument parse_document(std::string_view text) {
  Parser p(text);
  DescriptorDocument doc;
  doc.source = std::string(text);
  std::string head = p.expect_ident();
  if (head == "group") {
    doc.kind = DescriptorDocument::Kind::Group;
    doc.group = p.parse_group_expr();
  } else if (head == "module") {
    doc.kind = DescriptorDocument::Kind::Module;
    doc.module = p.parse_module_expr();
  } else {
    p.fail("document must start with 'group' or 'module'");
  }
  p.expect_end();
  return doc;
}

grouprank::GroupDescriptor parse_group(std::string_view text) {
  Parser p(text);
  GroupDescriptor g = p.parse_group_expr();
  p.expect_end();
  return g;
}

modlen::ModuleDescriptor parse_module(std::string_view text) {
  Parser p(text);
  ModuleDescriptor m = p.parse_module_expr();
  p.expect_end();
  return m;
}

std::string print_document(const DescriptorDocument& doc) {
  if (doc.kind == DescriptorDocument::Kind::Group)
    return "group " + grouprank::to_dsl(*doc.group);
  return "module " + modlen::to_dsl(*doc.module);
}

sigma::BSModule parse_bs_module(std::string_view text) {
  Parser p(text);
  sigma::BSModule m = p.parse_bs_expr();
  p.expect_end();
  return m;
}

std::string OrdinalEvalResult::str(bool unicode) const {
  switch (kind) {
    case Kind::Value: return format(value, unicode);
    case Kind::ReducedPair: {
      std::ostringstream os;
      os << "(" << format(pair.quotient, unicode) << ", " << pair.remainder << ")";
      return os.str();
    }
    case Kind::Comparison:
      return cmp == Cmp::LT ? "LT" : cmp == Cmp::GT ? "GT" : "EQ";
  }
  return "";
}

namespace {

// ordinal expression parser: natural-sum level over ordinary-sum level over
// atoms (literals, functions, parens)
struct OrdinalExpr {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw DslError({msg, 1, static_cast<int>(pos) + 1});
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_natural_sum() {
    skip_ws();
    if (text.substr(pos, 3) == "(+)") return true;
    return text.substr(pos, 3) == "\xe2\x8a\x95"; // circled plus
  }

  void eat_natural_sum() { pos += 3; }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_ident(const char* s) {
    skip_ws();
    std::string_view rest = text.substr(pos);
    std::size_t n = std::string_view(s).size();
    return rest.substr(0, n) == s &&
           (rest.size() == n || !std::isalnum(static_cast<unsigned char>(rest[n])));
  }

  Ordinal parse_atom() {
    skip_ws();
    if (accept('(')) {
      Ordinal inner = parse_natural_level();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (peek_ident("deg")) {
      pos += 3;
      skip_ws();
      if (!accept('(')) fail("deg takes parentheses");
      Ordinal inner = parse_natural_level();
      if (!accept(')')) fail("expected ')'");
      try {
        return degree(inner);
      } catch (const OrdinalError& e) {
        fail(e.what());
      }
    }
    // a single ordinal term: w[^exp][*nat] or nat
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '(' || c == ')' ||
          c == ',' || text.substr(pos, 3) == "\xe2\x8a\x95")
        break;
      if (c == '^') {
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
          int depth = 0;
          while (pos < text.size()) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')') {
              --depth;
              ++pos;
              if (depth == 0) break;
              continue;
            }
            ++pos;
          }
          continue;
        }
        continue;
      }
      ++pos;
    }
    if (pos == start) fail("expected an ordinal term");
    try {
      return parse_ordinal(text.substr(start, pos - start));
    } catch (const OrdinalParseError& e) {
      throw DslError({e.what(), 1, static_cast<int>(start + e.position) + 1});
    }
  }

  Ordinal parse_sum_level() {
    Ordinal acc = parse_atom();
    while (true) {
      skip_ws();
      if (at_natural_sum()) break;
      if (!accept('+')) break;
      acc = add(acc, parse_atom());
    }
    return acc;
  }

  Ordinal parse_natural_level() {
    Ordinal acc = parse_sum_level();
    while (at_natural_sum()) {
      eat_natural_sum();
      acc = natural_sum(acc, parse_sum_level());
    }
    return acc;
  }

  OrdinalEvalResult run() {
    skip_ws();
    OrdinalEvalResult out;
    if (peek_ident("reduce")) {
      pos += 6;
      skip_ws();
      if (!accept('(')) fail("reduce takes parentheses");
      Ordinal inner = parse_natural_level();
      if (!accept(')')) fail("expected ')'");
      skip_ws();
      if (pos != text.size()) fail("trailing input");
      out.kind = OrdinalEvalResult::Kind::ReducedPair;
      out.pair = reduce(inner);
      return out;
    }
    if (peek_ident("cmp")) {
      pos += 3;
      skip_ws();
      if (!accept('(')) fail("cmp takes parentheses");
      Ordinal a = parse_natural_level();
      if (!accept(',')) fail("cmp takes two arguments");
      Ordinal b = parse_natural_level();
      if (!accept(')')) fail("expected ')'");
      skip_ws();
      if (pos != text.size()) fail("trailing input");
      out.kind = OrdinalEvalResult::Kind::Comparison;
      out.cmp = compare(a, b);
      return out;
    }
    out.kind = OrdinalEvalResult::Kind::Value;
    out.value = parse_natural_level();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return out;
  }
};

} // namespace

OrdinalEvalResult eval_ordinal_expr(std::string_view text) {
  OrdinalExpr e{text};
  return e.run();
}

} // namespace cbcalc::dsl

#include "cbcalc/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace cbcalc::laurent {

Poly Poly::constant(int arity, Int c) {
  Poly p(arity);
  p.add_term(Exps(arity, 0), std::move(c));
  return p;
}

Poly Poly::variable(int arity, int var) {
  Exps e(arity, 0);
  e[var] = 1;
  return monomial(arity, std::move(e), 1);
}

Poly Poly::monomial(int arity, Exps exps, Int c) {
  Poly p(arity);
  p.add_term(std::move(exps), std::move(c));
  return p;
}

Int Poly::coefficient(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == Exps(arity_, 0);
}

void Poly::add_term(Exps exps, Int c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(exps), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.arity_ != b.arity_) throw ArityError();
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (a.arity_ != b.arity_) throw ArityError();
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.arity_ != b.arity_) throw ArityError();
  Poly out(a.arity_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exps e(a.arity_);
      for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  return out;
}

Poly Poly::operator-() const {
  Poly out(arity_);
  for (const auto& [e, c] : terms_) out.add_term(e, -c);
  return out;
}

int Poly::min_degree(int var) const {
  int best = -1;
  for (const auto& [e, c] : terms_)
    if (best < 0 || e[var] < best) best = e[var];
  return best;
}

int Poly::max_degree(int var) const {
  int best = -1;
  for (const auto& [e, c] : terms_)
    if (e[var] > best) best = e[var];
  return best;
}

Poly Poly::divide_var(int var, int k) const {
  Poly out(arity_);
  for (const auto& [e, c] : terms_) {
    Exps ne = e;
    ne[var] -= k;
    out.add_term(std::move(ne), c);
  }
  return out;
}

std::optional<Poly> Poly::divide_one_plus_var(int var) const {
  if (is_zero()) return Poly(arity_);
  // Write P = sum_k p_k u^k (p_k free of u_var); then Q = sum q_k u^k with
  // q_0 = p_0, q_k = p_k - q_{k-1}, and divisibility iff q_D cancels p_D.
  int top = max_degree(var);
  std::vector<Poly> p(top + 1, Poly(arity_));
  for (const auto& [e, c] : terms_) {
    Exps ne = e;
    int k = ne[var];
    ne[var] = 0;
    p[k].add_term(std::move(ne), c);
  }
  std::vector<Poly> q;
  Poly carry(arity_);
  for (int k = 0; k < top; ++k) {
    Poly qk = p[k] - carry;
    carry = qk;
    q.push_back(std::move(qk));
  }
  if (!(carry == p[top])) return std::nullopt;
  Poly out(arity_);
  for (int k = 0; k < top; ++k)
    for (const auto& [e, c] : q[k].terms()) {
      Exps ne = e;
      ne[var] = k;
      out.add_term(std::move(ne), c);
    }
  return out;
}

int Poly::one_plus_var_multiplicity(int var) const {
  int mult = 0;
  Poly cur = *this;
  while (!cur.is_zero()) {
    auto next = cur.divide_one_plus_var(var);
    if (!next) break;
    cur = std::move(*next);
    ++mult;
  }
  return mult;
}

Element::Element(int arity) : num_(arity), den_u_(arity, 0), den_v_(arity, 0) {}

Element Element::from_poly(Poly p) {
  Element e(p.arity());
  e.num_ = std::move(p);
  e.normalize();
  return e;
}

Element Element::integer(int arity, Int c) {
  return from_poly(Poly::constant(arity, std::move(c)));
}

Element Element::variable(int arity, int var) {
  return from_poly(Poly::variable(arity, var));
}

Element Element::one_plus_var(int arity, int var) {
  Poly p = Poly::variable(arity, var) + Poly::constant(arity, 1);
  return from_poly(std::move(p));
}

Element Element::x_var(int arity, int var) {
  return -variable(arity, var);
}

Element Element::monomial(int arity, const std::vector<int>& u_exps,
                          const std::vector<int>& v_exps, Int c) {
  Element e(arity);
  Exps num_exps(arity, 0);
  Poly onepv = Poly::constant(arity, 1);
  for (int i = 0; i < arity; ++i) {
    if (u_exps[i] >= 0)
      num_exps[i] = u_exps[i];
    else
      e.den_u_[i] = -u_exps[i];
    if (v_exps[i] >= 0) {
      Poly f = Poly::variable(arity, i) + Poly::constant(arity, 1);
      for (int k = 0; k < v_exps[i]; ++k) onepv = onepv * f;
    } else {
      e.den_v_[i] = -v_exps[i];
    }
  }
  e.num_ = Poly::monomial(arity, std::move(num_exps), std::move(c)) * onepv;
  e.normalize();
  return e;
}

void Element::normalize() {
  const int d = arity();
  if (num_.is_zero()) {
    den_u_.assign(d, 0);
    den_v_.assign(d, 0);
    return;
  }
  for (int i = 0; i < d; ++i) {
    if (den_u_[i] > 0) {
      int k = std::min(den_u_[i], num_.min_degree(i));
      if (k > 0) {
        num_ = num_.divide_var(i, k);
        den_u_[i] -= k;
      }
    }
    while (den_v_[i] > 0) {
      auto q = num_.divide_one_plus_var(i);
      if (!q) break;
      num_ = std::move(*q);
      --den_v_[i];
    }
  }
}

bool Element::is_one() const {
  return num_ == Poly::constant(arity(), 1) &&
         std::all_of(den_u_.begin(), den_u_.end(), [](int k) { return k == 0; }) &&
         std::all_of(den_v_.begin(), den_v_.end(), [](int k) { return k == 0; });
}

namespace {

// numerator scaled so both operands sit over max(den_a, den_b)
Poly lift_num(const Element& e, const std::vector<int>& du, const std::vector<int>& dv) {
  Poly out = e.num();
  const int d = e.arity();
  for (int i = 0; i < d; ++i) {
    int ku = du[i] - e.den_u()[i];
    if (ku > 0) {
      Exps m(d, 0);
      m[i] = ku;
      out = out * Poly::monomial(d, std::move(m), 1);
    }
    int kv = dv[i] - e.den_v()[i];
    for (int k = 0; k < kv; ++k)
      out = out * (Poly::variable(d, i) + Poly::constant(d, 1));
  }
  return out;
}

} // namespace

Element operator+(const Element& a, const Element& b) {
  if (a.arity() != b.arity()) throw ArityError();
  const int d = a.arity();
  std::vector<int> du(d), dv(d);
  for (int i = 0; i < d; ++i) {
    du[i] = std::max(a.den_u_[i], b.den_u_[i]);
    dv[i] = std::max(a.den_v_[i], b.den_v_[i]);
  }
  Element out(d);
  out.num_ = lift_num(a, du, dv) + lift_num(b, du, dv);
  out.den_u_ = std::move(du);
  out.den_v_ = std::move(dv);
  out.normalize();
  return out;
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element Element::operator-() const {
  Element out = *this;
  out.num_ = -out.num_;
  return out;
}

Element operator*(const Element& a, const Element& b) {
  if (a.arity() != b.arity()) throw ArityError();
  const int d = a.arity();
  Element out(d);
  out.num_ = a.num_ * b.num_;
  for (int i = 0; i < d; ++i) {
    out.den_u_[i] = a.den_u_[i] + b.den_u_[i];
    out.den_v_[i] = a.den_v_[i] + b.den_v_[i];
  }
  out.normalize();
  return out;
}

bool operator==(const Element& a, const Element& b) {
  return a.arity() == b.arity() && a.num_ == b.num_ && a.den_u_ == b.den_u_ &&
         a.den_v_ == b.den_v_;
}

Element Element::pow(long long n) const {
  Element base = n < 0 ? inverse() : *this;
  long long k = n < 0 ? -n : n;
  Element acc = integer(arity(), 1);
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

std::optional<Element::UnitParts> Element::as_unit() const {
  if (num_.is_zero()) return std::nullopt;
  const int d = arity();
  UnitParts parts{+1, std::vector<int>(d, 0), std::vector<int>(d, 0)};
  Poly rest = num_;
  for (int i = 0; i < d; ++i) {
    int k = rest.min_degree(i);
    if (k > 0) rest = rest.divide_var(i, k);
    parts.u_exps[i] = k - den_u_[i];
    int m = 0;
    while (true) {
      auto q = rest.divide_one_plus_var(i);
      if (!q) break;
      rest = std::move(*q);
      ++m;
    }
    parts.v_exps[i] = m - den_v_[i];
  }
  if (!rest.is_constant()) return std::nullopt;
  Int c = rest.coefficient(Exps(d, 0));
  if (c == 1)
    parts.sign = +1;
  else if (c == -1)
    parts.sign = -1;
  else
    return std::nullopt;
  return parts;
}

Element Element::inverse() const {
  auto parts = as_unit();
  if (!parts) throw NotInvertibleError();
  std::vector<int> iu(arity()), iv(arity());
  for (int i = 0; i < arity(); ++i) {
    iu[i] = -parts->u_exps[i];
    iv[i] = -parts->v_exps[i];
  }
  return monomial(arity(), iu, iv, parts->sign);
}

Element Element::substitute(const std::vector<Element>& images) const {
  const int d = arity();
  if (static_cast<int>(images.size()) != d) throw ArityError();
  const Element one = integer(d, 1);
  std::vector<Element> img_inv(d, one), onep_inv(d, one);
  for (int i = 0; i < d; ++i) {
    if (images[i].arity() != d) throw ArityError();
    auto u = images[i].as_unit();
    auto v = (one + images[i]).as_unit();
    if (!u || !v) throw NotAnEndomorphismError();
    if (den_u_[i] > 0) img_inv[i] = images[i].inverse();
    if (den_v_[i] > 0) onep_inv[i] = (one + images[i]).inverse();
  }
  Element acc(d);
  for (const auto& [e, c] : num_.terms()) {
    Element term = integer(d, c);
    for (int i = 0; i < d; ++i)
      if (e[i] > 0) term = term * images[i].pow(e[i]);
    acc = acc + term;
  }
  for (int i = 0; i < d; ++i) {
    if (den_u_[i] > 0) acc = acc * img_inv[i].pow(den_u_[i]);
    if (den_v_[i] > 0) acc = acc * onep_inv[i].pow(den_v_[i]);
  }
  return acc;
}

int Element::ord_var(int var) const {
  if (is_zero()) throw ValuationOfZeroError();
  return num_.min_degree(var) - den_u_[var];
}

int Element::ord_one_plus_var(int var) const {
  if (is_zero()) throw ValuationOfZeroError();
  return num_.one_plus_var_multiplicity(var) - den_v_[var];
}

int Element::top_deg(int var) const {
  if (is_zero()) throw ValuationOfZeroError();
  return num_.max_degree(var) - den_u_[var] - den_v_[var];
}

Rational Element::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != arity()) throw ArityError();
  Rational acc = 0;
  for (const auto& [e, c] : num_.terms()) {
    Rational term(c);
    for (int i = 0; i < arity(); ++i)
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  for (int i = 0; i < arity(); ++i) {
    if (den_u_[i] > 0) {
      if (point[i] == 0) throw LaurentError("evaluation point hits an inverted u_i");
      for (int k = 0; k < den_u_[i]; ++k) acc /= point[i];
    }
    if (den_v_[i] > 0) {
      Rational q = point[i] + 1;
      if (q == 0) throw LaurentError("evaluation point hits an inverted 1+u_i");
      for (int k = 0; k < den_v_[i]; ++k) acc /= q;
    }
  }
  return acc;
}

namespace {

std::string var_name(int arity, int i, bool x_form) {
  std::string base = x_form ? "x" : "u";
  if (arity == 1) return base;
  return base + std::to_string(i + 1);
}

std::string poly_str(const Poly& p, bool x_form, bool flip = false) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Int coeff = c;
    long long total = 0;
    for (int i = 0; i < p.arity(); ++i) total += e[i];
    if (x_form && total % 2 != 0) coeff = -coeff; // u_i = -x_i
    if (flip) coeff = -coeff;
    if (first) {
      if (coeff < 0) os << "-";
      first = false;
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    Int mag = abs(coeff);
    bool any_var = total > 0;
    if (mag != 1 || !any_var) os << mag;
    bool started = mag != 1 || !any_var;
    for (int i = 0; i < p.arity(); ++i) {
      if (e[i] == 0) continue;
      if (started) os << "*";
      os << var_name(p.arity(), i, x_form);
      if (e[i] > 1) os << "^" << e[i];
      started = true;
    }
  }
  return os.str();
}

} // namespace

std::string Element::str(bool x_form) const {
  std::ostringstream os;
  bool have_den = false;
  int du_total = 0;
  for (int i = 0; i < arity(); ++i) {
    have_den = have_den || den_u_[i] > 0 || den_v_[i] > 0;
    du_total += den_u_[i];
  }
  // in x-form the denominator gets sign (-1)^{sum den_u}; fold it into the numerator
  bool flip = x_form && du_total % 2 != 0;
  std::string n = poly_str(num_, x_form, flip);
  if (!have_den) return n;
  if (num_.terms().size() > 1)
    os << "(" << n << ")";
  else
    os << n;
  os << " / (";
  bool first = true;
  for (int i = 0; i < arity(); ++i) {
    if (den_u_[i] > 0) {
      if (!first) os << "*";
      os << var_name(arity(), i, x_form);
      if (den_u_[i] > 1) os << "^" << den_u_[i];
      first = false;
    }
    if (den_v_[i] > 0) {
      if (!first) os << "*";
      os << "(1" << (x_form ? "-" : "+") << var_name(arity(), i, x_form) << ")";
      if (den_v_[i] > 1) os << "^" << den_v_[i];
      first = false;
    }
  }
  os << ")";
  return os.str();
}

namespace {

struct ElementParser {
  std::string_view text;
  int arity;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw LaurentError(msg + " at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Int parse_int() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && text[start] == '-'))
      fail("expected an integer");
    return Int(std::string(text.substr(start, pos - start)));
  }

  long long parse_exponent() {
    if (!accept('^')) return 1;
    return static_cast<long long>(parse_int());
  }

  Element parse_factor() {
    skip_ws();
    if (pos >= text.size()) fail("expected a factor");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Element inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner.pow(parse_exponent());
    }
    if (c == 'u') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      int var;
      if (pos == start) {
        if (arity != 1) fail("bare 'u' needs a one-variable ring");
        var = 0;
      } else {
        var = std::stoi(std::string(text.substr(start, pos - start))) - 1;
        if (var < 0 || var >= arity) fail("variable index out of range");
      }
      return Element::variable(arity, var).pow(parse_exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Element::integer(arity, parse_int());
    fail(std::string("unexpected character '") + c + "'");
  }

  Element parse_term() {
    Element acc = parse_factor();
    while (true) {
      skip_ws();
      if (accept('*')) {
        acc = acc * parse_factor();
      } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        acc = acc * parse_factor().inverse();
      } else {
        break;
      }
    }
    return acc;
  }

  Element parse_expr() {
    skip_ws();
    bool neg = accept('-');
    Element acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (accept('+')) {
        acc = acc + parse_term();
      } else if (pos < text.size() && text[pos] == '-') {
        ++pos;
        acc = acc - parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Element run() {
    Element e = parse_expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return e;
  }
};

} // namespace

Element parse_element(std::string_view text, int arity) {
  if (arity < 1) throw LaurentError("arity must be >= 1");
  ElementParser p{text, arity};
  return p.run();
}

Element q_monomial(int arity, const std::vector<int>& m, const std::vector<int>& n) {
  return Element::monomial(arity, m, n, 1);
}

MagnusMatrix magnus_identity(int arity, int rank) {
  return {Element::integer(arity, 1), std::vector<Element>(rank, Element(arity))};
}

MagnusMatrix magnus_generator(int arity, int rank, int i) {
  MagnusMatrix g = magnus_identity(arity, rank);
  g.t = Element::variable(arity, i);
  g.coords[i] = Element::integer(arity, 1);
  return g;
}

MagnusMatrix mat_mul(const MagnusMatrix& a, const MagnusMatrix& b) {
  if (a.coords.size() != b.coords.size()) throw ArityError();
  MagnusMatrix out{a.t * b.t, {}};
  out.coords.reserve(a.coords.size());
  for (std::size_t j = 0; j < a.coords.size(); ++j)
    out.coords.push_back(a.t * b.coords[j] + a.coords[j]);
  return out;
}

MagnusMatrix mat_inv(const MagnusMatrix& a) {
  Element ti = a.t.inverse();
  MagnusMatrix out{ti, {}};
  out.coords.reserve(a.coords.size());
  for (const auto& c : a.coords) out.coords.push_back(-(ti * c));
  return out;
}

MagnusMatrix commutator(const MagnusMatrix& a, const MagnusMatrix& b) {
  return mat_mul(mat_mul(mat_inv(a), mat_inv(b)), mat_mul(a, b));
}

bool is_identity(const MagnusMatrix& a) {
  if (!a.t.is_one()) return false;
  for (const auto& c : a.coords)
    if (!c.is_zero()) return false;
  return true;
}

} // namespace cbcalc::laurent

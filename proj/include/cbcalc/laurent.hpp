#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbcalc/ints.hpp"

namespace cbcalc::laurent {

struct LaurentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArityError : LaurentError {
  ArityError() : LaurentError("operands live over different variable counts") {}
};
struct ValuationOfZeroError : LaurentError {
  ValuationOfZeroError() : LaurentError("valuation of zero is undefined") {}
};
struct NotInvertibleError : LaurentError {
  NotInvertibleError() : LaurentError("element is not a unit of the localized ring") {}
};
struct NotAnEndomorphismError : LaurentError {
  NotAnEndomorphismError()
      : LaurentError("substitution image of an inverted element is not a unit") {}
};

using Exps = std::vector<int>;

// Sparse multivariate polynomial in u_1..u_d over Int, non-negative exponents,
// canonical term order (lexicographic on exponent vectors).
class Poly {
public:
  explicit Poly(int arity) : arity_(arity) {}
  static Poly constant(int arity, Int c);
  static Poly variable(int arity, int var);
  static Poly monomial(int arity, Exps exps, Int c);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exps, Int>& terms() const { return terms_; }
  Int coefficient(const Exps& e) const;
  bool is_constant() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  int min_degree(int var) const; // over nonzero terms; poly must be nonzero
  int max_degree(int var) const;
  // Exact division by u_var^k (caller guarantees divisibility).
  Poly divide_var(int var, int k) const;
  // Exact division by (1 + u_var); nullopt when the remainder is nonzero.
  std::optional<Poly> divide_one_plus_var(int var) const;
  // Multiplicity of (1 + u_var) as a factor.
  int one_plus_var_multiplicity(int var) const;

  void add_term(Exps exps, Int c); // builder; merges and drops zeros

private:
  int arity_;
  std::map<Exps, Int> terms_;
};

/// Exact element of the localized Laurent ring Z[u_1..u_d, u_i^{-1}, (1+u_i)^{-1}]:
/// numerator / prod_i u_i^{den_u[i]} (1+u_i)^{den_v[i]}, normalized so that no
/// inverted factor divides the numerator. Normal forms are canonical, so
/// equality is structural.
class Element {
public:
  explicit Element(int arity);
  static Element from_poly(Poly p);
  static Element integer(int arity, Int c);
  static Element variable(int arity, int var);      // u_i
  static Element one_plus_var(int arity, int var);  // 1 + u_i
  static Element x_var(int arity, int var);         // x_i = -u_i
  // c * prod u_i^{u_exps[i]} (1+u_i)^{v_exps[i]}, exponents of either sign
  static Element monomial(int arity, const std::vector<int>& u_exps,
                          const std::vector<int>& v_exps, Int c = 1);

  int arity() const { return num_.arity(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  const Poly& num() const { return num_; }
  const std::vector<int>& den_u() const { return den_u_; }
  const std::vector<int>& den_v() const { return den_v_; }

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  Element operator-() const;
  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  Element pow(long long n) const; // negative n requires a unit

  struct UnitParts {
    int sign; // +1 or -1
    std::vector<int> u_exps, v_exps;
  };
  std::optional<UnitParts> as_unit() const;
  bool is_unit() const { return as_unit().has_value(); }
  Element inverse() const; // throws NotInvertibleError

  // Ring endomorphism determined by u_i -> images[i]. Both images[i] and
  // 1 + images[i] must be units; otherwise the map leaves the ring.
  Element substitute(const std::vector<Element>& images) const;

  // Valuations; all throw ValuationOfZeroError on 0.
  int ord_var(int var) const;          // lowest u_var-degree
  int ord_one_plus_var(int var) const; // multiplicity of (1+u_var)
  int top_deg(int var) const;          // top u_var-degree

  // Exact rational evaluation at u_i = point[i] (x-form callers convert).
  Rational evaluate(const std::vector<Rational>& point) const;

  // Canonical text; x_form prints via the sign convention x_i = -u_i.
  std::string str(bool x_form = false) const;

private:
  void normalize();
  Poly num_;
  std::vector<int> den_u_, den_v_;
};

// Integer-coefficient expressions over u1..ud (bare "u" when d = 1) with + - * /,
// parentheses and signed ^ powers, e.g. "3*u1^2/(1+u2) - u1^-1". Inverse powers
// require unit bases. parse_element(e.str(), d) == e.
Element parse_element(std::string_view text, int arity);

// Group monomial of Q = Z^{2d} acting on the ring: prod u_i^{m[i]} (1+u_i)^{n[i]}.
Element q_monomial(int arity, const std::vector<int>& m, const std::vector<int>& n);

/// Upper triangular 2x2 matrix [[t, coords], [0, 1]] with unit t and a module
/// row vector over the localized ring; the ambient group of the Magnus
/// embedding and of the 2x2 representations of the catalog groups.
struct MagnusMatrix {
  Element t;
  std::vector<Element> coords;
};

MagnusMatrix magnus_identity(int arity, int rank);
// Free metabelian generator image: [[u_i, e_i], [0, 1]].
MagnusMatrix magnus_generator(int arity, int rank, int i);
MagnusMatrix mat_mul(const MagnusMatrix& a, const MagnusMatrix& b);
MagnusMatrix mat_inv(const MagnusMatrix& a); // throws NotInvertibleError
// a^{-1} b^{-1} a b
MagnusMatrix commutator(const MagnusMatrix& a, const MagnusMatrix& b);
bool is_identity(const MagnusMatrix& a);

} // namespace cbcalc::laurent

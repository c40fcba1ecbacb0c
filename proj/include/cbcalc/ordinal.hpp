#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbcalc/ints.hpp"

namespace cbcalc {

class Ordinal;
struct OrdinalTerm;

struct OrdinalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeOfZeroError : OrdinalError {
  DegreeOfZeroError() : OrdinalError("degree of the zero ordinal is undefined") {}
};

struct OrdinalParseError : OrdinalError {
  std::size_t position;
  OrdinalParseError(std::string msg, std::size_t pos)
      : OrdinalError(std::move(msg)), position(pos) {}
};

/// Ordinal below epsilon_0 in Cantor normal form: a finite sequence of terms
/// w^exponent * coefficient with strictly decreasing exponents (themselves
/// ordinals) and coefficients >= 1. The empty sequence is 0. Immutable value
/// type; all arithmetic is exact.
class Ordinal {
public:
  Ordinal() = default; // zero

  static Ordinal finite(Int n);
  static Ordinal omega();
  static Ordinal omega_pow(Ordinal exponent, Int coefficient = 1);
  // Validates strictly decreasing exponents and positive coefficients.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  bool is_zero() const;
  bool is_finite() const; // zero or a single term with exponent 0
  // Finite value; throws OrdinalError when not finite.
  Int finite_value() const;
  const std::vector<OrdinalTerm>& terms() const;

private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  Int coefficient;
};

enum class Cmp { LT, EQ, GT };

Cmp compare(const Ordinal& a, const Ordinal& b);

bool operator==(const Ordinal& a, const Ordinal& b);
bool operator!=(const Ordinal& a, const Ordinal& b);
bool operator<(const Ordinal& a, const Ordinal& b);
bool operator<=(const Ordinal& a, const Ordinal& b);
bool operator>(const Ordinal& a, const Ordinal& b);
bool operator>=(const Ordinal& a, const Ordinal& b);

// Ordinary (non-commutative) ordinal sum: terms of a below deg(b) are absorbed.
Ordinal add(const Ordinal& a, const Ordinal& b);

// Natural (Hessenberg) sum: coefficientwise addition of Cantor forms.
Ordinal natural_sum(const Ordinal& a, const Ordinal& b);

/// The unique decomposition a = w*quotient + remainder with remainder < w.
struct ReducedPair {
  Ordinal quotient;
  Int remainder;
};

ReducedPair reduce(const Ordinal& a);

// Inverse of the reduce quotient map: w * a, i.e. each term (g, n) becomes
// (1 + g, n). reduce/omega_left_multiple satisfy the reconstruction law
// add(omega_left_multiple(reduce(a).quotient), finite(reduce(a).remainder)) == a.
Ordinal omega_left_multiple(const Ordinal& a);

// Leading exponent of the CNF; throws DegreeOfZeroError on 0.
Ordinal degree(const Ordinal& a);

// Canonical text form, e.g. "w^2 + 4", "w^w*3 + w + 1". One spelling per
// ordinal; parse(format(a)) == a. With unicode=true prints the omega glyph.
std::string format(const Ordinal& a, bool unicode = false);

// Parses the grammar  ordinal := term ('+' term)* | '0'
//                     term    := nat | ("w"|omega-glyph) ['^' exp] ['*' nat]
//                     exp     := nat | w-term-without-coefficient | '(' ordinal ')'
// Exponents must be strictly decreasing; throws OrdinalParseError with the
// byte offset of the offending token otherwise.
Ordinal parse_ordinal(std::string_view text);

// Canonical JSON: nested array of [exponent, coefficient] pairs, 0 = [].
// Coefficients are emitted as numbers when they fit in 64 bits, otherwise as
// decimal strings; both are accepted on input.
std::string ordinal_to_json(const Ordinal& a);
Ordinal ordinal_from_json(const std::string& text); // throws OrdinalParseError

} // namespace cbcalc

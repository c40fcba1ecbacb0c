#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cbcalc/grouprank.hpp"
#include "cbcalc/modlen.hpp"
#include "cbcalc/ordinal.hpp"
#include "cbcalc/sigma.hpp"

namespace cbcalc::dsl {

struct Diagnostic {
  std::string message;
  int line = 1;
  int column = 1;
  std::string str() const;
};

struct DslError : std::runtime_error {
  Diagnostic diagnostic;
  explicit DslError(Diagnostic d) : std::runtime_error(d.str()), diagnostic(std::move(d)) {}
};

/// A parsed descriptor document: `group <expr>` or `module <expr>`, with the
/// original source retained for error reporting and round-tripping.
struct DescriptorDocument {
  enum class Kind { Group, Module };
  Kind kind = Kind::Group;
  std::optional<grouprank::GroupDescriptor> group;
  std::optional<modlen::ModuleDescriptor> module;
  std::string source;
};

// Grammar: doc := ("group" | "module") expr. Group expressions are the
// constructors nilpotent/polycyclic/wreath/freemetabelian/metabelian/
// virtually/wreathperm, the catalog names H(d), Gamma(d), GammaPrime(d),
// Lambda(d), LambdaPrime(d), FM(d), Gn(d,n), Heisenberg, and Z^k. Module
// expressions are critical/torsionfree/finite/series/directsum/ext.
DescriptorDocument parse_document(std::string_view text);
grouprank::GroupDescriptor parse_group(std::string_view text);
modlen::ModuleDescriptor parse_module(std::string_view text);
std::string print_document(const DescriptorDocument& doc);

// classical [ (mod=k) ] | tensor(m1, m2, ...) | A(d) [ (mod=k) ] |
// fan(qrank=n, rays=[(a,b), ...]) | laurentline
sigma::BSModule parse_bs_module(std::string_view text);

/// Result of an ordinal command-line expression: infix + (ordinary sum,
/// binds tighter) and (+) or the unicode circled plus (natural sum), plus the
/// functions reduce(e), deg(e) and cmp(e1, e2).
struct OrdinalEvalResult {
  enum class Kind { Value, ReducedPair, Comparison };
  Kind kind = Kind::Value;
  Ordinal value;
  ReducedPair pair;
  Cmp cmp = Cmp::EQ;
  std::string str(bool unicode = false) const;
};

OrdinalEvalResult eval_ordinal_expr(std::string_view text);

} // namespace cbcalc::dsl

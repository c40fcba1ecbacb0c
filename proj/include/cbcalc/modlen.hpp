#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cbcalc/ordinal.hpp"

namespace cbcalc::modlen {

struct ModLenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DescriptorError : ModLenError {
  using ModLenError::ModLenError;
};
struct NotComputableError : ModLenError {
  using ModLenError::ModLenError;
};
struct AmbiguousBoundError : ModLenError {
  using ModLenError::ModLenError;
};

/// Interval of ordinals: inclusive lower bound, inclusive or strict upper
/// bound. Exact values are intervals with lower == upper and a non-strict
/// upper.
struct OrdinalInterval {
  Ordinal lower;
  Ordinal upper;
  bool upper_strict = false;

  static OrdinalInterval exact(Ordinal v) { return {v, v, false}; }
  bool is_exact() const { return !upper_strict && lower == upper; }
  std::string str(bool unicode = false) const;
  friend bool operator==(const OrdinalInterval& a, const OrdinalInterval& b) {
    return a.lower == b.lower && a.upper == b.upper && a.upper_strict == b.upper_strict;
  }
};

// Largest interval contained in both; throws AmbiguousBoundError when empty.
OrdinalInterval intersect(const OrdinalInterval& a, const OrdinalInterval& b);
bool contains(const OrdinalInterval& outer, const Ordinal& v);
bool contains(const OrdinalInterval& outer, const OrdinalInterval& inner);

/// Tree describing the critical-series/extension structure of a finitely
/// generated module. Structure is asserted input, not computed from a
/// presentation; validation checks internal consistency only.
class ModuleDescriptor {
public:
  enum class Kind { CriticalLeaf, TorsionFreeLeaf, FiniteLeaf, Series, DirectSum, Extension };

  static ModuleDescriptor critical(int dim);
  static ModuleDescriptor torsion_free(int dim, Int rank);
  static ModuleDescriptor finite(Int length);
  static ModuleDescriptor zero() { return finite(0); }
  // children restricted to critical/torsion-free leaves, dims weakly increasing
  static ModuleDescriptor series(std::vector<ModuleDescriptor> children);
  static ModuleDescriptor direct_sum(std::vector<ModuleDescriptor> children);
  static ModuleDescriptor extension(ModuleDescriptor sub, ModuleDescriptor quot);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }           // CriticalLeaf / TorsionFreeLeaf
  const Int& count() const { return count_; } // rank or finite length
  const std::vector<ModuleDescriptor>& children() const { return children_; }
  const ModuleDescriptor& sub() const { return children_[0]; }
  const ModuleDescriptor& quot() const { return children_[1]; }

  bool is_zero_module() const { return kind_ == Kind::FiniteLeaf && count_ == 0; }

  friend bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b);

private:
  ModuleDescriptor(Kind k, int dim, Int count, std::vector<ModuleDescriptor> ch)
      : kind_(k), dim_(dim), count_(std::move(count)), children_(std::move(ch)) {}
  Kind kind_;
  int dim_ = 0;
  Int count_ = 0;
  std::vector<ModuleDescriptor> children_;
};

// Ordinal length: exact on leaves, Gulliksen sums on series, natural sums on
// direct sums; extensions produce the sandwich interval, collapsing to an
// exact value when the ordinary and natural sums coincide.
OrdinalInterval length(const ModuleDescriptor& m);

// Reduced length, computed recursively with reduced leaf values; agrees with
// reduce_interval(length(m)) on every descriptor.
OrdinalInterval reduced_length(const ModuleDescriptor& m);

// Image of an interval under a -> a' (reduce quotient); the second route for
// reduced_length used in cross-checks.
OrdinalInterval reduce_interval(const OrdinalInterval& iv);

// deg of the length; -1 for the zero module; AmbiguousBoundError when the
// interval does not pin the degree.
int krull_dim(const ModuleDescriptor& m);

// Coefficient of w^dim in the length; requires both endpoints to agree.
Int leading_coeff(const ModuleDescriptor& m);

struct SplitResult {
  ModuleDescriptor part;     // the radical: dims <= 1 (W) resp. <= 0 (E)
  ModuleDescriptor quotient; // the rest
};

// W-radical split (largest part of Krull dimension <= 1). Extension nodes are
// rejected: bounds alone do not determine the radical.
SplitResult w_split(const ModuleDescriptor& m);
// E-radical split (finite part, dimension <= 0).
SplitResult e_split(const ModuleDescriptor& m);

struct FiniteActionFlags {
  bool invariant_ideal_in_domain = false;
  int domain_dim = 0;
};

// Reduced length under an action of a finite group of the given order:
// top-coefficient sandwich at the Krull dimension, sharpened to an exact value
// when the plain reduced length is a pure power of w or when the flags assert
// a nonzero invariant ideal in a finitely generated domain.
OrdinalInterval finite_action_bounds(const ModuleDescriptor& m, const Int& group_order,
                                     FiniteActionFlags flags = {});

std::string to_dsl(const ModuleDescriptor& m);

} // namespace cbcalc::modlen

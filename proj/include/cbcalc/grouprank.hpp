#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbcalc/modlen.hpp"

namespace cbcalc::grouprank {

struct GroupRankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DescriptorError : GroupRankError {
  using GroupRankError::GroupRankError;
};
struct HypothesisNotEstablishedError : GroupRankError {
  using GroupRankError::GroupRankError;
};

struct PolycyclicFactor {
  enum class Kind { InfiniteCyclic, FreeAbelian, Finite };
  Kind kind;
  int rank = 1; // FreeAbelian only

  static PolycyclicFactor infinite_cyclic() { return {Kind::InfiniteCyclic, 1}; }
  static PolycyclicFactor free_abelian(int k) { return {Kind::FreeAbelian, k}; }
  static PolycyclicFactor finite() { return {Kind::Finite, 0}; }
  bool is_infinite() const { return kind != Kind::Finite; }
  friend bool operator==(const PolycyclicFactor&, const PolycyclicFactor&) = default;
};

// M is a torsion-free module of the given rank over Z[Q]/P, with P prime of
// the given coheight (the Krull dimension of Z[Q]/P).
struct PrimeQuotient {
  int coheight = 0;
  Int rank = 1;
  friend bool operator==(const PrimeQuotient&, const PrimeQuotient&) = default;
};

struct MetabelianFlags {
  int q_rank = 0;
  bool q_torsion_free = false;
  bool split = false;
  std::optional<int> generators;
  bool faithful = false;
  bool module_contains_centralizer = false;
  std::optional<PrimeQuotient> prime_quotient;
  friend bool operator==(const MetabelianFlags&, const MetabelianFlags&) = default;
};

struct WreathPermutationalFlags {
  bool base_nontrivial = false;
  bool diag_orbits_infinite = false;
  bool finitely_presented = false;
  friend bool operator==(const WreathPermutationalFlags&, const WreathPermutationalFlags&) = default;
};

/// Structured description of a finitely generated (virtually) metabelian or
/// polycyclic group; the input language of the rank engine. Flags are
/// asserted facts about the group, validated for mutual consistency only.
class GroupDescriptor {
public:
  enum class Kind {
    Polycyclic,
    Wreath,
    FreeMetabelian,
    MetabelianExt,
    VirtuallyMetabelian,
    WreathPermutational
  };

  GroupDescriptor() : kind_(Kind::Polycyclic) {} // the trivial group

  static GroupDescriptor polycyclic(std::vector<PolycyclicFactor> factors,
                                    bool supersolvable, bool nilpotent);
  static GroupDescriptor nilpotent_of_hirsch(int h);
  static GroupDescriptor free_abelian(int k);
  static GroupDescriptor wreath_free_abelian(int base_rank, int top_rank);
  static GroupDescriptor wreath_cyclic(Int modulus, int top_rank);
  static GroupDescriptor free_metabelian(int d);
  static GroupDescriptor metabelian_ext(modlen::ModuleDescriptor module, MetabelianFlags flags);
  static GroupDescriptor virtually_metabelian(GroupDescriptor inner, Int index,
                                              std::optional<int> invariant_ideal_dim);
  static GroupDescriptor wreath_permutational(WreathPermutationalFlags flags);

  Kind kind() const { return kind_; }
  const std::vector<PolycyclicFactor>& factors() const { return factors_; }
  bool supersolvable() const { return supersolvable_; }
  bool nilpotent() const { return nilpotent_; }
  int base_rank() const { return base_rank_; }   // Wreath(Z^k): k; FreeMetabelian: d
  const Int& modulus() const { return modulus_; } // Wreath(C_m): m; virtually: index
  int top_rank() const { return top_rank_; }
  const modlen::ModuleDescriptor& module() const;
  const MetabelianFlags& flags() const { return mflags_; }
  const GroupDescriptor& inner() const;
  std::optional<int> invariant_ideal_dim() const { return ideal_dim_; }
  const WreathPermutationalFlags& wp_flags() const { return wpflags_; }

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);

private:
  explicit GroupDescriptor(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<PolycyclicFactor> factors_;
  bool supersolvable_ = false, nilpotent_ = false;
  int base_rank_ = 0, top_rank_ = 0;
  Int modulus_ = 0;
  std::vector<modlen::ModuleDescriptor> module_;
  MetabelianFlags mflags_;
  std::vector<GroupDescriptor> inner_;
  std::optional<int> ideal_dim_;
  WreathPermutationalFlags wpflags_;
};

struct TraceStep {
  std::string rule;  // stable rule identifier
  std::string law;   // the equality or bound the rule instantiates
  std::string value; // intermediate value or interval
};
using DerivationTrace = std::vector<TraceStep>;

struct RankResult {
  enum class Kind { Exact, Interval, Condensation, Unknown };
  Kind kind = Kind::Unknown;
  modlen::OrdinalInterval interval; // Exact results have is_exact() true
  DerivationTrace trace;

  static RankResult exact(Ordinal v, DerivationTrace t = {});
  static RankResult of_interval(modlen::OrdinalInterval iv, DerivationTrace t = {});
  static RankResult condensation(DerivationTrace t = {});
  static RankResult unknown(DerivationTrace t = {});
  bool is_exact() const { return kind == Kind::Exact; }
  const Ordinal& value() const; // Exact only
  std::string str(bool unicode = false) const;
};

// Number of prime factors counted with multiplicity (trial division).
int delta(Int m);

// Sum of the ranks of the infinite factors of a polycyclic descriptor.
int hirsch_length(const GroupDescriptor& g);

// The rank engine: applies the first matching exact rule, otherwise the
// tightest interval from the sandwich and cap rules. fallback_only disables
// every exact rule and answers from the sandwich/caps alone (the consistency
// reference path).
RankResult reduced_length_group(const GroupDescriptor& g, bool fallback_only = false);

// Cantor-Bendixson rank of the trivial subgroup in the space of normal
// subgroups; equals the reduced length on the descriptor classes, all of
// which satisfy max-n with residually finite quotients.
RankResult cb_rank(const GroupDescriptor& g, bool fallback_only = false);

// Rank of the whole space: cb_rank + 1.
RankResult cb_space(const GroupDescriptor& g);

// Rank as a point of the space of marked groups. Needs a finite
// presentability fact, except for wreath-permutational descriptors where the
// diagonal-orbit criterion yields the condensation symbol.
RankResult cb_external(const GroupDescriptor& g,
                       std::optional<bool> finitely_presented_fact = std::nullopt);

// Re-derives the result and checks that the trace's final value matches;
// used to audit stored traces.
bool replay_trace(const GroupDescriptor& g, const RankResult& result);

std::string to_dsl(const GroupDescriptor& g);

} // namespace cbcalc::grouprank

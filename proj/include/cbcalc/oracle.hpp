#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbcalc/sigma.hpp"

namespace cbcalc::oracle {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooLargeError : OracleError {
  using OracleError::OracleError;
};

/// A finite abelian group given by its cyclic orders, optionally with a
/// semigroup of endomorphisms generated by integer matrices (entry (i,j) maps
/// the j-th generator into the i-th cyclic factor; well-definedness modulo the
/// orders is validated).
struct FiniteModuleInstance {
  std::vector<long long> cyclic_orders;
  std::vector<std::vector<std::vector<long long>>> action;

  static FiniteModuleInstance abelian(std::vector<long long> orders);
  static FiniteModuleInstance with_action(std::vector<long long> orders,
                                          std::vector<std::vector<std::vector<long long>>> action);
  long long order() const;
  std::string str() const;
};

inline constexpr long long kMaxLatticeOrder = 1 << 14;

/// Explicit lattice of action-invariant subgroups, with the longest-chain
/// value of every node in both directions; the ground truth the symbolic
/// rules are checked against.
class SubgroupLattice {
public:
  explicit SubgroupLattice(const FiniteModuleInstance& instance); // TooLargeError

  int count() const { return static_cast<int>(orders_.size()); }
  // l(G/N): longest chain upward from subgroup N
  int value_above(int id) const { return above_[id]; }
  // l(N): longest chain downward to the trivial subgroup
  int value_below(int id) const { return below_[id]; }
  long long subgroup_order(int id) const { return orders_[id]; }
  int whole_group() const { return whole_; }
  int trivial() const { return trivial_; }
  long long length() const { return above_[trivial_]; }
  // ids sorted by subgroup order
  const std::vector<int>& by_order() const { return by_order_; }

private:
  std::vector<long long> orders_;
  std::vector<int> above_, below_, by_order_;
  int whole_ = 0, trivial_ = 0;
};

// Exact ordinal length of a finite instance: the longest chain in the
// invariant-subgroup lattice, per the sup-over-quotients recursion.
long long exhaustive_length(const FiniteModuleInstance& instance);

struct Report {
  std::string suite;
  long long cases = 0;
  long long violations = 0;
  std::vector<std::string> failures; // first few, human-readable
  bool ok() const { return violations == 0; }
  std::string to_json() const;
};

// All abelian groups of order 2..max_order (one instance per isomorphism type).
std::vector<FiniteModuleInstance> all_abelian_groups(long long max_order);

// exhaustive_length == delta(order) on every abelian group of order <= max_order.
Report check_delta_agreement(long long max_order, bool parallel = false);

// Random instances with a chosen invariant subgroup N:
// l(G/N) + l(N) <= l(G) <= l(G/N) (+) l(N), with equality on direct sums.
Report check_ext_bounds(int samples, std::uint64_t seed, bool parallel = false);

// Every beta <= l(G) is realized as l(G/N) for some invariant N.
Report check_convex_realization(const FiniteModuleInstance& instance);
Report check_convex_realization_all(long long max_order, bool parallel = false);

// Random F_p-modules with a matrix action of multiplicative order n:
// l_G <= l <= n * l_G.
Report check_finite_action_bounds(int samples, std::uint64_t seed, bool parallel = false);

// The ordinal law battery: commutativity, associativity, monotonicity,
// reduce reconstruction and fixed points on seeded random CNF ordinals below
// w^w*10, plus agreement of the natural sum with its recursive definition on
// finite pairs below `finite_bound`.
Report recheck_ordinal_laws(int samples, std::uint64_t seed, int finite_bound = 500,
                            bool parallel = false);

// Re-verifies serialized gamma verdicts with exact arithmetic, plus the two
// classical saturation identities and the fan certificates.
Report recheck_sigma_artifacts(const sigma::BSModule& m,
                               const std::vector<sigma::GammaVerdict>& verdicts);

} // namespace cbcalc::oracle

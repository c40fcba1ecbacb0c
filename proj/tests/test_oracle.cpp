#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cbcalc/grouprank.hpp"
#include "cbcalc/oracle.hpp"

using namespace cbcalc;
using namespace cbcalc::oracle;

TEST_CASE("exhaustive length on small instances") {
  CHECK(exhaustive_length(FiniteModuleInstance::abelian({12})) == 3);
  CHECK(exhaustive_length(FiniteModuleInstance::abelian({2, 2, 2})) == 3);
  CHECK(exhaustive_length(FiniteModuleInstance::abelian({1})) == 0);
  CHECK(exhaustive_length(FiniteModuleInstance::abelian({8})) == 3);
  CHECK(exhaustive_length(FiniteModuleInstance::abelian({4, 9})) == 4);
  CHECK(exhaustive_length(FiniteModuleInstance::abelian({30})) == 3);
}

TEST_CASE("actions shrink the lattice") {
  // swap action on (Z/2)^2: invariant subgroups are 0, diagonal, whole
  auto swapped = FiniteModuleInstance::with_action({2, 2}, {{{0, 1}, {1, 0}}});
  CHECK(exhaustive_length(swapped) == 2);
  // multiplication by 2 on Z/8: every subgroup is invariant
  auto doubling = FiniteModuleInstance::with_action({8}, {{{2}}});
  CHECK(exhaustive_length(doubling) == 3);

  CHECK_THROWS_AS(FiniteModuleInstance::with_action({2, 4}, {{{0, 1}, {1, 0}}}),
                  OracleError);
  CHECK_THROWS_AS(exhaustive_length(FiniteModuleInstance::abelian({1 << 15})),
                  TooLargeError);
}

TEST_CASE("lattice interval values") {
  SubgroupLattice lat(FiniteModuleInstance::abelian({8}));
  CHECK(lat.count() == 4); // 0 < 4Z/8 < 2Z/8 < Z/8
  CHECK(lat.length() == 3);
  // l(G/N) + l(N) = l(G) along the chain
  for (int id = 0; id < lat.count(); ++id)
    CHECK(lat.value_above(id) + lat.value_below(id) == 3);
}

TEST_CASE("delta agreement on all abelian groups up to 40") {
  Report r = check_delta_agreement(40);
  CHECK(r.ok());
  CHECK(r.cases > 40);
}

TEST_CASE("ext bounds on seeded random cases") {
  Report r = check_ext_bounds(150, 20260810);
  CHECK(r.cases == 150);
  CHECK(r.ok());
}

TEST_CASE("convex realization") {
  Report one = check_convex_realization(FiniteModuleInstance::abelian({8}));
  CHECK(one.ok());
  Report all = check_convex_realization_all(32);
  CHECK(all.ok());
  Report simple = check_convex_realization(FiniteModuleInstance::abelian({5}));
  CHECK(simple.ok()); // only two quotients: lengths {0, 1}
}

TEST_CASE("finite action bounds on seeded random cases") {
  Report r = check_finite_action_bounds(60, 7);
  CHECK(r.cases == 60);
  CHECK(r.ok());
}

TEST_CASE("ordinal law battery") {
  Report r = recheck_ordinal_laws(1500, 42, 120);
  CHECK(r.ok());
  CHECK(r.cases == 1500 + 120 * 120);
}

TEST_CASE("sigma artifact recheck") {
  sigma::BSModule m = sigma::BSModule::classical();
  std::vector<sigma::GammaVerdict> verdicts;
  for (auto& c : {sigma::Character::of_ints({Int(1), Int(1)}),
                  sigma::Character::of_ints({Int(0), Int(1)}),
                  sigma::Character::of_ints({Int(-2), Int(1)})})
    verdicts.push_back(sigma::decide_ray(m, c, 8));
  Report r = recheck_sigma_artifacts(m, verdicts);
  CHECK(r.ok());
  CHECK(r.cases == static_cast<long long>(verdicts.size()) + 2 + 3);

  // a tampered witness must be caught
  auto bad = verdicts;
  for (auto& v : bad)
    if (v.witness) {
      v.witness->combination[0].coeff += 1;
      break;
    }
  CHECK(!recheck_sigma_artifacts(m, bad).ok());
}

TEST_CASE("finite descriptor trees agree with the lattice oracle") {
  using MD = modlen::ModuleDescriptor;
  // realize finite leaves as cyclic 2-groups: composition length = the leaf value
  struct Case {
    MD descriptor;
    FiniteModuleInstance realization;
  };
  std::vector<Case> cases = {
      {MD::finite(3), FiniteModuleInstance::abelian({8})},
      {MD::direct_sum({MD::finite(2), MD::finite(2)}),
       FiniteModuleInstance::abelian({4, 9})},
      {MD::extension(MD::finite(1), MD::finite(1)), FiniteModuleInstance::abelian({4})},
      {MD::extension(MD::finite(2), MD::finite(1)),
       FiniteModuleInstance::abelian({2, 2, 2})},
  };
  for (const auto& c : cases) {
    modlen::OrdinalInterval iv = modlen::length(c.descriptor);
    REQUIRE(iv.is_exact());
    CHECK(iv.lower == Ordinal::finite(exhaustive_length(c.realization)));
  }
}

TEST_CASE("parallel suites match serial") {
  Report s = check_ext_bounds(80, 99, false);
  Report p = check_ext_bounds(80, 99, true);
  CHECK(s.cases == p.cases);
  CHECK(s.violations == p.violations);

  Report so = recheck_ordinal_laws(500, 5, 50, false);
  Report po = recheck_ordinal_laws(500, 5, 50, true);
  CHECK(so.cases == po.cases);
  CHECK(so.violations == po.violations);
}

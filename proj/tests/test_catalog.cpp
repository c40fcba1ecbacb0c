#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cbcalc/catalog.hpp"

using namespace cbcalc;
using namespace cbcalc::catalog;

namespace {

Ordinal wp(int e, long long c = 1) { return Ordinal::omega_pow(Ordinal::finite(e), c); }

CatalogEntry entry(const std::string& name, std::map<std::string, Int> params = {}) {
  return get(name, params);
}

} // namespace

TEST_CASE("expected ranks") {
  CHECK(entry("H", {{"d", 2}}).expected.value() == wp(2));
  CHECK(entry("H", {{"d", 2}}).fp == sigma::FpVerdict::Yes);
  CHECK(entry("Lambda", {{"d", 3}}).expected.value() == wp(3));
  CHECK(entry("Gn", {{"d", 2}, {"n", 5}}).expected.value() == wp(1, 5));
  CHECK(entry("FM", {{"d", 4}}).expected.value() == wp(4, 3));
  CHECK(entry("ZwrZ", {{"k", 2}, {"d", 3}}).expected.value() == wp(3, 2));
  CHECK(entry("CwrZ", {{"m", 18}, {"d", 1}}).expected.value() == Ordinal::finite(4));
  CHECK(entry("ZwrZ-external").expected.kind ==
        grouprank::RankResult::Kind::Condensation);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(get("Nope", {}), CatalogError);
  CHECK_THROWS_AS(get("H", {}), CatalogError);
  CHECK_THROWS_AS(get("FM", {{"d", 1}}), CatalogError);
  CHECK_THROWS_AS(get("GammaPrime", {{"d", 2}}), CatalogError);
  CHECK_THROWS_AS(get("CwrZ", {{"m", 1}, {"d", 1}}), CatalogError);
  CHECK_THROWS_AS(verify(entry("H", {{"d", 6}})), CatalogError);
  CHECK(list_names().size() == 12);
}

TEST_CASE("catalog verifications pass") {
  std::vector<CatalogEntry> entries = {
      entry("Z", {{"k", 3}}),
      entry("Heisenberg"),
      entry("ZwrZ", {{"k", 2}, {"d", 3}}),
      entry("ZwrZ", {{"k", 4}, {"d", 0}}),
      entry("CwrZ", {{"m", 18}, {"d", 1}}),
      entry("CwrZ", {{"m", 18}, {"d", 2}}),
      entry("FM", {{"d", 2}}),
      entry("FM", {{"d", 3}}),
      entry("H", {{"d", 1}}),
      entry("H", {{"d", 2}}),
      entry("Gamma", {{"d", 2}}),
      entry("GammaPrime", {{"d", 1}}),
      entry("GammaPrime", {{"d", 3}}),
      entry("Lambda", {{"d", 2}}),
      entry("LambdaPrime", {{"d", 2}}),
      entry("Gn", {{"d", 2}, {"n", 3}}),
      entry("Gn", {{"d", 2}, {"n", 8}}),
      entry("ZwrZ-external"),
  };
  for (const auto& e : entries) {
    VerifyReport report = verify(e);
    INFO(report.to_json());
    CHECK(report.ok());
  }
}

TEST_CASE("fp facts match the sigma engine where bound") {
  for (int d = 1; d <= 3; ++d) {
    CatalogEntry h = entry("H", {{"d", d}});
    REQUIRE(h.bs_module.has_value());
    CHECK(sigma::finitely_presented(*h.bs_module) == sigma::FpVerdict::Yes);
  }
  CatalogEntry z = entry("ZwrZ-external");
  REQUIRE(z.bs_module.has_value());
  CHECK(sigma::finitely_presented(*z.bs_module) == sigma::FpVerdict::No);
}

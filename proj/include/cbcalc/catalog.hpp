#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbcalc/grouprank.hpp"
#include "cbcalc/sigma.hpp"

namespace cbcalc::catalog {

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A named group of the catalog: descriptor, expected rank, finite
/// presentability fact with its justification chain, and the list of
/// executable structural verifications that ground the descriptor.
struct CatalogEntry {
  std::string name; // instantiated, e.g. "H(2)"
  std::string family;
  std::map<std::string, Int> params;
  grouprank::GroupDescriptor descriptor;
  grouprank::RankResult expected; // cb for internal entries, cb^e for external ones
  bool external = false;          // expected refers to cb^e
  sigma::FpVerdict fp = sigma::FpVerdict::Unknown;
  std::string fp_justification;
  std::optional<sigma::BSModule> bs_module; // bound module when sigma-backed
  std::vector<std::string> checks;          // names understood by verify()
  std::vector<std::string> citations;       // the laws the expected values instantiate
};

// Template names: Z(k), Heisenberg, ZwrZ(k,d), CwrZ(m,d), FM(d), H(d),
// Gamma(d), GammaPrime(d odd), Lambda(d), LambdaPrime(d), Gn(d,n),
// ZwrZ-external.
std::vector<std::string> list_names();

// Instantiates a catalog entry; throws CatalogError on unknown names or
// parameters outside the documented ranges.
CatalogEntry get(const std::string& name, const std::map<std::string, Int>& params);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string entry;
  std::vector<CheckResult> checks;
  bool ok() const;
  std::string to_json() const;
};

// Runs every named check of the entry with exact arithmetic. Parameters are
// capped (default 4) because the matrix and substitution checks grow quickly.
VerifyReport verify(const CatalogEntry& entry, int param_bound = 4);

} // namespace cbcalc::catalog

#include "cbcalc/catalog.hpp"

#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cbcalc/laurent.hpp"

namespace cbcalc::catalog {

using grouprank::GroupDescriptor;
using grouprank::MetabelianFlags;
using grouprank::PrimeQuotient;
using grouprank::RankResult;
using laurent::Element;
using laurent::MagnusMatrix;
using modlen::ModuleDescriptor;

namespace {

Ordinal wpow(int e, Int c = 1) { return Ordinal::omega_pow(Ordinal::finite(e), std::move(c)); }

Int need(const std::map<std::string, Int>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw CatalogError("missing parameter '" + key + "'");
  return it->second;
}

int need_int(const std::map<std::string, Int>& params, const std::string& key, int lo,
             int hi = 1 << 20) {
  Int v = need(params, key);
  if (v < lo || v > hi)
    throw CatalogError("parameter '" + key + "' outside its documented range");
  return static_cast<int>(v);
}

std::string with_params(const std::string& family, const std::map<std::string, Int>& params) {
  std::ostringstream os;
  os << family << "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) os << ",";
    first = false;
    os << k << "=" << v;
  }
  os << ")";
  return os.str();
}

// the metabelian core of H_d: A_d as a module over Q = Z^{2d}
GroupDescriptor h_descriptor(int d) {
  MetabelianFlags f;
  f.q_rank = 2 * d;
  f.q_torsion_free = true;
  f.split = true;
  f.generators = 2 * d + 1;
  f.faithful = true;
  f.module_contains_centralizer = true;
  f.prime_quotient = PrimeQuotient{d + 1, 1};
  return GroupDescriptor::metabelian_ext(ModuleDescriptor::torsion_free(d + 1, 1), f);
}

// Lambda'_d: a nonzero ideal of A_d as a module over Q = Z^{2d}
GroupDescriptor lambda_prime_descriptor(int d) {
  MetabelianFlags f;
  f.q_rank = 2 * d;
  f.q_torsion_free = true;
  f.faithful = true;
  f.module_contains_centralizer = true;
  f.prime_quotient = PrimeQuotient{d + 1, 1};
  return GroupDescriptor::metabelian_ext(ModuleDescriptor::torsion_free(d + 1, 1), f);
}

GroupDescriptor gn_descriptor(int d, int n) {
  MetabelianFlags f;
  f.q_rank = d;
  f.q_torsion_free = true;
  f.split = true;
  f.generators = d;
  f.faithful = true;
  f.module_contains_centralizer = true;
  std::vector<ModuleDescriptor> factors(n, ModuleDescriptor::critical(d));
  return GroupDescriptor::metabelian_ext(ModuleDescriptor::series(std::move(factors)), f);
}

const char* kWreathNotFp =
    "cb^e(H wr G) = C for H != 1, G infinite, while cb(G) is an ordinal; a finitely "
    "presented group would have cb^e = cb";

} // namespace

std::vector<std::string> list_names() {
  return {"Z",      "Heisenberg", "ZwrZ",       "CwrZ",   "FM",
          "H",      "Gamma",      "GammaPrime", "Lambda", "LambdaPrime",
          "Gn",     "ZwrZ-external"};
}

CatalogEntry get(const std::string& name, const std::map<std::string, Int>& params) {
  CatalogEntry e;
  e.family = name;
  e.params = params;
  e.name = with_params(name, params);

  if (name == "Z") {
    int k = need_int(params, "k", 1);
    e.descriptor = GroupDescriptor::free_abelian(k);
    e.expected = RankResult::exact(Ordinal::finite(k));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification = "polycyclic groups are finitely presented";
    e.checks = {"rank", "rank-consistency"};
    e.citations = {"cb(Z^k) = k"};
    return e;
  }
  if (name == "Heisenberg") {
    e.name = "Heisenberg";
    e.descriptor = GroupDescriptor::nilpotent_of_hirsch(3);
    e.expected = RankResult::exact(Ordinal::finite(3));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification = "polycyclic groups are finitely presented";
    e.checks = {"rank", "rank-consistency"};
    e.citations = {"cb(G) = h(G) for finitely generated nilpotent G"};
    return e;
  }
  if (name == "ZwrZ") {
    int k = need_int(params, "k", 1);
    int d = need_int(params, "d", 0);
    e.descriptor = GroupDescriptor::wreath_free_abelian(k, d);
    e.expected = RankResult::exact(wpow(d, k));
    if (d == 0) {
      e.fp = sigma::FpVerdict::Yes;
      e.fp_justification = "Z^k wr Z^0 = Z^k is polycyclic";
    } else {
      e.fp = sigma::FpVerdict::No;
      e.fp_justification = kWreathNotFp;
    }
    e.checks = {"rank", "rank-consistency"};
    e.citations = {"l'(Z^k wr Z^d) = w^d*k"};
    return e;
  }
  if (name == "CwrZ") {
    Int m = need(params, "m");
    if (m < 2) throw CatalogError("parameter 'm' outside its documented range");
    int d = need_int(params, "d", 0);
    e.descriptor = GroupDescriptor::wreath_cyclic(m, d);
    int dm = grouprank::delta(m);
    if (d == 0)
      e.expected = RankResult::exact(Ordinal());
    else if (d == 1)
      e.expected = RankResult::exact(Ordinal::finite(dm + 1));
    else
      e.expected = RankResult::exact(wpow(d - 1, dm));
    e.fp = d == 0 ? sigma::FpVerdict::Yes : sigma::FpVerdict::No;
    e.fp_justification = d == 0 ? "finite groups are finitely presented" : kWreathNotFp;
    e.checks = {"rank", "rank-consistency"};
    e.citations = {"l'(C_m wr Z^(d+1)) = w^d*delta(m)", "l'(C_m wr Z) = delta(m)+1"};
    return e;
  }
  if (name == "FM") {
    int d = need_int(params, "d", 2);
    e.descriptor = GroupDescriptor::free_metabelian(d);
    e.expected = RankResult::exact(wpow(d, Int(d - 1)));
    e.fp = sigma::FpVerdict::Unknown;
    e.fp_justification = "no implemented criterion decides the free metabelian module";
    e.checks = {"rank", "rank-consistency", "magnus-commutators", "commutators-in-N0"};
    e.citations = {"l'(FM_d) = w^d*(d-1)"};
    return e;
  }
  if (name == "H") {
    int d = need_int(params, "d", 1);
    e.descriptor = h_descriptor(d);
    e.expected = RankResult::exact(wpow(d));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification =
        "Gamma^pm(A_d) = 0 via the tensor decomposition; Bieri-Strebel criterion";
    e.bs_module = sigma::BSModule::tensor_power(d);
    e.checks = {"rank", "rank-consistency", "matrices-commute", "commutator-nonzero",
                "fp-sigma"};
    e.citations = {"cb(H_d) = w^d"};
    return e;
  }
  if (name == "Gamma") {
    int d = need_int(params, "d", 1);
    e.descriptor = GroupDescriptor::virtually_metabelian(h_descriptor(d), Int(d), d + 1);
    e.expected = RankResult::exact(wpow(d));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification = "finite-index overgroup of the finitely presented H_d";
    e.bs_module = sigma::BSModule::tensor_power(d);
    e.checks = {"rank", "rank-consistency", "shift-order", "fp-sigma"};
    e.citations = {"cb(Gamma_d) = w^d"};
    return e;
  }
  if (name == "GammaPrime") {
    int d = need_int(params, "d", 1);
    if (d % 2 == 0) throw CatalogError("GammaPrime is defined for odd d");
    e.descriptor =
        GroupDescriptor::virtually_metabelian(h_descriptor(d), Int(2 * d), d + 1);
    e.expected = RankResult::exact(wpow(d));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification = "finite-index overgroup of the finitely presented H_d";
    e.bs_module = sigma::BSModule::tensor_power(d);
    e.checks = {"rank", "rank-consistency", "twist-order", "fp-sigma"};
    e.citations = {"cb(Gamma'_d) = w^d"};
    return e;
  }
  if (name == "Lambda") {
    int d = need_int(params, "d", 1);
    e.descriptor =
        GroupDescriptor::virtually_metabelian(lambda_prime_descriptor(d), Int(2 * d), d + 1);
    e.expected = RankResult::exact(wpow(d));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification =
        "finite-index overgroup of Lambda'_d, which is finitely presented as a subgroup "
        "of H_d projecting onto Q";
    e.checks = {"rank", "rank-consistency", "specialization-kernel"};
    e.citations = {"cb(Lambda_d) = w^d"};
    return e;
  }
  if (name == "LambdaPrime") {
    int d = need_int(params, "d", 1);
    e.descriptor = lambda_prime_descriptor(d);
    e.expected = RankResult::exact(wpow(d));
    e.fp = sigma::FpVerdict::Yes;
    e.fp_justification =
        "subgroup of the finitely presented H_d whose projection on Q is surjective";
    e.checks = {"rank", "rank-consistency", "specialization-kernel"};
    e.citations = {"cb(Lambda'_d) = w^d"};
    return e;
  }
  if (name == "Gn") {
    int d = need_int(params, "d", 2);
    int n = need_int(params, "n", 1);
    e.descriptor = gn_descriptor(d, n);
    e.expected = RankResult::exact(wpow(d - 1, n));
    e.fp = sigma::FpVerdict::Unknown;
    e.fp_justification = "the invariant of Z[Q]/(2-x_2)^n is not computed";
    e.checks = {"rank", "rank-consistency", "strict-split-bound", "inverse-identity"};
    e.citations = {"l'(G_n) = w^(d-1)*n", "cb(G) < w^d for split d-generated G"};
    return e;
  }
  if (name == "ZwrZ-external") {
    e.name = "ZwrZ-external";
    e.descriptor = GroupDescriptor::wreath_permutational({true, true, false});
    e.expected = RankResult::condensation();
    e.external = true;
    e.fp = sigma::FpVerdict::No;
    e.fp_justification =
        "Gamma(Z[Z]) contains both rays of Hom(Z,R), so Gamma^pm != 0";
    e.bs_module = sigma::BSModule::explicit_fan(1, {{Int(1)}, {Int(-1)}});
    e.checks = {"external-condensation", "fp-sigma"};
    e.citations = {"cb^e(H wr G) = C for H != 1 and G infinite"};
    return e;
  }
  throw CatalogError("unknown catalog name '" + name + "'");
}

namespace {

void run_check(VerifyReport& report, const std::string& name,
               const std::function<std::string()>& body) {
  CheckResult r;
  r.name = name;
  try {
    r.detail = body();
    r.passed = true;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = ex.what();
  }
  report.checks.push_back(std::move(r));
}

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& what) { throw CheckFailure(what); }

// H_d generators as 2x2 matrices over A_d with a single module coordinate
MagnusMatrix h_gen_e(int d, int i) { return {Element::x_var(d, i), {Element(d)}}; }
MagnusMatrix h_gen_f(int d, int i) { return {Element::one_plus_var(d, i), {Element(d)}}; }
MagnusMatrix h_gen_u(int d) {
  return {Element::integer(d, 1), {Element::integer(d, 1)}};
}

std::string check_matrices_commute(int d) {
  std::vector<MagnusMatrix> diag;
  for (int i = 0; i < d; ++i) {
    diag.push_back(h_gen_e(d, i));
    diag.push_back(h_gen_f(d, i));
  }
  for (std::size_t a = 0; a < diag.size(); ++a)
    for (std::size_t b = a + 1; b < diag.size(); ++b)
      if (!laurent::is_identity(laurent::commutator(diag[a], diag[b])))
        fail("diagonal generators failed to commute");
  return "all diagonal generator pairs commute";
}

std::string check_commutator_nonzero(int d) {
  MagnusMatrix ue = laurent::mat_mul(h_gen_u(d), h_gen_e(d, 0));
  MagnusMatrix uf = laurent::mat_mul(h_gen_u(d), h_gen_f(d, 0));
  MagnusMatrix c = laurent::commutator(ue, uf);
  if (!c.t.is_one()) fail("commutator has a nontrivial diagonal");
  if (c.coords[0].is_zero()) fail("[ue_1, uf_1] collapsed to the identity");
  return "[ue_1, uf_1] has module part " + c.coords[0].str(true);
}

// sigma: u_i -> u_{i+1}, the coordinate shift of order d
std::string check_shift_order(int d) {
  std::vector<Element> sigma_map;
  for (int i = 0; i < d; ++i) sigma_map.push_back(Element::variable(d, (i + 1) % d));
  Element x1 = Element::x_var(d, 0);
  Element cur = x1;
  for (int k = 1; k <= d; ++k) {
    cur = cur.substitute(sigma_map);
    bool fixed = cur == x1;
    if (k < d && fixed && d > 1) fail("shift has order smaller than d");
    if (k == d && !fixed) fail("shift does not have order d");
  }
  return "coordinate shift has exact order " + std::to_string(d);
}

// gamma: x_i -> 1 - x_{i+1}, i.e. u_i -> -(1 + u_{i+1}); for odd d it has
// order 2d and gamma^{d+1} is the shift
std::string check_twist_order(int d) {
  std::vector<Element> gamma;
  for (int i = 0; i < d; ++i) gamma.push_back(-Element::one_plus_var(d, (i + 1) % d));
  Element x1 = Element::x_var(d, 0);
  Element x2 = Element::x_var(d, 1 % d);
  Element cur = x1;
  for (int k = 1; k <= 2 * d; ++k) {
    cur = cur.substitute(gamma);
    bool fixed = cur == x1;
    if (k == d && !(cur == Element::integer(d, 1) - x1))
      fail("gamma^d is not the complement map");
    if (k == d + 1 && !(cur == x2)) fail("gamma^(d+1) is not the shift");
    if (k < 2 * d && fixed && d > 1) fail("gamma has order smaller than 2d");
    if (k == 2 * d && !fixed) fail("gamma does not have order 2d");
  }
  return "gamma has exact order " + std::to_string(2 * d) +
         " and gamma^(d+1) shifts the coordinates";
}

std::string check_magnus_commutators(int d) {
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      MagnusMatrix c =
          laurent::commutator(laurent::magnus_generator(d, d, i),
                              laurent::magnus_generator(d, d, j));
      std::vector<int> inv(d, 0);
      inv[i] = -1;
      inv[j] = -1;
      Element unit = Element::monomial(d, inv, std::vector<int>(d, 0));
      Element one = Element::integer(d, 1);
      Element want_i = unit * (one - Element::variable(d, j));
      Element want_j = -(unit * (one - Element::variable(d, i)));
      for (int k = 0; k < d; ++k) {
        const Element& got = c.coords[k];
        if (k == i ? !(got == want_i)
                   : k == j ? !(got == want_j) : !got.is_zero())
          fail("commutator module part deviates from u_i^-1 u_j^-1((1-u_j)e_i-(1-u_i)e_j)");
      }
      if (!c.t.is_one()) fail("commutator is not unipotent");
    }
  return "all generator pairs match the closed form";
}

std::string check_commutators_in_n0(int d) {
  std::mt19937_64 rng(20260810 + d);
  std::vector<MagnusMatrix> gens;
  for (int i = 0; i < d; ++i) gens.push_back(laurent::magnus_generator(d, d, i));
  for (int trial = 0; trial < 12; ++trial) {
    MagnusMatrix w = laurent::magnus_identity(d, d);
    int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k)
      w = laurent::mat_mul(
          w, laurent::commutator(gens[rng() % d], gens[rng() % d]));
    Element acc(d);
    for (int i = 0; i < d; ++i)
      acc = acc + (Element::integer(d, 1) - Element::variable(d, i)) * w.coords[i];
    if (!acc.is_zero()) fail("a commutator product left the relation module N_0");
  }
  return "sampled commutator products satisfy sum (1-u_i) a_i = 0";
}

// all 2d generator images specialize to 1/2 and the derived module lands in
// the kernel of the specialization
std::string check_specialization_kernel(int d) {
  std::vector<Rational> half_point(d, Rational(-1, 2)); // u_i = -1/2, x_i = 1/2
  for (int i = 0; i < d; ++i) {
    if (Element::x_var(d, i).evaluate(half_point) != Rational(1, 2))
      fail("x_i does not specialize to 1/2");
    if (Element::one_plus_var(d, i).evaluate(half_point) != Rational(1, 2))
      fail("1-x_i does not specialize to 1/2");
  }
  MagnusMatrix u = h_gen_u(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MagnusMatrix a = laurent::mat_mul(u, h_gen_e(d, i));
      MagnusMatrix b = laurent::mat_mul(u, h_gen_f(d, j));
      MagnusMatrix c = laurent::commutator(a, b);
      if (!c.t.is_one()) fail("derived element is not in the module part");
      if (c.coords[0].is_zero()) fail("[ue_i, uf_j] collapsed");
      if (c.coords[0].evaluate(half_point) != Rational(0))
        fail("a derived module element does not vanish under the specialization");
    }
  return "generators map to 1/2 consistently; sampled kernel elements vanish";
}

// (1-u)*(1+(2-u)+...+(2-u)^{n-1}) = -1 modulo (2-u)^n, checked by expanding
// in powers of w = 2-u
std::string check_inverse_identity(int n) {
  using laurent::Poly;
  Poly u = Poly::variable(1, 0);
  Poly two_minus_u = Poly::constant(1, 2) - u;
  Poly sum = Poly::constant(1, 0);
  Poly pow = Poly::constant(1, 1);
  for (int k = 0; k < n; ++k) {
    sum = sum + pow;
    pow = pow * two_minus_u;
  }
  Poly p = (Poly::constant(1, 1) - u) * sum + Poly::constant(1, 1);
  // expand p(u) = p(2 - w) and require the first n coefficients to vanish
  std::vector<Int> wcoeffs(p.is_zero() ? 1 : p.max_degree(0) + 1, 0);
  for (const auto& [e, c] : p.terms()) {
    int k = e[0];
    // (2 - w)^k
    Int binom = 1;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) binom = binom * (k - j + 1) / j;
      Int pw2 = 1;
      for (int t = 0; t < k - j; ++t) pw2 *= 2;
      Int term = c * binom * pw2;
      if (j % 2 != 0) term = -term;
      if (static_cast<std::size_t>(j) >= wcoeffs.size()) wcoeffs.resize(j + 1, 0);
      wcoeffs[j] += term;
    }
  }
  for (int j = 0; j < n && j < static_cast<int>(wcoeffs.size()); ++j)
    if (wcoeffs[j] != 0) fail("(1-u_2) inverse identity fails modulo (2-x_2)^n");
  return "(1-u_2) * sum (1+(1-u_2))^k = -1 holds modulo (2-x_2)^n";
}

std::string check_rank(const CatalogEntry& e) {
  RankResult got = e.external ? grouprank::cb_external(e.descriptor)
                              : grouprank::cb_rank(e.descriptor);
  if (got.kind != e.expected.kind || !(got.interval == e.expected.interval))
    fail("rank " + got.str() + " != expected " + e.expected.str());
  return "rank = " + got.str();
}

std::string check_rank_consistency(const CatalogEntry& e) {
  if (e.external) return "external entries have no fallback path";
  RankResult exact = grouprank::cb_rank(e.descriptor);
  RankResult fb = grouprank::cb_rank(e.descriptor, /*fallback_only=*/true);
  if (!modlen::contains(fb.interval, exact.interval))
    fail("exact value " + exact.str() + " escapes the fallback interval " + fb.str());
  return "value " + exact.str() + " lies in the fallback interval " + fb.str();
}

std::string check_strict_split_bound(const CatalogEntry& e) {
  RankResult exact = grouprank::cb_rank(e.descriptor);
  const auto& f = e.descriptor.flags();
  if (!f.split || !f.generators) fail("entry is not a split presentation");
  Ordinal cap = Ordinal::omega_pow(Ordinal::finite(*f.generators));
  if (!(exact.value() < cap)) fail("split bound cb(G) < w^d violated");
  return exact.str() + " < w^" + std::to_string(*f.generators);
}

std::string check_external_condensation(const CatalogEntry& e) {
  RankResult got = grouprank::cb_external(e.descriptor);
  if (got.kind != RankResult::Kind::Condensation)
    fail("external rank is not the condensation symbol");
  return "cb^e = COND";
}

std::string check_fp_sigma(const CatalogEntry& e) {
  if (!e.bs_module) fail("no module is bound for the sigma check");
  sigma::FpVerdict got = sigma::finitely_presented(*e.bs_module);
  if (got != e.fp) fail("sigma verdict disagrees with the recorded fp fact");
  switch (got) {
    case sigma::FpVerdict::Yes: return "Gamma^pm = 0: finitely presented";
    case sigma::FpVerdict::No: return "Gamma^pm != 0: not finitely presented";
    default: return "Unknown";
  }
}

} // namespace

bool VerifyReport::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["entry"] = entry;
  j["ok"] = ok();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = arr;
  return j.dump(2);
}

VerifyReport verify(const CatalogEntry& entry, int param_bound) {
  VerifyReport report;
  report.entry = entry.name;
  for (const auto& [k, v] : entry.params) {
    if (k == "d" && v > param_bound)
      throw CatalogError("parameter above the verification bound");
    if (k == "n" && v > 8)
      throw CatalogError("parameter above the verification bound");
  }

  int d = entry.params.count("d") ? static_cast<int>(entry.params.at("d")) : 0;
  int n = entry.params.count("n") ? static_cast<int>(entry.params.at("n")) : 0;

  for (const auto& name : entry.checks) {
    if (name == "rank")
      run_check(report, name, [&] { return check_rank(entry); });
    else if (name == "rank-consistency")
      run_check(report, name, [&] { return check_rank_consistency(entry); });
    else if (name == "matrices-commute")
      run_check(report, name, [&] { return check_matrices_commute(d); });
    else if (name == "commutator-nonzero")
      run_check(report, name, [&] { return check_commutator_nonzero(d); });
    else if (name == "shift-order")
      run_check(report, name, [&] { return check_shift_order(d); });
    else if (name == "twist-order")
      run_check(report, name, [&] { return check_twist_order(d); });
    else if (name == "magnus-commutators")
      run_check(report, name, [&] { return check_magnus_commutators(d); });
    else if (name == "commutators-in-N0")
      run_check(report, name, [&] { return check_commutators_in_n0(d); });
    else if (name == "specialization-kernel")
      run_check(report, name, [&] { return check_specialization_kernel(d); });
    else if (name == "inverse-identity")
      run_check(report, name, [&] { return check_inverse_identity(n); });
    else if (name == "strict-split-bound")
      run_check(report, name, [&] { return check_strict_split_bound(entry); });
    else if (name == "external-condensation")
      run_check(report, name, [&] { return check_external_condensation(entry); });
    else if (name == "fp-sigma")
      run_check(report, name, [&] { return check_fp_sigma(entry); });
    else
      run_check(report, name, [&]() -> std::string { fail("unknown check"); });
  }
  return report;
}

} // namespace cbcalc::catalog

// Acceptance suite: every golden value the calculator must reproduce, run at
// desk scale with exact equality (the results are closed forms). Prints one
// line per criterion and exits nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbcalc/catalog.hpp"
#include "cbcalc/dsl.hpp"
#include "cbcalc/laurent.hpp"
#include "cbcalc/oracle.hpp"
#include "cbcalc/sigma.hpp"

using namespace cbcalc;

namespace {

int g_failures = 0;

struct Criterion {
  const char* label;
  std::vector<std::string> problems;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(const char* l) : label(l) {}

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  ~Criterion() {
    double s = seconds();
    if (problems.empty()) {
      std::printf("PASS  %-28s (%.2fs)\n", label, s);
    } else {
      ++g_failures;
      std::printf("FAIL  %-28s (%.2fs)\n", label, s);
      for (const auto& p : problems) std::printf("      - %s\n", p.c_str());
    }
    std::fflush(stdout);
  }
};

std::string cb_str(const std::string& group_expr) {
  return grouprank::cb_rank(dsl::parse_group(group_expr)).str();
}

std::string cb_space_str(const std::string& group_expr) {
  return grouprank::cb_space(dsl::parse_group(group_expr)).str();
}

void golden_ranks() {
  Criterion c("1. golden ranks");
  struct Case {
    std::string expr, want;
  };
  std::vector<Case> cases = {
      {"Z^3", "3"},
      {"Heisenberg", "3"},
      {"wreath(base=Z^2, d=3)", "w^3*2"},
      {"wreath(base=C(18), d=2)", "w*3"},
      {"wreath(base=C(18), d=1)", "4"},
      {"FM(2)", "w^2"},
      {"FM(3)", "w^3*2"},
      {"FM(4)", "w^4*3"},
      {"H(1)", "w"},
      {"H(2)", "w^2"},
      {"H(3)", "w^3"},
      {"Gamma(1)", "w"},
      {"Gamma(2)", "w^2"},
      {"Gamma(3)", "w^3"},
      {"Lambda(1)", "w"},
      {"Lambda(2)", "w^2"},
      {"Lambda(3)", "w^3"},
      {"Gn(2,1)", "w"},
      {"Gn(2,2)", "w*2"},
      {"Gn(2,3)", "w*3"},
      {"Gn(2,4)", "w*4"},
      {"Gn(2,5)", "w*5"},
  };
  for (int k = 1; k <= 5; ++k)
    cases.push_back({"wreath(base=Z^" + std::to_string(k) + ", d=0)", std::to_string(k)});

  for (const auto& t : cases) {
    std::string got = cb_str(t.expr);
    c.require(got == t.want, "cb(" + t.expr + ") = " + got + ", want " + t.want);
    // the space rank is the point rank plus one
    std::string space = cb_space_str(t.expr);
    std::string want_space = format(add(parse_ordinal(t.want), Ordinal::finite(1)));
    c.require(space == want_space,
              "CB space of " + t.expr + " = " + space + ", want " + want_space);
  }
  c.require(c.seconds() < 1.0, "golden ranks exceeded the 1s budget");
}

void bieri_strebel_fan() {
  Criterion c("2. Bieri-Strebel fan");
  sigma::BSModule m = sigma::BSModule::classical();
  auto rays = sigma::standard_ray_sweep(360);
  auto verdicts = sigma::sweep_rays(m, rays, /*window=*/12, /*parallel=*/true);

  auto fan_rays = sigma::gamma_rays_classical();
  std::set<std::vector<Int>> fan(fan_rays.begin(), fan_rays.end());
  c.require(fan == std::set<std::vector<Int>>{{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}},
            "classical fan is not the three expected rays");

  int in = 0, out = 0, inconclusive = 0, both = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    if (v.certificate && v.witness) ++both;
    switch (v.kind) {
      case sigma::GammaVerdict::Kind::InGamma:
        ++in;
        c.require(fan.count(v.ray) == 1, "certificate issued off the fan");
        c.require(v.certificate && sigma::verify_certificate(m, rays[i], *v.certificate),
                  "certificate failed verification");
        break;
      case sigma::GammaVerdict::Kind::NotInGamma:
        ++out;
        c.require(fan.count(v.ray) == 0, "witness found on the fan");
        c.require(v.witness && sigma::verify_witness(m, rays[i], *v.witness),
                  "witness failed verification");
        break;
      default:
        ++inconclusive;
    }
  }
  c.require(in == 3, "expected 3 fan rays in the sweep, got " + std::to_string(in));
  c.require(out == 357, "expected 357 witnessed rays, got " + std::to_string(out));
  c.require(inconclusive == 0, "sweep left rays undecided");
  c.require(both == 0, "a ray carries both a certificate and a witness");
  c.require(c.seconds() < 10.0, "fan sweep exceeded the 10s budget");
}

void finite_presentability() {
  Criterion c("3. finite presentability");
  for (int d = 1; d <= 3; ++d) {
    sigma::BSModule ad = sigma::BSModule::tensor_power(d);
    c.require(sigma::gamma_pm(ad).kind == sigma::GammaPm::Kind::Zero,
              "Gamma^pm(A_" + std::to_string(d) + ") != 0");
    c.require(sigma::finitely_presented(ad) == sigma::FpVerdict::Yes,
              "fp(A_" + std::to_string(d) + ") != Yes");

    catalog::CatalogEntry h = catalog::get("H", {{"d", d}});
    c.require(h.fp == sigma::FpVerdict::Yes, "catalog fp(H_d) != Yes");
    grouprank::RankResult ext =
        grouprank::cb_external(h.descriptor, h.fp == sigma::FpVerdict::Yes);
    std::string want = format(Ordinal::omega_pow(Ordinal::finite(d)));
    c.require(ext.str() == want,
              "cb^e(H_" + std::to_string(d) + ") = " + ext.str() + ", want " + want);
  }
  catalog::CatalogEntry z = catalog::get("ZwrZ-external", {});
  grouprank::RankResult ext = grouprank::cb_external(z.descriptor);
  c.require(ext.kind == grouprank::RankResult::Kind::Condensation,
            "cb^e(Z wr Z) is not the condensation symbol");
}

void magnus_identities() {
  Criterion c("4. Magnus identities");
  using laurent::Element;
  for (int d = 2; d <= 4; ++d)
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        laurent::MagnusMatrix com =
            laurent::commutator(laurent::magnus_generator(d, d, i),
                                laurent::magnus_generator(d, d, j));
        std::vector<int> inv(d, 0);
        inv[i] = -1;
        inv[j] = -1;
        Element unit = Element::monomial(d, inv, std::vector<int>(d, 0));
        Element one = Element::integer(d, 1);
        Element want_i = unit * (one - Element::variable(d, j));
        Element want_j = -(unit * (one - Element::variable(d, i)));
        bool match = com.t.is_one() && com.coords[i] == want_i && com.coords[j] == want_j;
        for (int k = 0; match && k < d; ++k)
          if (k != i && k != j) match = com.coords[k].is_zero();
        c.require(match, "commutator formula fails at d=" + std::to_string(d));
        // the relation module: sum (1-u_k) a_k = 0
        Element rel(d);
        for (int k = 0; k < d; ++k)
          rel = rel + (one - Element::variable(d, k)) * com.coords[k];
        c.require(rel.is_zero(), "commutator leaves N_0 at d=" + std::to_string(d));
      }

  // [ue_1, uf_1] is nontrivial in the H_1 representation
  laurent::MagnusMatrix e1{Element::x_var(1, 0), {Element(1)}};
  laurent::MagnusMatrix f1{Element::one_plus_var(1, 0), {Element(1)}};
  laurent::MagnusMatrix u{Element::integer(1, 1), {Element::integer(1, 1)}};
  laurent::MagnusMatrix com = laurent::commutator(laurent::mat_mul(u, e1),
                                                  laurent::mat_mul(u, f1));
  c.require(!laurent::is_identity(com), "[ue_1, uf_1] = 1 in the H_1 representation");
}

void oracle_suites() {
  Criterion c("5. oracle suites");
  oracle::Report delta = oracle::check_delta_agreement(128, /*parallel=*/true);
  c.require(delta.ok(), "delta agreement: " + std::to_string(delta.violations) +
                            " violations");
  oracle::Report ext = oracle::check_ext_bounds(1000, 20260810, /*parallel=*/true);
  c.require(ext.cases == 1000 && ext.ok(), "ext bounds violated");
  oracle::Report convex = oracle::check_convex_realization_all(64, /*parallel=*/true);
  c.require(convex.ok(), "convex realization violated");
  oracle::Report action = oracle::check_finite_action_bounds(200, 20260810, /*parallel=*/true);
  c.require(action.cases == 200 && action.ok(), "finite action bounds violated");
  c.require(c.seconds() < 60.0, "oracle suites exceeded the 60s budget");
}

void ordinal_battery() {
  Criterion c("6. ordinal law battery");
  oracle::Report laws = oracle::recheck_ordinal_laws(10000, 20260810, 500, /*parallel=*/true);
  c.require(laws.ok(), "ordinal law battery reported " + std::to_string(laws.violations) +
                           " violations");
  c.require(laws.cases == 10000 + 500LL * 500LL, "battery ran the wrong case count");
}

void rule_consistency() {
  Criterion c("7. rule consistency");
  std::vector<catalog::CatalogEntry> entries;
  entries.push_back(catalog::get("Z", {{"k", 3}}));
  entries.push_back(catalog::get("Heisenberg", {}));
  for (int d = 0; d <= 3; ++d)
    for (int k = 1; k <= 3; ++k) entries.push_back(catalog::get("ZwrZ", {{"k", k}, {"d", d}}));
  for (int d = 1; d <= 3; ++d) entries.push_back(catalog::get("CwrZ", {{"m", 18}, {"d", d}}));
  for (int d = 2; d <= 4; ++d) entries.push_back(catalog::get("FM", {{"d", d}}));
  for (int d = 1; d <= 3; ++d) {
    entries.push_back(catalog::get("H", {{"d", d}}));
    entries.push_back(catalog::get("Gamma", {{"d", d}}));
    entries.push_back(catalog::get("Lambda", {{"d", d}}));
    entries.push_back(catalog::get("LambdaPrime", {{"d", d}}));
  }
  entries.push_back(catalog::get("GammaPrime", {{"d", 1}}));
  entries.push_back(catalog::get("GammaPrime", {{"d", 3}}));
  for (int n = 1; n <= 5; ++n) entries.push_back(catalog::get("Gn", {{"d", 2}, {"n", n}}));

  for (const auto& e : entries) {
    if (e.external) continue;
    grouprank::RankResult exact = grouprank::cb_rank(e.descriptor);
    grouprank::RankResult fb = grouprank::cb_rank(e.descriptor, /*fallback_only=*/true);
    c.require(modlen::contains(fb.interval, exact.interval),
              e.name + ": exact " + exact.str() + " escapes fallback " + fb.str());
    c.require(exact.kind == e.expected.kind && exact.interval == e.expected.interval,
              e.name + ": rank " + exact.str() + " != expected " + e.expected.str());
  }

  // split G_n values stay strictly below w^2
  Ordinal cap = Ordinal::omega_pow(Ordinal::finite(2));
  for (int n = 1; n <= 5; ++n) {
    grouprank::RankResult r =
        grouprank::cb_rank(catalog::get("Gn", {{"d", 2}, {"n", n}}).descriptor);
    c.require(r.value() < cap, "G_n value " + r.str() + " is not below w^2");
  }
}

void order_three_symmetry() {
  Criterion c("8. order-three symmetry");
  using laurent::Element;
  Element tau = Element::monomial(1, {-1}, {1}, -1); // u -> -(1+u)/u

  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 200; ++trial) {
    Element a(1);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      int ue = static_cast<int>(rng() % 7) - 3;
      int ve = static_cast<int>(rng() % 7) - 3;
      Int coeff = static_cast<long long>(rng() % 9) - 4;
      if (coeff == 0) coeff = 1;
      a = a + Element::monomial(1, {ue}, {ve}, coeff);
    }
    Element cur = a;
    for (int k = 0; k < 3; ++k) cur = cur.substitute({tau});
    if (!(cur == a)) {
      c.require(false, "cube of the substitution moved " + a.str());
      break;
    }
  }

  // induced action on exponent pairs: (m,n) -> (m,n) * [[-1,1],[-1,0]], cube = id
  const long long A[2][2] = {{-1, 1}, {-1, 0}};
  long long M[2][2] = {{1, 0}, {0, 1}};
  for (int k = 0; k < 3; ++k) {
    long long N[2][2];
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) N[r][s] = M[r][0] * A[0][s] + M[r][1] * A[1][s];
    M[0][0] = N[0][0];
    M[0][1] = N[0][1];
    M[1][0] = N[1][0];
    M[1][1] = N[1][1];
  }
  c.require(M[0][0] == 1 && M[0][1] == 0 && M[1][0] == 0 && M[1][1] == 1,
            "exponent matrix cube is not the identity");
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      auto img = Element::monomial(1, {m}, {n}).substitute({tau}).as_unit();
      bool ok = img && img->u_exps[0] == m * A[0][0] + n * A[1][0] &&
                img->v_exps[0] == m * A[0][1] + n * A[1][1];
      c.require(ok, "exponent action deviates from [[-1,1],[-1,0]]");
    }
}

} // namespace

int main() {
  std::printf("acceptance suite\n");
  golden_ranks();
  bieri_strebel_fan();
  finite_presentability();
  magnus_identities();
  oracle_suites();
  ordinal_battery();
  rule_consistency();
  order_three_symmetry();
  if (g_failures == 0) {
    std::printf("all criteria PASS\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbcalc/catalog.hpp"
#include "cbcalc/dsl.hpp"
#include "cbcalc/oracle.hpp"
#include "cbcalc/sigma.hpp"

namespace {

using namespace cbcalc;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

nlohmann::json interval_json(const modlen::OrdinalInterval& iv) {
  nlohmann::json j;
  if (iv.is_exact()) {
    j["kind"] = "exact";
    j["value"] = format(iv.lower);
    j["value_cnf"] = nlohmann::json::parse(ordinal_to_json(iv.lower));
  } else {
    j["kind"] = "interval";
    j["lower"] = format(iv.lower);
    j["upper"] = format(iv.upper);
    j["upper_strict"] = iv.upper_strict;
    j["lower_cnf"] = nlohmann::json::parse(ordinal_to_json(iv.lower));
    j["upper_cnf"] = nlohmann::json::parse(ordinal_to_json(iv.upper));
  }
  return j;
}

nlohmann::json rank_json(const grouprank::RankResult& r) {
  using K = grouprank::RankResult::Kind;
  if (r.kind == K::Condensation) return {{"kind", "condensation"}, {"value", "COND"}};
  if (r.kind == K::Unknown) return {{"kind", "unknown"}};
  return interval_json(r.interval);
}

nlohmann::json trace_json(const grouprank::DerivationTrace& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : t)
    arr.push_back({{"rule", s.rule}, {"law", s.law}, {"value", s.value}});
  return arr;
}

void print_trace(const grouprank::DerivationTrace& t) {
  for (const auto& s : t)
    std::cout << "  [" << s.rule << "] " << s.law << "  =>  " << s.value << "\n";
}

int run_eval(const std::string& text, bool trace, bool json_out, bool space, bool external,
             const std::string& fp_fact, bool fallback, bool unicode) {
  dsl::DescriptorDocument doc = dsl::parse_document(text);
  nlohmann::json j;
  j["input"] = text;

  if (doc.kind == dsl::DescriptorDocument::Kind::Module) {
    const auto& m = *doc.module;
    modlen::OrdinalInterval len = modlen::length(m);
    modlen::OrdinalInterval red = modlen::reduced_length(m);
    j["kind"] = "module";
    j["length"] = interval_json(len);
    j["reduced_length"] = interval_json(red);
    try {
      j["krull_dim"] = modlen::krull_dim(m);
    } catch (const modlen::AmbiguousBoundError&) {
      j["krull_dim"] = nullptr;
    }
    if (json_out) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "length          = " << len.str(unicode) << "\n";
      std::cout << "reduced length  = " << red.str(unicode) << "\n";
      if (!j["krull_dim"].is_null())
        std::cout << "krull dimension = " << j["krull_dim"].get<int>() << "\n";
    }
    return kExitOk;
  }

  const auto& g = *doc.group;
  grouprank::RankResult r;
  std::string op;
  if (external) {
    op = "cb_external";
    std::optional<bool> fact;
    if (fp_fact == "yes") fact = true;
    if (fp_fact == "no") fact = false;
    r = grouprank::cb_external(g, fact);
  } else if (space) {
    op = "cb_space";
    r = grouprank::cb_space(g);
  } else {
    op = "cb";
    r = grouprank::cb_rank(g, fallback);
  }
  j["kind"] = "group";
  j["operation"] = op;
  j["result"] = rank_json(r);
  j["trace"] = trace_json(r.trace);
  if (json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << op << " = " << r.str(unicode) << "\n";
    if (trace) print_trace(r.trace);
  }
  return r.kind == grouprank::RankResult::Kind::Unknown ? kExitInconclusive : kExitOk;
}

std::vector<Rational> parse_ray_text(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw dsl::DslError({"empty ray coordinate", 1, 1});
    std::size_t slash = part.find('/');
    try {
      if (slash == std::string::npos)
        out.push_back(Rational(Int(part)));
      else
        out.push_back(Rational(Int(part.substr(0, slash)), Int(part.substr(slash + 1))));
    } catch (const std::exception&) {
      throw dsl::DslError({"bad ray coordinate '" + part + "'", 1, 1});
    }
  }
  if (out.empty()) throw dsl::DslError({"empty ray", 1, 1});
  return out;
}

int run_gamma(const std::string& module_text, const std::string& ray_text, int window,
              int sweep, bool parallel, bool json_out) {
  sigma::BSModule m = dsl::parse_bs_module(module_text);
  if (sweep > 0) {
    auto rays = sigma::standard_ray_sweep(sweep);
    auto verdicts = sigma::sweep_rays(m, rays, window, parallel);
    int in = 0, out = 0, inconclusive = 0;
    for (const auto& v : verdicts) {
      switch (v.kind) {
        case sigma::GammaVerdict::Kind::InGamma: ++in; break;
        case sigma::GammaVerdict::Kind::NotInGamma: ++out; break;
        default: ++inconclusive;
      }
    }
    if (json_out) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& v : verdicts)
        arr.push_back(nlohmann::json::parse(sigma::verdict_to_json(v)));
      nlohmann::json j{{"module", m.str()},
                       {"sweep", sweep},
                       {"window", window},
                       {"in_gamma", in},
                       {"not_in_gamma", out},
                       {"inconclusive", inconclusive},
                       {"verdicts", arr}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "sweep of " << sweep << " rays: " << in << " in Gamma, " << out
                << " outside, " << inconclusive << " inconclusive\n";
      for (const auto& v : verdicts)
        if (v.kind == sigma::GammaVerdict::Kind::InGamma) std::cout << "  " << v.str() << "\n";
    }
    return inconclusive > 0 ? kExitInconclusive : kExitOk;
  }

  sigma::Character v = sigma::Character::of(parse_ray_text(ray_text));
  sigma::GammaVerdict verdict = sigma::decide_ray(m, v, window);
  if (json_out) {
    std::cout << nlohmann::json::parse(sigma::verdict_to_json(verdict)).dump(2) << "\n";
  } else {
    std::cout << verdict.str() << "\n";
    if (verdict.certificate)
      std::cout << "  certificate: functional rides the family "
                << verdict.certificate->family() << " in factor "
                << verdict.certificate->factor << "\n";
    if (verdict.witness) {
      std::cout << "  witness: q = u^" << verdict.witness->qa << " (1+u)^"
                << verdict.witness->qb << " in factor " << verdict.witness->factor
                << ", q.1 =";
      for (const auto& t : verdict.witness->combination)
        std::cout << " + (" << t.coeff << ")*u^" << t.a << "(1+u)^" << t.b;
      std::cout << "\n";
    }
  }
  return verdict.kind == sigma::GammaVerdict::Kind::Inconclusive ? kExitInconclusive
                                                                 : kExitOk;
}

int run_fp_check(const std::string& module_text, bool json_out) {
  sigma::BSModule m = dsl::parse_bs_module(module_text);
  sigma::FpVerdict v = sigma::finitely_presented(m);
  const char* s = v == sigma::FpVerdict::Yes ? "Yes"
                  : v == sigma::FpVerdict::No ? "No"
                                              : "Unknown";
  if (json_out)
    std::cout << nlohmann::json{{"module", m.str()}, {"finitely_presented", s}}.dump(2)
              << "\n";
  else
    std::cout << "finitely presented: " << s << "\n";
  return v == sigma::FpVerdict::Unknown ? kExitInconclusive : kExitOk;
}

int run_catalog_check(const std::string& name, const std::vector<std::string>& kvs,
                      int bound, bool json_out) {
  std::map<std::string, Int> params;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw dsl::DslError({"catalog parameters look like d=2", 1, 1});
    params[kv.substr(0, eq)] = Int(kv.substr(eq + 1));
  }
  catalog::CatalogEntry entry = catalog::get(name, params);
  catalog::VerifyReport report = catalog::verify(entry, bound);
  if (json_out) {
    std::cout << report.to_json() << "\n";
  } else {
    std::cout << entry.name << ": expected " << entry.expected.str() << "\n";
    for (const auto& c : report.checks)
      std::cout << "  " << (c.passed ? "pass" : "FAIL") << "  " << c.name
                << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
  return report.ok() ? kExitOk : kExitVerificationFailure;
}

int report_exit(const oracle::Report& r, bool json_out) {
  if (json_out) {
    std::cout << r.to_json() << "\n";
  } else {
    std::cout << r.suite << ": " << r.cases << " cases, " << r.violations
              << " violations\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
  }
  return r.ok() ? kExitOk : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"cbcalc: ordinal lengths, Cantor-Bendixson ranks and Bieri-Strebel "
               "invariants of (virtually) metabelian groups"};
  app.require_subcommand(1);
  bool unicode = false;
  app.add_flag("--unicode", unicode, "print the omega glyph instead of 'w'");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a descriptor document");
  std::string eval_file, eval_expr, eval_format = "text", fp_fact = "unset";
  bool eval_trace = false, eval_space = false, eval_external = false, eval_fallback = false;
  eval->add_option("file", eval_file, "UTF-8 file containing 'group ...' or 'module ...'");
  eval->add_option("-e,--expr", eval_expr, "inline document text");
  eval->add_flag("--trace", eval_trace, "print the derivation trace");
  eval->add_option("--format", eval_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  eval->add_flag("--space", eval_space, "rank of the whole space (cb + 1)");
  eval->add_flag("--external", eval_external, "rank in the space of marked groups");
  eval->add_option("--fp", fp_fact, "finite presentability fact for --external")
      ->check(CLI::IsMember({"yes", "no", "unset"}));
  eval->add_flag("--fallback", eval_fallback, "use only the sandwich/cap rules");

  // ordinal
  auto* ordinal = app.add_subcommand("ordinal", "evaluate an ordinal expression");
  std::string ordinal_expr;
  ordinal->add_option("expr", ordinal_expr, "e.g. \"w+1 (+) w*2+3\" or \"reduce(w^2+3)\"")
      ->required();

  // gamma
  auto* gamma = app.add_subcommand("gamma", "Bieri-Strebel membership for a ray");
  std::string gamma_module = "classical", gamma_ray, gamma_format = "text";
  int gamma_window = sigma::default_window(), gamma_sweep = 0;
  bool gamma_parallel = false;
  gamma->add_option("--module", gamma_module, "classical | classical(mod=k) | A(d) | "
                                              "tensor(...) | fan(...) | laurentline");
  gamma->add_option("--ray", gamma_ray, "comma-separated rational coordinates");
  gamma->add_option("--window", gamma_window, "saturation window (CBCALC_WINDOW)");
  gamma->add_option("--sweep", gamma_sweep, "decide a standard N-ray sweep instead");
  gamma->add_flag("--parallel", gamma_parallel, "sweep rays in parallel");
  gamma->add_option("--format", gamma_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // fp-check
  auto* fp = app.add_subcommand("fp-check", "finite presentability via Gamma^pm");
  std::string fp_module;
  std::string fp_format = "text";
  fp->add_option("--module", fp_module, "module expression")->required();
  fp->add_option("--format", fp_format, "text|json")->check(CLI::IsMember({"text", "json"}));

  // catalog
  auto* cat = app.add_subcommand("catalog", "named groups with verified facts");
  auto* cat_list = cat->add_subcommand("list", "list catalog families");
  auto* cat_check = cat->add_subcommand("check", "run the entry verifications");
  std::string cat_name, cat_format = "text";
  std::vector<std::string> cat_params;
  int cat_bound = 4;
  cat_check->add_option("name", cat_name, "family name, e.g. H")->required();
  cat_check->add_option("params", cat_params, "parameters, e.g. d=2 n=3");
  cat_check->add_option("--bound", cat_bound, "verification bound on d");
  cat_check->add_option("--format", cat_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // oracle
  auto* orc = app.add_subcommand("oracle", "independent brute-force verifiers");
  std::string suite, orc_format = "text", orc_module = "classical", orc_input;
  std::uint64_t seed = 20260810;
  int samples = 1000;
  long long max_order = 128;
  bool orc_parallel = false;
  orc->add_option("suite", suite,
                  "delta | ext-bounds | convex | finite-action | ordinal-laws | "
                  "sigma-recheck")
      ->required();
  orc->add_option("--seed", seed, "PRNG seed");
  orc->add_option("--samples", samples, "sample count for randomized suites");
  orc->add_option("--max-order", max_order, "exhaustive order bound");
  orc->add_option("--module", orc_module, "module for sigma-recheck");
  orc->add_option("--input", orc_input, "file of verdict JSON lines for sigma-recheck");
  orc->add_flag("--parallel", orc_parallel, "run cases in parallel");
  orc->add_option("--format", orc_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) {
      std::string text = eval_expr;
      if (text.empty()) {
        if (eval_file.empty()) {
          std::cerr << "eval needs a file or --expr\n";
          return kExitUsage;
        }
        std::ifstream in(eval_file);
        if (!in) {
          std::cerr << "cannot open " << eval_file << "\n";
          return kExitUsage;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
      }
      return run_eval(text, eval_trace, eval_format == "json", eval_space, eval_external,
                      fp_fact, eval_fallback, unicode);
    }
    if (ordinal->parsed()) {
      std::cout << dsl::eval_ordinal_expr(ordinal_expr).str(unicode) << "\n";
      return kExitOk;
    }
    if (gamma->parsed()) {
      if (gamma_sweep == 0 && gamma_ray.empty()) {
        std::cerr << "gamma needs --ray or --sweep\n";
        return kExitUsage;
      }
      return run_gamma(gamma_module, gamma_ray, gamma_window, gamma_sweep, gamma_parallel,
                       gamma_format == "json");
    }
    if (fp->parsed()) return run_fp_check(fp_module, fp_format == "json");
    if (cat->parsed()) {
      if (cat_list->parsed()) {
        for (const auto& n : catalog::list_names()) std::cout << n << "\n";
        return kExitOk;
      }
      if (cat_check->parsed())
        return run_catalog_check(cat_name, cat_params, cat_bound, cat_format == "json");
      std::cerr << "catalog needs 'list' or 'check'\n";
      return kExitUsage;
    }
    if (orc->parsed()) {
      bool json_out = orc_format == "json";
      if (suite == "delta")
        return report_exit(oracle::check_delta_agreement(max_order, orc_parallel), json_out);
      if (suite == "ext-bounds")
        return report_exit(oracle::check_ext_bounds(samples, seed, orc_parallel), json_out);
      if (suite == "convex")
        return report_exit(oracle::check_convex_realization_all(max_order, orc_parallel),
                           json_out);
      if (suite == "finite-action")
        return report_exit(oracle::check_finite_action_bounds(samples, seed, orc_parallel),
                           json_out);
      if (suite == "ordinal-laws")
        return report_exit(oracle::recheck_ordinal_laws(samples, seed, 500, orc_parallel),
                           json_out);
      if (suite == "sigma-recheck") {
        sigma::BSModule m = dsl::parse_bs_module(orc_module);
        std::vector<sigma::GammaVerdict> verdicts;
        if (!orc_input.empty()) {
          std::ifstream in(orc_input);
          if (!in) {
            std::cerr << "cannot open " << orc_input << "\n";
            return kExitUsage;
          }
          std::string lineText;
          while (std::getline(in, lineText))
            if (!lineText.empty()) verdicts.push_back(sigma::verdict_from_json(lineText));
        } else {
          auto rays = sigma::standard_ray_sweep(360);
          verdicts = sigma::sweep_rays(m, rays, sigma::default_window(), orc_parallel);
        }
        return report_exit(oracle::recheck_sigma_artifacts(m, verdicts), json_out);
      }
      std::cerr << "unknown suite '" << suite << "'\n";
      return kExitUsage;
    }
  } catch (const dsl::DslError& e) {
    std::cerr << "parse error: " << e.diagnostic.str() << "\n";
    return kExitUsage;
  } catch (const OrdinalParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const catalog::CatalogError& e) {
    std::cerr << "catalog error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}

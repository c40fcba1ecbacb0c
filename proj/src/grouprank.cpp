#include "cbcalc/grouprank.hpp"

#include <sstream>

namespace cbcalc::grouprank {

using modlen::ModuleDescriptor;
using modlen::OrdinalInterval;

GroupDescriptor GroupDescriptor::polycyclic(std::vector<PolycyclicFactor> factors,
                                            bool supersolvable, bool nilpotent) {
  for (const auto& f : factors)
    if (f.kind == PolycyclicFactor::Kind::FreeAbelian && f.rank < 1)
      throw DescriptorError("free abelian factor needs rank >= 1");
  GroupDescriptor g(Kind::Polycyclic);
  g.factors_ = std::move(factors);
  g.nilpotent_ = nilpotent;
  g.supersolvable_ = supersolvable || nilpotent;
  return g;
}

GroupDescriptor GroupDescriptor::nilpotent_of_hirsch(int h) {
  if (h < 0) throw DescriptorError("Hirsch length must be >= 0");
  std::vector<PolycyclicFactor> fs(h, PolycyclicFactor::infinite_cyclic());
  return polycyclic(std::move(fs), true, true);
}

GroupDescriptor GroupDescriptor::free_abelian(int k) {
  if (k < 0) throw DescriptorError("rank must be >= 0");
  std::vector<PolycyclicFactor> fs;
  if (k > 0) fs.push_back(PolycyclicFactor::free_abelian(k));
  return polycyclic(std::move(fs), true, true);
}

GroupDescriptor GroupDescriptor::wreath_free_abelian(int base_rank, int top_rank) {
  if (base_rank < 1) throw DescriptorError("wreath base rank must be >= 1");
  if (top_rank < 0) throw DescriptorError("wreath top rank must be >= 0");
  GroupDescriptor g(Kind::Wreath);
  g.base_rank_ = base_rank;
  g.top_rank_ = top_rank;
  return g;
}

GroupDescriptor GroupDescriptor::wreath_cyclic(Int modulus, int top_rank) {
  if (modulus < 2) throw DescriptorError("cyclic base needs modulus >= 2");
  if (top_rank < 0) throw DescriptorError("wreath top rank must be >= 0");
  GroupDescriptor g(Kind::Wreath);
  g.modulus_ = std::move(modulus);
  g.top_rank_ = top_rank;
  return g;
}

GroupDescriptor GroupDescriptor::free_metabelian(int d) {
  if (d < 2) throw DescriptorError("free metabelian descriptor needs d >= 2");
  GroupDescriptor g(Kind::FreeMetabelian);
  g.base_rank_ = d;
  return g;
}

GroupDescriptor GroupDescriptor::metabelian_ext(ModuleDescriptor module, MetabelianFlags flags) {
  if (flags.q_rank < 0) throw DescriptorError("Q-rank must be >= 0");
  if (flags.generators && *flags.generators < 1)
    throw DescriptorError("generator count must be >= 1");
  if (flags.prime_quotient) {
    if (!flags.faithful)
      throw DescriptorError("a prime-quotient structure asserts a faithful action");
    if (flags.prime_quotient->coheight < 0 || flags.prime_quotient->rank < 1)
      throw DescriptorError("prime quotient needs coheight >= 0 and rank >= 1");
  }
  GroupDescriptor g(Kind::MetabelianExt);
  g.module_.push_back(std::move(module));
  g.mflags_ = std::move(flags);
  return g;
}

GroupDescriptor GroupDescriptor::virtually_metabelian(GroupDescriptor inner, Int index,
                                                      std::optional<int> invariant_ideal_dim) {
  if (index < 1) throw DescriptorError("index must be >= 1");
  if (invariant_ideal_dim && *invariant_ideal_dim < 1)
    throw DescriptorError("invariant ideal dimension must be >= 1");
  if (inner.kind() == Kind::WreathPermutational || inner.kind() == Kind::VirtuallyMetabelian)
    throw DescriptorError("inner group must be metabelian or polycyclic");
  GroupDescriptor g(Kind::VirtuallyMetabelian);
  g.inner_.push_back(std::move(inner));
  g.modulus_ = std::move(index);
  g.ideal_dim_ = invariant_ideal_dim;
  return g;
}

GroupDescriptor GroupDescriptor::wreath_permutational(WreathPermutationalFlags flags) {
  if (flags.finitely_presented && flags.base_nontrivial && flags.diag_orbits_infinite)
    throw DescriptorError(
        "a wreath product with infinitely many diagonal orbits is never finitely presented");
  GroupDescriptor g(Kind::WreathPermutational);
  g.wpflags_ = flags;
  return g;
}

const ModuleDescriptor& GroupDescriptor::module() const {
  if (module_.empty()) throw DescriptorError("descriptor carries no module");
  return module_[0];
}

const GroupDescriptor& GroupDescriptor::inner() const {
  if (inner_.empty()) throw DescriptorError("descriptor carries no inner group");
  return inner_[0];
}

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
  return a.kind_ == b.kind_ && a.factors_ == b.factors_ &&
         a.supersolvable_ == b.supersolvable_ && a.nilpotent_ == b.nilpotent_ &&
         a.base_rank_ == b.base_rank_ && a.top_rank_ == b.top_rank_ &&
         a.modulus_ == b.modulus_ && a.module_ == b.module_ && a.mflags_ == b.mflags_ &&
         a.inner_ == b.inner_ && a.ideal_dim_ == b.ideal_dim_ && a.wpflags_ == b.wpflags_;
}

RankResult RankResult::exact(Ordinal v, DerivationTrace t) {
  RankResult r;
  r.kind = Kind::Exact;
  r.interval = OrdinalInterval::exact(std::move(v));
  r.trace = std::move(t);
  return r;
}

RankResult RankResult::of_interval(OrdinalInterval iv, DerivationTrace t) {
  RankResult r;
  r.kind = iv.is_exact() ? Kind::Exact : Kind::Interval;
  r.interval = std::move(iv);
  r.trace = std::move(t);
  return r;
}

RankResult RankResult::condensation(DerivationTrace t) {
  RankResult r;
  r.kind = Kind::Condensation;
  r.trace = std::move(t);
  return r;
}

RankResult RankResult::unknown(DerivationTrace t) {
  RankResult r;
  r.kind = Kind::Unknown;
  r.trace = std::move(t);
  return r;
}

const Ordinal& RankResult::value() const {
  if (kind != Kind::Exact) throw GroupRankError("result is not an exact ordinal");
  return interval.lower;
}

std::string RankResult::str(bool unicode) const {
  switch (kind) {
    case Kind::Exact:
    case Kind::Interval: return interval.str(unicode);
    case Kind::Condensation: return unicode ? "\xf0\x9d\x94\xa0" : "COND";
    case Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

int delta(Int m) {
  if (m < 1) throw DescriptorError("delta is defined for positive integers");
  int count = 0;
  for (Int p = 2; p * p <= m; ++p)
    while (m % p == 0) {
      m /= p;
      ++count;
    }
  if (m > 1) ++count;
  return count;
}

int hirsch_length(const GroupDescriptor& g) {
  if (g.kind() != GroupDescriptor::Kind::Polycyclic)
    throw DescriptorError("Hirsch length takes a polycyclic descriptor");
  int h = 0;
  for (const auto& f : g.factors())
    if (f.is_infinite()) h += f.rank;
  return h;
}

namespace {

Ordinal wpow(int e, Int c = 1) { return Ordinal::omega_pow(Ordinal::finite(e), std::move(c)); }

void push(DerivationTrace& t, std::string rule, std::string law, const OrdinalInterval& v) {
  t.push_back({std::move(rule), std::move(law), v.str()});
}

// A metabelian-extension reading of wreath and free metabelian descriptors;
// the common substrate for the sandwich/cap fallback path and for the
// finite-index bounds.
struct MetabelianView {
  ModuleDescriptor module;
  MetabelianFlags flags;
};

std::optional<MetabelianView> as_metabelian_view(const GroupDescriptor& g) {
  using K = GroupDescriptor::Kind;
  switch (g.kind()) {
    case K::MetabelianExt:
      return MetabelianView{g.module(), g.flags()};
    case K::Wreath: {
      MetabelianFlags f;
      f.q_rank = g.top_rank();
      f.q_torsion_free = true;
      f.faithful = true;
      f.module_contains_centralizer = true;
      f.split = true;
      if (g.base_rank() > 0) {
        // Z^k wr Z^d = Z[Q]^k x| Q: free module over a domain of dimension d+1
        return MetabelianView{
            ModuleDescriptor::torsion_free(g.top_rank() + 1, g.base_rank()), f};
      }
      // C_m wr Z^d: Z/m[Q] is an iterated extension of delta(m) copies of
      // Z/p[Q], each a domain of dimension d
      if (g.top_rank() == 0)
        return MetabelianView{ModuleDescriptor::finite(delta(g.modulus())), f};
      std::vector<ModuleDescriptor> ch(
          delta(g.modulus()), ModuleDescriptor::critical(g.top_rank()));
      return MetabelianView{ModuleDescriptor::series(std::move(ch)), f};
    }
    case K::FreeMetabelian: {
      // derived subgroup is torsion-free of rank d-1 over Z[Z^d]
      MetabelianFlags f;
      f.q_rank = g.base_rank();
      f.q_torsion_free = true;
      f.faithful = true;
      f.module_contains_centralizer = true;
      f.generators = g.base_rank();
      return MetabelianView{
          ModuleDescriptor::torsion_free(g.base_rank() + 1, Int(g.base_rank() - 1)), f};
    }
    default:
      return std::nullopt;
  }
}

// sandwich l'(M) <= cb(G) < l'(M) + w, then the split/generator/Q-rank caps
RankResult sandwich_with_caps(const MetabelianView& view, DerivationTrace trace) {
  OrdinalInterval mrl = modlen::reduced_length(view.module);
  OrdinalInterval iv;
  iv.lower = mrl.lower;
  iv.upper = add(mrl.upper, Ordinal::omega());
  iv.upper_strict = true;
  push(trace, "module-sandwich", "l'(M) <= cb(G) < l'(M) + w", iv);

  auto cap = [&](OrdinalInterval bound, const char* rule, const char* law) {
    OrdinalInterval met;
    try {
      met = intersect(iv, bound);
    } catch (const modlen::AmbiguousBoundError&) {
      throw DescriptorError("flags are mutually inconsistent: empty bound intersection");
    }
    if (!(met == iv)) {
      iv = met;
      push(trace, rule, law, iv);
    }
  };

  const auto& f = view.flags;
  OrdinalInterval qcap{Ordinal(), wpow(f.q_rank + 1), true};
  cap(qcap, "qrank-cap", "cb(G) < w^(rk_Q(Q)+1)");
  if (f.split && f.generators)
    cap({Ordinal(), wpow(*f.generators), true}, "split-cap",
        "cb(G) < w^d for split d-generated G");
  if (f.generators && *f.generators >= 2)
    cap({Ordinal(), wpow(*f.generators, Int(*f.generators - 1)), false}, "generator-cap",
        "cb(G) <= w^d*(d-1) for d-generated G");
  return RankResult::of_interval(iv, std::move(trace));
}

RankResult eval_group(const GroupDescriptor& g, bool fallback_only);

RankResult eval_metabelian(const MetabelianView& view, bool fallback_only,
                           DerivationTrace trace) {
  const auto& f = view.flags;
  if (!fallback_only) {
    if (f.prime_quotient && f.prime_quotient->coheight >= 2) {
      Ordinal v = wpow(f.prime_quotient->coheight - 1, f.prime_quotient->rank);
      push(trace, "prime-torsion-free",
           "cb(G) = w^(d-1)*r for M torsion-free of rank r over Z[Q]/P, dim d >= 2, faithful",
           OrdinalInterval::exact(v));
      return RankResult::exact(v, std::move(trace));
    }
    OrdinalInterval mrl = modlen::reduced_length(view.module);
    if (mrl.is_exact() && mrl.lower.is_finite() && f.q_torsion_free) {
      // M = W(M): the whole group is its own Hirsch radical, and both sums of
      // the sandwich agree on finite ordinals
      Ordinal v = Ordinal::finite(mrl.lower.finite_value() + f.q_rank);
      push(trace, "hirsch-decomposition",
           "cb(G) = l'(M) + rk(Q) when l'(M) is finite and Q is free abelian",
           OrdinalInterval::exact(v));
      return RankResult::exact(v, std::move(trace));
    }
    // the radical split is syntactic; extension modules fall through to the sandwich
    std::optional<modlen::SplitResult> split;
    try {
      split = modlen::w_split(view.module);
    } catch (const modlen::NotComputableError&) {
    }
    if (split && split->part.is_zero_module() && mrl.is_exact()) {
      if (f.module_contains_centralizer) {
        push(trace, "module-own-centralizer",
             "l'(G) = l'_Q(M) when M contains its centralizer and W(M) = 0", mrl);
        return RankResult::of_interval(mrl, std::move(trace));
      }
      if (f.faithful) {
        push(trace, "hirsch-decomposition",
             "cb(G) = l'(M/W(M)) + h_G(Hir(G)); faithful and W(M) = 0 give Hir(G) = 1", mrl);
        return RankResult::of_interval(mrl, std::move(trace));
      }
    }
  }
  return sandwich_with_caps(view, std::move(trace));
}

RankResult eval_group(const GroupDescriptor& g, bool fallback_only) {
  using K = GroupDescriptor::Kind;
  DerivationTrace trace;
  switch (g.kind()) {
    case K::Polycyclic: {
      int h = hirsch_length(g);
      if (g.supersolvable() && !fallback_only) {
        push(trace, "polycyclic-supersolvable", "l'(G) = h(G) iff G supersolvable",
             OrdinalInterval::exact(Ordinal::finite(h)));
        return RankResult::exact(Ordinal::finite(h), std::move(trace));
      }
      int inf_factors = 0;
      for (const auto& fac : g.factors())
        if (fac.is_infinite()) ++inf_factors;
      OrdinalInterval iv{Ordinal::finite(inf_factors), Ordinal::finite(h), false};
      push(trace, "polycyclic-series",
           "l'(G) counts infinite subfactors of a normal series; h(G) caps it", iv);
      return RankResult::of_interval(iv, std::move(trace));
    }
    case K::Wreath: {
      auto view = as_metabelian_view(g);
      if (fallback_only) return eval_metabelian(*view, true, std::move(trace));
      if (g.base_rank() > 0) {
        Ordinal v = wpow(g.top_rank(), g.base_rank());
        push(trace, "wreath-free-abelian", "l'(Z^k wr Z^d) = w^d*k",
             OrdinalInterval::exact(v));
        return RankResult::exact(v, std::move(trace));
      }
      int dm = delta(g.modulus());
      if (g.top_rank() == 0) {
        push(trace, "wreath-cyclic", "finite groups have l' = 0",
             OrdinalInterval::exact(Ordinal()));
        return RankResult::exact(Ordinal(), std::move(trace));
      }
      if (g.top_rank() == 1) {
        Ordinal v = Ordinal::finite(dm + 1);
        push(trace, "wreath-cyclic", "l'(C_m wr Z) = delta(m) + 1",
             OrdinalInterval::exact(v));
        return RankResult::exact(v, std::move(trace));
      }
      Ordinal v = wpow(g.top_rank() - 1, dm);
      push(trace, "wreath-cyclic", "l'(C_m wr Z^(d+1)) = w^d*delta(m)",
           OrdinalInterval::exact(v));
      return RankResult::exact(v, std::move(trace));
    }
    case K::FreeMetabelian: {
      if (fallback_only)
        return eval_metabelian(*as_metabelian_view(g), true, std::move(trace));
      Ordinal v = wpow(g.base_rank(), Int(g.base_rank() - 1));
      push(trace, "free-metabelian", "l'(FM_d) = w^d*(d-1)", OrdinalInterval::exact(v));
      return RankResult::exact(v, std::move(trace));
    }
    case K::MetabelianExt:
      return eval_metabelian(*as_metabelian_view(g), fallback_only, std::move(trace));
    case K::VirtuallyMetabelian: {
      const GroupDescriptor& inner = g.inner();
      if (!fallback_only && g.invariant_ideal_dim() &&
          inner.kind() == K::MetabelianExt &&
          inner.flags().module_contains_centralizer) {
        Ordinal v = wpow(*g.invariant_ideal_dim() - 1);
        push(trace, "invariant-ideal",
             "l'_G(I) = w^(d-1) for a nonzero invariant ideal in a domain of dimension d",
             OrdinalInterval::exact(v));
        return RankResult::exact(v, std::move(trace));
      }
      auto view = as_metabelian_view(inner);
      if (!view)
        throw DescriptorError("finite-index bounds need a metabelian inner group");
      modlen::FiniteActionFlags mf;
      OrdinalInterval iv = modlen::finite_action_bounds(view->module, g.modulus(), mf);
      push(trace, "finite-index-bounds",
           "l_{G,d}(M) <= l_d(M) <= n*l_{G,d}(M) for the index-n action", iv);
      return RankResult::of_interval(iv, std::move(trace));
    }
    case K::WreathPermutational:
      throw HypothesisNotEstablishedError(
          "permutational wreath descriptors carry no rank structure");
  }
  throw DescriptorError("corrupt descriptor");
}

// exact answers must respect the interval the caps alone would give
void check_against_fallback(const GroupDescriptor& g, const RankResult& r) {
  if (r.kind != RankResult::Kind::Exact && r.kind != RankResult::Kind::Interval) return;
  RankResult fb;
  try {
    fb = eval_group(g, true);
  } catch (const modlen::ModLenError&) {
    return; // no fallback interval exists for this descriptor
  }
  if (!modlen::contains(fb.interval, r.interval))
    throw DescriptorError("flags are inconsistent: exact rule leaves the sandwich bounds");
}

} // namespace

RankResult reduced_length_group(const GroupDescriptor& g, bool fallback_only) {
  RankResult r = eval_group(g, fallback_only);
  if (!fallback_only) check_against_fallback(g, r);
  return r;
}

RankResult cb_rank(const GroupDescriptor& g, bool fallback_only) {
  if (g.kind() == GroupDescriptor::Kind::WreathPermutational)
    throw HypothesisNotEstablishedError(
        "cb needs max-n and residually finite quotients; not established for this descriptor");
  RankResult r = reduced_length_group(g, fallback_only);
  push(r.trace, "cb-bridge",
       "cb_H(G) = l'_H(G) for max-n groups with residually finite quotients", r.interval);
  return r;
}

RankResult cb_space(const GroupDescriptor& g) {
  RankResult r = cb_rank(g);
  OrdinalInterval iv = r.interval;
  iv.lower = add(iv.lower, Ordinal::finite(1));
  iv.upper = add(iv.upper, Ordinal::finite(1));
  RankResult out = RankResult::of_interval(iv, std::move(r.trace));
  push(out.trace, "space-rank", "CB(N_H(G)) = cb_H(G) + 1", iv);
  return out;
}

RankResult cb_external(const GroupDescriptor& g, std::optional<bool> finitely_presented_fact) {
  if (g.kind() == GroupDescriptor::Kind::WreathPermutational) {
    const auto& f = g.wp_flags();
    DerivationTrace trace;
    if (f.base_nontrivial && f.diag_orbits_infinite) {
      trace.push_back({"wreath-condensation",
                       "cb^e(H wr_X G) = C when H != 1 and G has infinitely many "
                       "diagonal orbits on X^2",
                       "COND"});
      return RankResult::condensation(std::move(trace));
    }
    return RankResult::unknown(std::move(trace));
  }
  if (finitely_presented_fact && *finitely_presented_fact) {
    RankResult r = cb_rank(g);
    push(r.trace, "external-clopen", "cb^e(G) = cb(G) for finitely presented G", r.interval);
    return r;
  }
  DerivationTrace trace;
  trace.push_back({"external-unknown",
                   "without finite presentability, N(G) need not be open in the space of "
                   "marked groups",
                   "Unknown"});
  return RankResult::unknown(std::move(trace));
}

bool replay_trace(const GroupDescriptor& g, const RankResult& result) {
  RankResult redo = result.trace.empty() ? RankResult() : cb_rank(g);
  if (result.trace.empty()) return false;
  // the final recorded value must equal the re-derived result, and every
  // recorded step must also appear in the re-derivation
  if (result.trace.back().value != redo.interval.str() &&
      result.trace.back().value != redo.str())
    return false;
  for (const auto& step : result.trace) {
    bool found = false;
    for (const auto& other : redo.trace)
      if (other.rule == step.rule && other.value == step.value) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

namespace {

void dsl_flags(std::ostringstream& os, const MetabelianFlags& f) {
  os << "qrank=" << f.q_rank;
  if (f.q_torsion_free) os << ", qtorsionfree";
  if (f.split) os << ", split";
  if (f.generators) os << ", generators=" << *f.generators;
  if (f.faithful) os << ", faithful";
  if (f.module_contains_centralizer) os << ", centralizer";
  if (f.prime_quotient)
    os << ", primequotient=(" << f.prime_quotient->coheight << ", "
       << f.prime_quotient->rank << ")";
}

} // namespace

std::string to_dsl(const GroupDescriptor& g) {
  using K = GroupDescriptor::Kind;
  std::ostringstream os;
  switch (g.kind()) {
    case K::Polycyclic: {
      os << "polycyclic(factors=[";
      bool first = true;
      for (const auto& f : g.factors()) {
        if (!first) os << ", ";
        first = false;
        switch (f.kind) {
          case PolycyclicFactor::Kind::InfiniteCyclic: os << "Z"; break;
          case PolycyclicFactor::Kind::FreeAbelian: os << "Z^" << f.rank; break;
          case PolycyclicFactor::Kind::Finite: os << "finite"; break;
        }
      }
      os << "]";
      if (g.nilpotent())
        os << ", nilpotent";
      else if (g.supersolvable())
        os << ", supersolvable";
      os << ")";
      break;
    }
    case K::Wreath:
      if (g.base_rank() > 0)
        os << "wreath(base=Z^" << g.base_rank() << ", d=" << g.top_rank() << ")";
      else
        os << "wreath(base=C(" << g.modulus() << "), d=" << g.top_rank() << ")";
      break;
    case K::FreeMetabelian:
      os << "freemetabelian(" << g.base_rank() << ")";
      break;
    case K::MetabelianExt:
      os << "metabelian(module=" << modlen::to_dsl(g.module()) << ", ";
      dsl_flags(os, g.flags());
      os << ")";
      break;
    case K::VirtuallyMetabelian:
      os << "virtually(inner=" << to_dsl(g.inner()) << ", index=" << g.modulus();
      if (g.invariant_ideal_dim()) os << ", idealdim=" << *g.invariant_ideal_dim();
      os << ")";
      break;
    case K::WreathPermutational: {
      const auto& f = g.wp_flags();
      os << "wreathperm(base_nontrivial=" << (f.base_nontrivial ? "true" : "false")
         << ", diag_infinite=" << (f.diag_orbits_infinite ? "true" : "false")
         << ", fp=" << (f.finitely_presented ? "true" : "false") << ")";
      break;
    }
  }
  return os.str();
}

} // namespace cbcalc::grouprank

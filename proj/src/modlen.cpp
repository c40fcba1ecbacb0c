#include "cbcalc/modlen.hpp"

#include <algorithm>
#include <sstream>

namespace cbcalc::modlen {

std::string OrdinalInterval::str(bool unicode) const {
  if (is_exact()) return format(lower, unicode);
  std::ostringstream os;
  os << "[" << format(lower, unicode) << ", " << format(upper, unicode)
     << (upper_strict ? ")" : "]");
  return os.str();
}

OrdinalInterval intersect(const OrdinalInterval& a, const OrdinalInterval& b) {
  OrdinalInterval out;
  out.lower = std::max(a.lower, b.lower, [](const Ordinal& x, const Ordinal& y) { return x < y; });
  Cmp c = compare(a.upper, b.upper);
  if (c == Cmp::EQ) {
    out.upper = a.upper;
    out.upper_strict = a.upper_strict || b.upper_strict;
  } else if (c == Cmp::LT) {
    out.upper = a.upper;
    out.upper_strict = a.upper_strict;
  } else {
    out.upper = b.upper;
    out.upper_strict = b.upper_strict;
  }
  if (out.lower > out.upper || (out.lower == out.upper && out.upper_strict))
    throw AmbiguousBoundError("empty intersection of ordinal intervals");
  return out;
}

bool contains(const OrdinalInterval& outer, const Ordinal& v) {
  if (v < outer.lower) return false;
  Cmp c = compare(v, outer.upper);
  return c == Cmp::LT || (c == Cmp::EQ && !outer.upper_strict);
}

bool contains(const OrdinalInterval& outer, const OrdinalInterval& inner) {
  if (inner.lower < outer.lower) return false;
  Cmp c = compare(inner.upper, outer.upper);
  if (c == Cmp::LT) return true;
  if (c == Cmp::GT) return false;
  return !outer.upper_strict || inner.upper_strict;
}

ModuleDescriptor ModuleDescriptor::critical(int dim) {
  if (dim < 0) throw DescriptorError("critical dimension must be >= 0");
  return ModuleDescriptor(Kind::CriticalLeaf, dim, 1, {});
}

ModuleDescriptor ModuleDescriptor::torsion_free(int dim, Int rank) {
  if (dim < 1) throw DescriptorError("torsion-free leaf needs dimension >= 1");
  if (rank < 1) throw DescriptorError("torsion-free leaf needs rank >= 1");
  return ModuleDescriptor(Kind::TorsionFreeLeaf, dim, std::move(rank), {});
}

ModuleDescriptor ModuleDescriptor::finite(Int length) {
  if (length < 0) throw DescriptorError("finite leaf needs length >= 0");
  return ModuleDescriptor(Kind::FiniteLeaf, 0, std::move(length), {});
}

ModuleDescriptor ModuleDescriptor::series(std::vector<ModuleDescriptor> children) {
  if (children.empty()) throw DescriptorError("series needs at least one factor");
  int prev = -1;
  for (const auto& c : children) {
    if (c.kind() != Kind::CriticalLeaf && c.kind() != Kind::TorsionFreeLeaf)
      throw DescriptorError("series factors must be critical or torsion-free leaves");
    if (c.dim() < prev)
      throw DescriptorError("series dimensions must be weakly increasing");
    prev = c.dim();
  }
  return ModuleDescriptor(Kind::Series, 0, 0, std::move(children));
}

ModuleDescriptor ModuleDescriptor::direct_sum(std::vector<ModuleDescriptor> children) {
  if (children.empty()) throw DescriptorError("direct sum needs at least one summand");
  return ModuleDescriptor(Kind::DirectSum, 0, 0, std::move(children));
}

ModuleDescriptor ModuleDescriptor::extension(ModuleDescriptor sub, ModuleDescriptor quot) {
  std::vector<ModuleDescriptor> ch;
  ch.push_back(std::move(sub));
  ch.push_back(std::move(quot));
  return ModuleDescriptor(Kind::Extension, 0, 0, std::move(ch));
}

bool operator==(const ModuleDescriptor& a, const ModuleDescriptor& b) {
  return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.count_ == b.count_ &&
         a.children_ == b.children_;
}

namespace {

OrdinalInterval combine_extension(const OrdinalInterval& sub, const OrdinalInterval& quot) {
  OrdinalInterval out;
  out.lower = add(quot.lower, sub.lower);
  out.upper = natural_sum(quot.upper, sub.upper);
  out.upper_strict = sub.upper_strict || quot.upper_strict;
  return out;
}

} // namespace

OrdinalInterval length(const ModuleDescriptor& m) {
  using K = ModuleDescriptor::Kind;
  switch (m.kind()) {
    case K::CriticalLeaf:
      return OrdinalInterval::exact(Ordinal::omega_pow(Ordinal::finite(m.dim())));
    case K::TorsionFreeLeaf:
      return OrdinalInterval::exact(Ordinal::omega_pow(Ordinal::finite(m.dim()), m.count()));
    case K::FiniteLeaf:
      return OrdinalInterval::exact(Ordinal::finite(m.count()));
    case K::Series: {
      // Gulliksen: w^{a_k} + ... + w^{a_1}, largest dimension first
      Ordinal acc;
      for (auto it = m.children().rbegin(); it != m.children().rend(); ++it)
        acc = add(acc, length(*it).lower);
      return OrdinalInterval::exact(acc);
    }
    case K::DirectSum: {
      OrdinalInterval acc = OrdinalInterval::exact(Ordinal());
      for (const auto& c : m.children()) {
        OrdinalInterval l = length(c);
        acc.lower = natural_sum(acc.lower, l.lower);
        acc.upper = natural_sum(acc.upper, l.upper);
        acc.upper_strict = acc.upper_strict || l.upper_strict;
      }
      return acc;
    }
    case K::Extension:
      return combine_extension(length(m.sub()), length(m.quot()));
  }
  throw DescriptorError("corrupt descriptor");
}

OrdinalInterval reduced_length(const ModuleDescriptor& m) {
  using K = ModuleDescriptor::Kind;
  switch (m.kind()) {
    case K::CriticalLeaf:
    case K::TorsionFreeLeaf: {
      Int rank = m.kind() == K::CriticalLeaf ? Int(1) : m.count();
      if (m.dim() == 0) return OrdinalInterval::exact(Ordinal()); // finite factors
      return OrdinalInterval::exact(Ordinal::omega_pow(Ordinal::finite(m.dim() - 1), rank));
    }
    case K::FiniteLeaf:
      return OrdinalInterval::exact(Ordinal());
    case K::Series: {
      Ordinal acc;
      for (auto it = m.children().rbegin(); it != m.children().rend(); ++it)
        acc = add(acc, reduced_length(*it).lower);
      return OrdinalInterval::exact(acc);
    }
    case K::DirectSum: {
      OrdinalInterval acc = OrdinalInterval::exact(Ordinal());
      for (const auto& c : m.children()) {
        OrdinalInterval l = reduced_length(c);
        acc.lower = natural_sum(acc.lower, l.lower);
        acc.upper = natural_sum(acc.upper, l.upper);
        acc.upper_strict = acc.upper_strict || l.upper_strict;
      }
      return acc;
    }
    case K::Extension:
      return combine_extension(reduced_length(m.sub()), reduced_length(m.quot()));
  }
  throw DescriptorError("corrupt descriptor");
}

OrdinalInterval reduce_interval(const OrdinalInterval& iv) {
  OrdinalInterval out;
  ReducedPair lo = reduce(iv.lower), hi = reduce(iv.upper);
  out.lower = lo.quotient;
  out.upper = hi.quotient;
  // a < w*b implies a' < b; a < w*b + r only gives a' <= b
  out.upper_strict = iv.upper_strict && hi.remainder == 0;
  return out;
}

namespace {

bool is_pure_power(const Ordinal& a) {
  return a.terms().size() == 1 && a.terms()[0].coefficient == 1;
}

// degree pinned by the interval, or throw
int interval_degree(const OrdinalInterval& iv) {
  if (iv.is_exact() && iv.lower.is_zero()) return -1;
  if (iv.lower.is_zero()) {
    if (iv.upper_strict && iv.upper == Ordinal::finite(1)) return -1; // [0,1) = {0}
    throw AmbiguousBoundError("interval does not determine the degree");
  }
  Ordinal dl = degree(iv.lower);
  if (!iv.upper_strict) {
    if (dl == degree(iv.upper)) return static_cast<int>(dl.finite_value());
    throw AmbiguousBoundError("interval endpoints have different degrees");
  }
  Ordinal du = degree(iv.upper);
  if (is_pure_power(iv.upper)) {
    // values below w^e have degree < e
    if (!du.is_finite() || du.is_zero())
      throw AmbiguousBoundError("strict power bound does not pin the degree");
    if (dl == Ordinal::finite(du.finite_value() - 1))
      return static_cast<int>(dl.finite_value());
    throw AmbiguousBoundError("strict power bound does not pin the degree");
  }
  if (dl == du) return static_cast<int>(dl.finite_value());
  throw AmbiguousBoundError("interval endpoints have different degrees");
}

} // namespace

int krull_dim(const ModuleDescriptor& m) { return interval_degree(length(m)); }

Int leading_coeff(const ModuleDescriptor& m) {
  OrdinalInterval l = length(m);
  if (l.is_exact() && l.lower.is_zero()) return 0;
  if (l.lower.is_zero()) throw AmbiguousBoundError("leading coefficient not determined");
  const auto& lo = l.lower.terms().front();
  const auto& hi = l.upper.terms().front();
  if (lo.exponent == hi.exponent && lo.coefficient == hi.coefficient)
    return lo.coefficient;
  throw AmbiguousBoundError("leading coefficient not determined");
}

namespace {

ModuleDescriptor from_parts(std::vector<ModuleDescriptor> parts, bool as_series) {
  if (parts.empty()) return ModuleDescriptor::zero();
  if (parts.size() == 1) return parts[0];
  return as_series ? ModuleDescriptor::series(std::move(parts))
                   : ModuleDescriptor::direct_sum(std::move(parts));
}

SplitResult split_at(const ModuleDescriptor& m, int max_dim) {
  using K = ModuleDescriptor::Kind;
  switch (m.kind()) {
    case K::FiniteLeaf:
      return {m, ModuleDescriptor::zero()};
    case K::CriticalLeaf:
    case K::TorsionFreeLeaf:
      if (m.dim() <= max_dim) return {m, ModuleDescriptor::zero()};
      return {ModuleDescriptor::zero(), m};
    case K::Series: {
      std::vector<ModuleDescriptor> low, high;
      for (const auto& c : m.children())
        (c.dim() <= max_dim ? low : high).push_back(c);
      return {from_parts(std::move(low), true), from_parts(std::move(high), true)};
    }
    case K::DirectSum: {
      std::vector<ModuleDescriptor> low, high;
      for (const auto& c : m.children()) {
        SplitResult s = split_at(c, max_dim);
        if (!s.part.is_zero_module()) low.push_back(std::move(s.part));
        if (!s.quotient.is_zero_module()) high.push_back(std::move(s.quotient));
      }
      return {from_parts(std::move(low), false), from_parts(std::move(high), false)};
    }
    case K::Extension:
      throw NotComputableError("radical of an extension node is not determined by bounds");
  }
  throw DescriptorError("corrupt descriptor");
}

} // namespace

SplitResult w_split(const ModuleDescriptor& m) { return split_at(m, 1); }
SplitResult e_split(const ModuleDescriptor& m) { return split_at(m, 0); }

OrdinalInterval finite_action_bounds(const ModuleDescriptor& m, const Int& group_order,
                                     FiniteActionFlags flags) {
  if (group_order < 1) throw DescriptorError("group order must be >= 1");
  if (flags.invariant_ideal_in_domain) {
    if (flags.domain_dim < 1)
      throw DescriptorError("invariant ideal flag needs domain dimension >= 1");
    return OrdinalInterval::exact(
        Ordinal::omega_pow(Ordinal::finite(flags.domain_dim - 1)));
  }
  OrdinalInterval rl = reduced_length(m);
  if (rl.is_exact() && (rl.lower.is_zero() || is_pure_power(rl.lower)))
    return rl; // l'(M) = w^d forces l'_G(M) = w^d; finite modules stay 0
  OrdinalInterval l = length(m);
  if (!l.is_exact()) throw AmbiguousBoundError("finite action bounds need an exact length");
  int d = interval_degree(l);
  if (d <= 0) return OrdinalInterval::exact(Ordinal());
  Int c = l.lower.terms().front().coefficient;
  Int lo_coeff = (c + group_order - 1) / group_order;
  OrdinalInterval out;
  out.lower = Ordinal::omega_pow(Ordinal::finite(d - 1), lo_coeff);
  out.upper = rl.upper;
  out.upper_strict = false;
  return out;
}

namespace {

void dsl_impl(std::ostringstream& os, const ModuleDescriptor& m) {
  using K = ModuleDescriptor::Kind;
  switch (m.kind()) {
    case K::CriticalLeaf:
      os << "critical(" << m.dim() << ")";
      return;
    case K::TorsionFreeLeaf:
      os << "torsionfree(dim=" << m.dim() << ", rank=" << m.count() << ")";
      return;
    case K::FiniteLeaf:
      os << "finite(" << m.count() << ")";
      return;
    case K::Series:
    case K::DirectSum: {
      os << (m.kind() == K::Series ? "series(" : "directsum(");
      bool first = true;
      for (const auto& c : m.children()) {
        if (!first) os << ", ";
        first = false;
        dsl_impl(os, c);
      }
      os << ")";
      return;
    }
    case K::Extension:
      os << "ext(sub=";
      dsl_impl(os, m.sub());
      os << ", quot=";
      dsl_impl(os, m.quot());
      os << ")";
      return;
  }
}

} // namespace

std::string to_dsl(const ModuleDescriptor& m) {
  std::ostringstream os;
  dsl_impl(os, m);
  return os.str();
}

} // namespace cbcalc::modlen

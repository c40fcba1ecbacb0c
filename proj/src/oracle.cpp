#include "cbcalc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "cbcalc/grouprank.hpp"
#include "cbcalc/ordinal.hpp"

namespace cbcalc::oracle {

FiniteModuleInstance FiniteModuleInstance::abelian(std::vector<long long> orders) {
  return with_action(std::move(orders), {});
}

FiniteModuleInstance FiniteModuleInstance::with_action(
    std::vector<long long> orders, std::vector<std::vector<std::vector<long long>>> action) {
  FiniteModuleInstance m;
  for (long long c : orders)
    if (c < 1) throw OracleError("cyclic orders must be positive");
  const std::size_t k = orders.size();
  for (const auto& mat : action) {
    if (mat.size() != k) throw OracleError("action matrix has wrong shape");
    for (const auto& row : mat)
      if (row.size() != k) throw OracleError("action matrix has wrong shape");
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if ((mat[i][j] * orders[j]) % orders[i] != 0)
          throw OracleError("action matrix is not well-defined modulo the orders");
  }
  m.cyclic_orders = std::move(orders);
  m.action = std::move(action);
  return m;
}

long long FiniteModuleInstance::order() const {
  long long n = 1;
  for (long long c : cyclic_orders) n *= c;
  return n;
}

std::string FiniteModuleInstance::str() const {
  std::ostringstream os;
  os << "Z/";
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
    if (i) os << " x Z/";
    os << cyclic_orders[i];
  }
  if (!action.empty()) os << " with " << action.size() << " action matrices";
  return os.str();
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct GroupArith {
  std::vector<long long> orders;
  std::vector<long long> strides; // mixed radix decode
  long long n = 1;
  std::vector<std::vector<long long>> action;
  std::vector<std::uint32_t> add_table; // filled when n is small

  explicit GroupArith(const FiniteModuleInstance& m) {
    orders = m.cyclic_orders;
    strides.resize(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      strides[i] = n;
      n *= orders[i];
    }
    for (const auto& mat : m.action) {
      std::vector<long long> flat;
      for (const auto& row : mat) flat.insert(flat.end(), row.begin(), row.end());
      action.push_back(std::move(flat));
    }
    if (n <= 2048) {
      add_table.resize(static_cast<std::size_t>(n) * n);
      for (long long a = 0; a < n; ++a)
        for (long long b = 0; b <= a; ++b) {
          auto s = static_cast<std::uint32_t>(add_slow(a, b));
          add_table[a * n + b] = s;
          add_table[b * n + a] = s;
        }
    }
  }

  long long add_slow(long long a, long long b) const {
    long long out = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      long long da = (a / strides[i]) % orders[i];
      long long db = (b / strides[i]) % orders[i];
      out += ((da + db) % orders[i]) * strides[i];
    }
    return out;
  }

  long long add(long long a, long long b) const {
    if (!add_table.empty()) return add_table[a * n + b];
    return add_slow(a, b);
  }

  long long apply(const std::vector<long long>& flat, long long e) const {
    const std::size_t k = orders.size();
    long long out = 0;
    for (std::size_t i = 0; i < k; ++i) {
      long long acc = 0;
      for (std::size_t j = 0; j < k; ++j) {
        long long dj = (e / strides[j]) % orders[j];
        acc += ((flat[i * k + j] % orders[i]) * (dj % orders[i])) % orders[i];
      }
      out += ((acc % orders[i] + orders[i]) % orders[i]) * strides[i];
    }
    return out;
  }
};

bool get_bit(const Bits& b, long long i) { return (b[i >> 6] >> (i & 63)) & 1; }
void set_bit(Bits& b, long long i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

int popcount(const Bits& b) {
  int c = 0;
  for (auto w : b) c += __builtin_popcountll(w);
  return c;
}

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// close `s` under addition of the new element e and under the action
void close_with(const GroupArith& g, Bits& s, long long e) {
  std::vector<long long> work{e};
  while (!work.empty()) {
    long long x = work.back();
    work.pop_back();
    if (get_bit(s, x)) continue;
    // add the coset chain S + k*x for the whole cyclic group generated by x
    std::vector<long long> members;
    for (long long m = 0; m < g.n; ++m)
      if (get_bit(s, m)) members.push_back(m);
    long long cur = x;
    while (cur != 0 && !get_bit(s, cur)) {
      for (long long m : members) set_bit(s, g.add(m, cur));
      set_bit(s, cur);
      cur = g.add(cur, x);
    }
    // refresh members and push action images not yet present
    for (long long m = 0; m < g.n; ++m)
      if (get_bit(s, m))
        for (const auto& mat : g.action) {
          long long y = g.apply(mat, m);
          if (!get_bit(s, y)) work.push_back(y);
        }
  }
}

} // namespace

SubgroupLattice::SubgroupLattice(const FiniteModuleInstance& instance) {
  GroupArith g(instance);
  if (g.n > kMaxLatticeOrder) throw TooLargeError("instance order exceeds the lattice bound");
  const long long n = g.n;
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);

  Bits zero(words, 0);
  set_bit(zero, 0);

  auto members_of = [&](const Bits& s) {
    std::vector<long long> out;
    for (long long e = 0; e < n; ++e)
      if (get_bit(s, e)) out.push_back(e);
    return out;
  };

  // invariant cyclic closures, the atoms every invariant subgroup is a join of
  std::vector<Bits> atoms;
  std::vector<std::vector<long long>> atom_members;
  {
    std::unordered_map<Bits, int, BitsHash> seen;
    for (long long x = 1; x < n; ++x) {
      Bits s = zero;
      close_with(g, s, x);
      if (seen.emplace(s, 1).second) {
        atom_members.push_back(members_of(s));
        atoms.push_back(std::move(s));
      }
    }
  }

  std::vector<Bits> subgroups{zero};
  std::unordered_map<Bits, int, BitsHash> index;
  index.emplace(zero, 0);
  for (std::size_t head = 0; head < subgroups.size(); ++head) {
    Bits base = subgroups[head];
    std::vector<long long> base_members = members_of(base);
    for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
      if (is_subset(atoms[ai], base)) continue;
      // sum of two invariant subgroups: union of base-translates over the atom
      Bits join(words, 0);
      for (long long s : atom_members[ai])
        for (long long b : base_members) set_bit(join, g.add(b, s));
      auto [it, inserted] = index.emplace(join, static_cast<int>(subgroups.size()));
      (void)it;
      if (inserted) subgroups.push_back(std::move(join));
    }
  }

  const int count = static_cast<int>(subgroups.size());
  orders_.resize(count);
  for (int i = 0; i < count; ++i) orders_[i] = popcount(subgroups[i]);
  by_order_.resize(count);
  std::iota(by_order_.begin(), by_order_.end(), 0);
  std::sort(by_order_.begin(), by_order_.end(),
            [&](int a, int b) { return orders_[a] < orders_[b]; });
  trivial_ = by_order_.front();
  whole_ = by_order_.back();

  // longest chains: scan larger subgroups for strict supersets / subsets
  above_.assign(count, 0);
  for (int pos = count - 1; pos >= 0; --pos) {
    int id = by_order_[pos];
    int best = 0;
    for (int qos = pos + 1; qos < count; ++qos) {
      int other = by_order_[qos];
      if (orders_[other] <= orders_[id] || orders_[other] % orders_[id] != 0) continue;
      if (is_subset(subgroups[id], subgroups[other]))
        best = std::max(best, above_[other] + 1);
    }
    above_[id] = best;
  }
  below_.assign(count, 0);
  for (int pos = 0; pos < count; ++pos) {
    int id = by_order_[pos];
    int best = 0;
    for (int qos = pos - 1; qos >= 0; --qos) {
      int other = by_order_[qos];
      if (orders_[other] >= orders_[id] || orders_[id] % orders_[other] != 0) continue;
      if (is_subset(subgroups[other], subgroups[id]))
        best = std::max(best, below_[other] + 1);
    }
    below_[id] = best;
  }
}

long long exhaustive_length(const FiniteModuleInstance& instance) {
  return SubgroupLattice(instance).length();
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["cases"] = cases;
  j["violations"] = violations;
  j["ok"] = ok();
  j["failures"] = failures;
  return j.dump(2);
}

namespace {

void record_failure(Report& r, const std::string& what) {
  ++r.violations;
  if (r.failures.size() < 16) r.failures.push_back(what);
}

void factorize(long long n, std::map<long long, int>& out) {
  for (long long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
}

void partitions_of(int e, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  // descending partitions by backtracking
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(e, e);
}

} // namespace

std::vector<FiniteModuleInstance> all_abelian_groups(long long max_order) {
  std::vector<FiniteModuleInstance> out;
  for (long long nn = 2; nn <= max_order; ++nn) {
    std::map<long long, int> fac;
    factorize(nn, fac);
    std::vector<std::vector<std::vector<long long>>> per_prime;
    for (auto& [p, e] : fac) {
      std::vector<std::vector<int>> parts;
      partitions_of(e, parts);
      std::vector<std::vector<long long>> lists;
      for (auto& part : parts) {
        std::vector<long long> orders;
        for (int k : part) {
          long long q = 1;
          for (int i = 0; i < k; ++i) q *= p;
          orders.push_back(q);
        }
        lists.push_back(std::move(orders));
      }
      per_prime.push_back(std::move(lists));
    }
    std::vector<std::vector<long long>> combos{{}};
    for (auto& lists : per_prime) {
      std::vector<std::vector<long long>> next;
      for (auto& c : combos)
        for (auto& l : lists) {
          auto merged = c;
          merged.insert(merged.end(), l.begin(), l.end());
          next.push_back(std::move(merged));
        }
      combos = std::move(next);
    }
    for (auto& orders : combos)
      out.push_back(FiniteModuleInstance::abelian(std::move(orders)));
  }
  return out;
}

namespace {

template <typename Case>
Report run_cases(std::string suite, const std::vector<Case>& cases,
                 const std::function<std::string(const Case&)>& check, bool parallel) {
  Report r;
  r.suite = std::move(suite);
  r.cases = static_cast<long long>(cases.size());
  std::vector<std::string> messages(cases.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(cases.size()); ++i)
      messages[i] = check(cases[i]);
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i) messages[i] = check(cases[i]);
  }
  for (auto& msg : messages)
    if (!msg.empty()) record_failure(r, msg);
  return r;
}

} // namespace

Report check_delta_agreement(long long max_order, bool parallel) {
  auto groups = all_abelian_groups(max_order);
  return run_cases<FiniteModuleInstance>(
      "delta-agreement", groups,
      [](const FiniteModuleInstance& m) -> std::string {
        long long got = exhaustive_length(m);
        long long want = grouprank::delta(Int(m.order()));
        if (got != want) {
          std::ostringstream os;
          os << m.str() << ": lattice length " << got << " != delta " << want;
          return os.str();
        }
        return {};
      },
      parallel);
}

namespace {

struct ExtCase {
  FiniteModuleInstance instance;
  bool direct_sum_split; // N = first block of a direct sum
  std::uint64_t pick;
};

FiniteModuleInstance random_instance(std::mt19937_64& rng, long long max_order,
                                     bool allow_action) {
  static const long long pool[] = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27};
  std::vector<long long> orders;
  long long total = 1;
  int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) {
    long long c = pool[rng() % (sizeof(pool) / sizeof(pool[0]))];
    if (total * c > max_order) break;
    total *= c;
    orders.push_back(c);
  }
  if (orders.empty()) orders.push_back(2);
  std::vector<std::vector<std::vector<long long>>> action;
  if (allow_action && rng() % 2 == 0) {
    const std::size_t kk = orders.size();
    std::vector<std::vector<long long>> mat(kk, std::vector<long long>(kk, 0));
    for (std::size_t i = 0; i < kk; ++i)
      for (std::size_t j = 0; j < kk; ++j) {
        long long step = orders[i] / std::gcd(orders[i], orders[j]);
        long long bound = orders[i] / step;
        mat[i][j] = step * static_cast<long long>(rng() % (bound + 1));
      }
    action.push_back(std::move(mat));
  }
  return FiniteModuleInstance::with_action(std::move(orders), std::move(action));
}

} // namespace

Report check_ext_bounds(int samples, std::uint64_t seed, bool parallel) {
  std::mt19937_64 rng(seed);
  std::vector<ExtCase> cases;
  cases.reserve(samples);
  for (int i = 0; i < samples; ++i)
    cases.push_back({random_instance(rng, 512, true), rng() % 4 == 0, rng()});

  return run_cases<ExtCase>(
      "ext-bounds", cases,
      [](const ExtCase& c) -> std::string {
        if (c.direct_sum_split && c.instance.action.empty() &&
            c.instance.cyclic_orders.size() >= 2) {
          // explicit direct sum: l(A x B) = l(A) + l(B) (finite natural sum)
          auto orders = c.instance.cyclic_orders;
          std::vector<long long> a(orders.begin(), orders.begin() + 1);
          std::vector<long long> b(orders.begin() + 1, orders.end());
          long long la = exhaustive_length(FiniteModuleInstance::abelian(a));
          long long lb = exhaustive_length(FiniteModuleInstance::abelian(b));
          long long lg = exhaustive_length(c.instance);
          if (lg != la + lb) {
            std::ostringstream os;
            os << c.instance.str() << ": direct sum length " << lg << " != " << la << "+"
               << lb;
            return os.str();
          }
          return {};
        }
        SubgroupLattice lat(c.instance);
        int id = lat.by_order()[c.pick % lat.count()];
        long long lg = lat.length();
        long long lq = lat.value_above(id);
        long long ln = lat.value_below(id);
        // l(G/N) + l(N) <= l(G) <= l(G/N) (+) l(N); the sums agree on naturals
        if (!(lq + ln <= lg && lg <= lq + ln)) {
          std::ostringstream os;
          os << c.instance.str() << ": l(G)=" << lg << " outside [" << lq << "+" << ln
             << "]";
          return os.str();
        }
        return {};
      },
      parallel);
}

Report check_convex_realization(const FiniteModuleInstance& instance) {
  Report r;
  r.suite = "convex-realization";
  r.cases = 1;
  SubgroupLattice lat(instance);
  std::vector<bool> seen(lat.length() + 1, false);
  for (int id = 0; id < lat.count(); ++id) {
    long long v = lat.value_above(id);
    if (v >= 0 && v <= lat.length()) seen[v] = true;
  }
  for (long long beta = 0; beta <= lat.length(); ++beta)
    if (!seen[beta]) {
      std::ostringstream os;
      os << instance.str() << ": no quotient of length " << beta;
      record_failure(r, os.str());
    }
  return r;
}

Report check_convex_realization_all(long long max_order, bool parallel) {
  auto groups = all_abelian_groups(max_order);
  return run_cases<FiniteModuleInstance>(
      "convex-realization", groups,
      [](const FiniteModuleInstance& m) -> std::string {
        Report sub = check_convex_realization(m);
        if (!sub.ok()) return sub.failures.empty() ? m.str() : sub.failures[0];
        return {};
      },
      parallel);
}

namespace {

struct ActionCase {
  FiniteModuleInstance plain;
  FiniteModuleInstance with_action;
  long long action_order;
};

} // namespace

Report check_finite_action_bounds(int samples, std::uint64_t seed, bool parallel) {
  std::mt19937_64 rng(seed);
  static const long long primes[] = {2, 3, 5};
  std::vector<ActionCase> cases;
  while (static_cast<int>(cases.size()) < samples) {
    long long p = primes[rng() % 3];
    int dim = 1 + static_cast<int>(rng() % 4);
    long long total = 1;
    for (int i = 0; i < dim; ++i) total *= p;
    if (total > 700) continue;
    // random invertible matrix over F_p
    std::vector<std::vector<long long>> mat(dim, std::vector<long long>(dim));
    for (auto& row : mat)
      for (auto& x : row) x = static_cast<long long>(rng() % p);
    // determinant mod p by Gaussian elimination
    {
      auto a = mat;
      long long det = 1;
      for (int col = 0; col < dim && det != 0; ++col) {
        int piv = -1;
        for (int row = col; row < dim; ++row)
          if (a[row][col] % p != 0) {
            piv = row;
            break;
          }
        if (piv < 0) {
          det = 0;
          break;
        }
        if (piv != col) {
          std::swap(a[piv], a[col]);
          det = (p - det) % p;
        }
        det = (det * a[col][col]) % p;
        long long inv = 1;
        for (long long t = 1; t < p; ++t)
          if ((a[col][col] * t) % p == 1) inv = t;
        for (int row = col + 1; row < dim; ++row) {
          long long f = (a[row][col] * inv) % p;
          for (int cc = col; cc < dim; ++cc)
            a[row][cc] = ((a[row][cc] - f * a[col][cc]) % p + p) % p;
        }
      }
      if (det == 0) continue;
    }
    // multiplicative order of the matrix
    auto mat_mul = [&](const std::vector<std::vector<long long>>& x,
                       const std::vector<std::vector<long long>>& y) {
      std::vector<std::vector<long long>> z(dim, std::vector<long long>(dim, 0));
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
          for (int j = 0; j < dim; ++j) z[i][j] = (z[i][j] + x[i][k] * y[k][j]) % p;
      return z;
    };
    std::vector<std::vector<long long>> id(dim, std::vector<long long>(dim, 0));
    for (int i = 0; i < dim; ++i) id[i][i] = 1;
    auto cur = mat;
    long long ord = 1;
    while (cur != id && ord <= 512) {
      cur = mat_mul(cur, mat);
      ++ord;
    }
    if (cur != id) continue;

    std::vector<long long> orders(dim, p);
    ActionCase c{FiniteModuleInstance::abelian(orders),
                 FiniteModuleInstance::with_action(orders, {mat}), ord};
    cases.push_back(std::move(c));
  }

  return run_cases<ActionCase>(
      "finite-action-bounds", cases,
      [](const ActionCase& c) -> std::string {
        long long lg = exhaustive_length(c.with_action);
        long long l = exhaustive_length(c.plain);
        if (!(lg <= l && l <= c.action_order * lg)) {
          std::ostringstream os;
          os << c.plain.str() << " (order-" << c.action_order
             << " action): l_G=" << lg << ", l=" << l;
          return os.str();
        }
        return {};
      },
      parallel);
}

namespace {

Ordinal random_cnf(std::mt19937_64& rng) {
  std::vector<OrdinalTerm> terms;
  if (rng() % 4 == 0) terms.push_back({Ordinal::omega(), Int(1 + rng() % 9)});
  int e = 8;
  int k = static_cast<int>(rng() % 4);
  while (k-- > 0 && e >= 0) {
    e = static_cast<int>(rng() % (e + 1));
    terms.push_back({Ordinal::finite(e), Int(1 + rng() % 20)});
    --e;
  }
  return Ordinal::from_terms(std::move(terms));
}

} // namespace

Report recheck_ordinal_laws(int samples, std::uint64_t seed, int finite_bound,
                            bool parallel) {
  struct LawCase {
    Ordinal a, b, c;
  };
  std::mt19937_64 rng(seed);
  std::vector<LawCase> cases;
  cases.reserve(samples);
  for (int i = 0; i < samples; ++i) cases.push_back({random_cnf(rng), random_cnf(rng), random_cnf(rng)});

  Report r = run_cases<LawCase>(
      "ordinal-laws", cases,
      [](const LawCase& t) -> std::string {
        const Ordinal &a = t.a, &b = t.b, &c = t.c;
        auto bad = [&](const char* what) {
          return std::string(what) + " violated at a=" + format(a) + ", b=" + format(b) +
                 ", c=" + format(c);
        };
        if (!(natural_sum(a, b) == natural_sum(b, a))) return bad("commutativity");
        if (!(natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c))))
          return bad("associativity of (+)");
        if (!(add(add(a, b), c) == add(a, add(b, c)))) return bad("associativity of +");
        if (!(add(a, Ordinal()) == a && add(Ordinal(), a) == a &&
              natural_sum(a, Ordinal()) == a))
          return bad("identity");
        if (compare(a, b) == Cmp::LT) {
          if (!(compare(natural_sum(a, c), natural_sum(b, c)) == Cmp::LT))
            return bad("strict monotonicity of (+)");
          if (!(compare(add(c, a), add(c, b)) == Cmp::LT))
            return bad("strict monotonicity of +");
        }
        if (!b.is_zero() && compare(a, Ordinal::omega_pow(degree(b))) == Cmp::LT &&
            !(add(a, b) == b))
          return bad("absorption");
        ReducedPair red = reduce(a);
        if (!(add(omega_left_multiple(red.quotient), Ordinal::finite(red.remainder)) == a))
          return bad("reduce reconstruction");
        if (!a.is_zero() && !a.terms().front().exponent.is_finite() &&
            a.terms().size() == 1 && a.terms().front().coefficient == 1) {
          if (!(reduce(a).quotient == a)) return bad("reduce fixed point");
        }
        if (!a.is_zero() && !b.is_zero()) {
          Ordinal da = degree(a), db = degree(b);
          Ordinal dm = compare(da, db) == Cmp::LT ? db : da;
          if (!(degree(natural_sum(a, b)) == dm)) return bad("degree of (+)");
        }
        return {};
      },
      parallel);

  // the natural sum against its recursive definition on finite pairs
  std::vector<std::vector<int>> nat(finite_bound, std::vector<int>(finite_bound, 0));
  for (int a = 0; a < finite_bound; ++a)
    for (int b = 0; b < finite_bound; ++b) {
      int best = 0;
      if (a > 0) best = std::max(best, nat[a - 1][b] + 1);
      if (b > 0) best = std::max(best, nat[a][b - 1] + 1);
      nat[a][b] = best;
    }
  for (int a = 0; a < finite_bound; ++a)
    for (int b = 0; b < finite_bound; ++b) {
      ++r.cases;
      if (!(natural_sum(Ordinal::finite(a), Ordinal::finite(b)) ==
            Ordinal::finite(nat[a][b])))
        record_failure(r, "finite natural sum disagrees at " + std::to_string(a) + "," +
                              std::to_string(b));
    }
  return r;
}

Report recheck_sigma_artifacts(const sigma::BSModule& m,
                               const std::vector<sigma::GammaVerdict>& verdicts) {
  Report r;
  r.suite = "sigma-recheck";
  for (const auto& v : verdicts) {
    ++r.cases;
    sigma::Character ray = sigma::Character::of_ints(v.ray);
    switch (v.kind) {
      case sigma::GammaVerdict::Kind::InGamma:
        if (!v.certificate || !sigma::verify_certificate(m, ray, *v.certificate))
          record_failure(r, "certificate failed for " + v.str());
        break;
      case sigma::GammaVerdict::Kind::NotInGamma:
        if (m.leaves().size() == 1 || v.witness) {
          if (!v.witness || !sigma::verify_witness(m, ray, *v.witness))
            record_failure(r, "witness failed for " + v.str());
        }
        break;
      case sigma::GammaVerdict::Kind::Inconclusive:
        break;
    }
  }

  // the classical saturation identities, re-checked from fixed data
  {
    sigma::BSModule classical = sigma::BSModule::classical();
    sigma::Character v11 = sigma::Character::of_ints({Int(1), Int(1)});
    sigma::Witness w1;
    w1.qa = 0;
    w1.qb = -1;
    w1.combination = {{2, -1, Int(1)}, {0, 1, Int(-1)}, {0, 0, Int(2)}};
    sigma::Witness w2;
    w2.qa = -1;
    w2.qb = 0;
    w2.combination = {{-1, 2, Int(1)}, {0, 0, Int(-2)}, {1, 0, Int(-1)}};
    ++r.cases;
    if (!sigma::verify_witness(classical, v11, w1))
      record_failure(r, "stored identity 1/(1+u) = u^2/(1+u) - (1+u) + 2 failed");
    ++r.cases;
    if (!sigma::verify_witness(classical, v11, w2))
      record_failure(r, "stored identity 1/u = (1+u)^2/u - 2 - u failed");
    for (const auto& fan_ray : sigma::gamma_rays_classical()) {
      ++r.cases;
      sigma::Character c = sigma::Character::of_ints(fan_ray);
      auto cert = sigma::in_gamma_certificate(classical, c);
      if (!cert || !sigma::verify_certificate(classical, c, *cert))
        record_failure(r, "fan certificate failed");
    }
  }
  return r;
}

} // namespace cbcalc::oracle

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cbcalc/ordinal.hpp"

using namespace cbcalc;

namespace {

Ordinal w() { return Ordinal::omega(); }
Ordinal fin(long long n) { return Ordinal::finite(n); }
Ordinal wpow(long long e, long long c = 1) {
  return Ordinal::omega_pow(fin(e), c);
}

// Random CNF ordinal below w^w*10: optional w-exponent leading term plus a
// strictly decreasing tail of finite-exponent terms.
Ordinal random_cnf(std::mt19937_64& rng) {
  std::vector<OrdinalTerm> terms;
  if (rng() % 4 == 0)
    terms.push_back({w(), Int(1 + rng() % 9)});
  int e = 8;
  int k = static_cast<int>(rng() % 4);
  while (k-- > 0 && e >= 0) {
    e = static_cast<int>(rng() % (e + 1));
    terms.push_back({fin(e), Int(1 + rng() % 20)});
    --e;
  }
  return Ordinal::from_terms(std::move(terms));
}

} // namespace

TEST_CASE("comparison") {
  CHECK(compare(w(), fin(5)) == Cmp::GT);
  CHECK(compare(wpow(2), add(Ordinal::omega_pow(fin(1), 9), fin(7))) == Cmp::GT);
  CHECK(compare(Ordinal(), Ordinal()) == Cmp::EQ);
  CHECK(fin(3) < fin(4));
  CHECK(wpow(2) > add(w(), fin(1000)));
  CHECK(Ordinal::omega_pow(w()) > wpow(100, 99));
}

TEST_CASE("ordinary sum") {
  CHECK(add(fin(1), w()) == w());
  // (w+1) + (w*2+3) = w*3 + 3
  Ordinal lhs = add(add(w(), fin(1)), add(Ordinal::omega_pow(fin(1), 2), fin(3)));
  CHECK(format(lhs) == "w*3 + 3");
  Ordinal a = add(wpow(2), w());
  CHECK(add(a, Ordinal()) == a);
  CHECK(add(Ordinal(), a) == a);
}

TEST_CASE("natural sum") {
  Ordinal lhs = natural_sum(add(w(), fin(1)), add(Ordinal::omega_pow(fin(1), 2), fin(3)));
  CHECK(format(lhs) == "w*3 + 4");
  Ordinal a = add(wpow(3, 2), fin(5));
  CHECK(natural_sum(a, Ordinal()) == a);
  CHECK(natural_sum(fin(3), fin(4)) == fin(7));
}

TEST_CASE("reduce") {
  auto r1 = reduce(fin(1));
  CHECK(r1.quotient.is_zero());
  CHECK(r1.remainder == 1);

  for (int n = 0; n <= 4; ++n) {
    auto r = reduce(wpow(n + 1));
    CHECK(r.quotient == wpow(n));
    CHECK(r.remainder == 0);
  }

  // w^2 + w*2 + 3 -> (w + 2, 3)
  Ordinal a = add(add(wpow(2), Ordinal::omega_pow(fin(1), 2)), fin(3));
  auto r = reduce(a);
  CHECK(format(r.quotient) == "w + 2");
  CHECK(r.remainder == 3);

  // fixed point for exponents >= w
  Ordinal wo = Ordinal::omega_pow(w());
  auto rf = reduce(wo);
  CHECK(rf.quotient == wo);
  CHECK(rf.remainder == 0);
}

TEST_CASE("degree") {
  CHECK(degree(add(wpow(3, 2), fin(5))) == fin(3));
  CHECK(degree(fin(7)) == fin(0));
  CHECK(degree(Ordinal::omega_pow(w())) == w());
  CHECK_THROWS_AS(degree(Ordinal()), DegreeOfZeroError);
}

TEST_CASE("format and parse") {
  CHECK(format(add(wpow(2), fin(4))) == "w^2 + 4");
  CHECK(format(Ordinal()) == "0");
  CHECK(format(Ordinal::omega_pow(w(), 3)) == "w^w*3");

  Ordinal p = parse_ordinal("w^w*3 + w + 1");
  CHECK(p == add(add(Ordinal::omega_pow(w(), 3), w()), fin(1)));
  CHECK(parse_ordinal("0") == Ordinal());
  CHECK(parse_ordinal("\xcf\x89^2") == wpow(2));
  CHECK(parse_ordinal("w^(w+1)*2 + w^2") ==
        add(Ordinal::omega_pow(add(w(), fin(1)), 2), wpow(2)));

  CHECK_THROWS_AS(parse_ordinal("w + w^2"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w + w"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w*"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w + 0"), OrdinalParseError);
  try {
    parse_ordinal("w + w^2");
  } catch (const OrdinalParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("json encoding") {
  CHECK(ordinal_to_json(Ordinal()) == "[]");
  CHECK(ordinal_to_json(fin(3)) == "[[[],3]]");
  CHECK(ordinal_to_json(add(wpow(2), fin(4))) == "[[[[[],2]],1],[[],4]]");

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Ordinal a = random_cnf(rng);
    CHECK(ordinal_from_json(ordinal_to_json(a)) == a);
  }
  CHECK(ordinal_from_json("[[[],\"18446744073709551617\"]]") ==
        Ordinal::finite(Int("18446744073709551617")));
  CHECK_THROWS_AS(ordinal_from_json("[[[],0]]"), OrdinalParseError);
  CHECK_THROWS_AS(ordinal_from_json("{}"), OrdinalParseError);
}

TEST_CASE("algebraic laws on random ordinals") {
  std::mt19937_64 rng(20260810);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = random_cnf(rng), b = random_cnf(rng), c = random_cnf(rng);

    CHECK(natural_sum(a, b) == natural_sum(b, a));
    CHECK(natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c)));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(add(a, Ordinal()) == a);
    CHECK(add(Ordinal(), a) == a);
    CHECK(natural_sum(a, Ordinal()) == a);

    // monotonicity
    if (compare(a, b) == Cmp::LT) {
      CHECK(compare(natural_sum(a, c), natural_sum(b, c)) == Cmp::LT);
      CHECK(compare(add(c, a), add(c, b)) == Cmp::LT);
    }

    // absorption
    if (!b.is_zero() && compare(a, Ordinal::omega_pow(degree(b))) == Cmp::LT)
      CHECK(add(a, b) == b);

    // reduce reconstruction
    auto r = reduce(a);
    CHECK(add(omega_left_multiple(r.quotient), Ordinal::finite(r.remainder)) == a);
    CHECK(r.remainder >= 0);

    if (!a.is_zero() && !b.is_zero())
      CHECK(degree(natural_sum(a, b)) ==
            std::max(degree(a), degree(b), [](const Ordinal& x, const Ordinal& y) {
              return x < y;
            }));

    // round trip
    CHECK(parse_ordinal(format(a)) == a);
    CHECK(parse_ordinal(format(a, /*unicode=*/true)) == a);
  }
}

TEST_CASE("natural sum matches the recursive definition on finite ordinals") {
  // nat(a,b) = max(sup_{c<a}(nat(c,b)+1), sup_{c<b}(nat(a,c)+1)), computed by
  // dynamic programming, compared against the CNF implementation.
  const int N = 120;
  std::vector<std::vector<int>> nat(N, std::vector<int>(N, 0));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      int best = 0;
      if (a > 0) best = std::max(best, nat[a - 1][b] + 1);
      if (b > 0) best = std::max(best, nat[a][b - 1] + 1);
      nat[a][b] = best;
    }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      CHECK(natural_sum(fin(a), fin(b)) == fin(nat[a][b]));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cbcalc/laurent.hpp"

using namespace cbcalc;
using namespace cbcalc::laurent;

namespace {

Element u(int d = 1, int i = 0) { return Element::variable(d, i); }
Element opu(int d = 1, int i = 0) { return Element::one_plus_var(d, i); }
Element ci(Int n, int d = 1) { return Element::integer(d, n); }

// order-three automorphism of the one-variable ring: u -> -(1+u)/u
Element order3_image() {
  return Element::monomial(1, {-1}, {1}, -1);
}

Element random_element(std::mt19937_64& rng, int d) {
  Element acc(d);
  int nterms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> ue(d), ve(d);
    for (int i = 0; i < d; ++i) {
      ue[i] = static_cast<int>(rng() % 7) - 3;
      ve[i] = static_cast<int>(rng() % 7) - 3;
    }
    Int c = static_cast<long long>(rng() % 11) - 5;
    if (c == 0) c = 1;
    acc = acc + Element::monomial(d, ue, ve, c);
  }
  return acc;
}

} // namespace

TEST_CASE("ring arithmetic basics") {
  // 1/(1+u) + u/(1+u) = 1
  Element a = opu().inverse();
  Element b = u() * opu().inverse();
  CHECK((a + b) == ci(1));

  CHECK((u() * u().inverse()) == ci(1));

  // (1-(1+u))^2/(1+u) = (1+u) - 2 + 1/(1+u)
  Element lhs = (ci(1) - opu()).pow(2) * opu().inverse();
  Element rhs = opu() - ci(2) + opu().inverse();
  CHECK(lhs == rhs);

  CHECK_THROWS_AS(u() + u(2, 0), ArityError);
  CHECK((u() + ci(1)).is_unit()); // 1+u is inverted in this localization
  CHECK_THROWS_AS((u() + ci(2)).inverse(), NotInvertibleError);
  CHECK_THROWS_AS((u() * u() + ci(1)).inverse(), NotInvertibleError);
}

TEST_CASE("normal form is canonical") {
  Element e = (u() * u() + u()) * opu().inverse(); // u(1+u)/(1+u) = u
  CHECK(e == u());
  CHECK(e.den_v()[0] == 0);
  Element z = u() - u();
  CHECK(z.is_zero());
  CHECK(z.den_u()[0] == 0);
}

TEST_CASE("substitution") {
  Element tau = order3_image();
  Element x = u();
  for (int k = 0; k < 3; ++k) x = x.substitute({tau});
  CHECK(x == u());

  // gamma with d = 3: u_i -> -(1 + u_{i+1}); 2d applications fix x_1
  const int d = 3;
  std::vector<Element> gamma;
  for (int i = 0; i < d; ++i)
    gamma.push_back(-Element::one_plus_var(d, (i + 1) % d));
  Element x1 = Element::x_var(d, 0);
  Element cur = x1;
  for (int k = 0; k < 2 * d; ++k) cur = cur.substitute(gamma);
  CHECK(cur == x1);

  // identity substitution
  std::mt19937_64 rng(1);
  std::vector<Element> id;
  for (int i = 0; i < d; ++i) id.push_back(Element::variable(d, i));
  Element r = random_element(rng, d);
  CHECK(r.substitute(id) == r);

  // image of an inverted element must be a unit
  CHECK_THROWS_AS(u().substitute({u() + ci(1)}), NotAnEndomorphismError);
}

TEST_CASE("order-three symmetry acts on monomial exponents by [[-1,1],[-1,0]]") {
  Element tau = order3_image();
  const int A[2][2] = {{-1, 1}, {-1, 0}};
  // cube is the identity matrix
  int M[2][2] = {{1, 0}, {0, 1}};
  for (int k = 0; k < 3; ++k) {
    int N[2][2];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        N[r][c] = M[r][0] * A[0][c] + M[r][1] * A[1][c];
    std::copy(&N[0][0], &N[0][0] + 4, &M[0][0]);
  }
  CHECK(M[0][0] == 1);
  CHECK(M[0][1] == 0);
  CHECK(M[1][0] == 0);
  CHECK(M[1][1] == 1);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int m = static_cast<int>(rng() % 9) - 4;
    int n = static_cast<int>(rng() % 9) - 4;
    Element mon = Element::monomial(1, {m}, {n}, 1);
    auto img = mon.substitute({tau}).as_unit();
    REQUIRE(img.has_value());
    CHECK(img->u_exps[0] == m * A[0][0] + n * A[1][0]);
    CHECK(img->v_exps[0] == m * A[0][1] + n * A[1][1]);
  }
}

TEST_CASE("valuations") {
  CHECK(opu().inverse().pow(3).ord_one_plus_var(0) == -3);
  CHECK((u().pow(2) * opu()).ord_var(0) == 2);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    int m = static_cast<int>(rng() % 7);
    int n = static_cast<int>(rng() % 7);
    CHECK(Element::monomial(1, {m}, {n}, 1).top_deg(0) == m + n);
  }
  CHECK_THROWS_AS(Element(1).ord_var(0), ValuationOfZeroError);

  // additivity under multiplication (domain)
  for (int trial = 0; trial < 60; ++trial) {
    Element a = random_element(rng, 2), b = random_element(rng, 2);
    if (a.is_zero() || b.is_zero()) continue;
    Element p = a * b;
    for (int i = 0; i < 2; ++i) {
      CHECK(p.ord_var(i) == a.ord_var(i) + b.ord_var(i));
      CHECK(p.ord_one_plus_var(i) == a.ord_one_plus_var(i) + b.ord_one_plus_var(i));
      CHECK(p.top_deg(i) == a.top_deg(i) + b.top_deg(i));
    }
  }
}

TEST_CASE("ring laws on random elements") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 80; ++trial) {
    Element a = random_element(rng, 2), b = random_element(rng, 2),
            c = random_element(rng, 2);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b).is_zero() == (a == b));
  }
}

TEST_CASE("magnus commutator formula") {
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        MagnusMatrix gi = magnus_generator(d, d, i);
        MagnusMatrix gj = magnus_generator(d, d, j);
        MagnusMatrix c = commutator(gi, gj);
        CHECK(c.t.is_one());
        Element inv_ij = Element::monomial(d, [&] {
          std::vector<int> e(d, 0);
          e[i] = -1;
          e[j] = -1;
          return e;
        }(), std::vector<int>(d, 0));
        Element one = Element::integer(d, 1);
        Element expected_i = inv_ij * (one - Element::variable(d, j));
        Element expected_j = -(inv_ij * (one - Element::variable(d, i)));
        for (int k = 0; k < d; ++k) {
          if (k == i)
            CHECK(c.coords[k] == expected_i);
          else if (k == j)
            CHECK(c.coords[k] == expected_j);
          else
            CHECK(c.coords[k].is_zero());
        }
        CHECK(is_identity(commutator(gi, gi)));
      }
  }
}

TEST_CASE("commutator products satisfy the module relation sum (1-u_i) a_i = 0") {
  const int d = 3;
  std::mt19937_64 rng(11);
  std::vector<MagnusMatrix> gens;
  for (int i = 0; i < d; ++i) gens.push_back(magnus_generator(d, d, i));
  for (int trial = 0; trial < 20; ++trial) {
    MagnusMatrix w = magnus_identity(d, d);
    int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) {
      int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
      w = mat_mul(w, commutator(gens[i], gens[j]));
    }
    Element acc(d);
    for (int i = 0; i < d; ++i)
      acc = acc + (Element::integer(d, 1) - Element::variable(d, i)) * w.coords[i];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("element text syntax") {
  CHECK(parse_element("3*u^2/(1+u) - u^-1", 1) ==
        ci(3) * u().pow(2) * opu().inverse() - u().inverse());
  CHECK(parse_element("(1+u2)^-2 * u1", 2) ==
        Element::one_plus_var(2, 1).pow(-2) * Element::variable(2, 0));
  CHECK(parse_element("-5", 1) == ci(-5));
  CHECK_THROWS_AS(parse_element("u3", 2), LaurentError);
  CHECK_THROWS_AS(parse_element("(1+u+u^2)^-1", 1), NotInvertibleError);
  CHECK_THROWS_AS(parse_element("u +", 1), LaurentError);

  // the canonical printing round-trips
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial)
    for (int d : {1, 2, 3}) {
      Element e = random_element(rng, d);
      CHECK(parse_element(e.str(), d) == e);
    }
}

TEST_CASE("H_1 representation separates [ue1, uf1]") {
  // e1 -> diag(x,1), f1 -> diag(1-x,1), u -> [[1,1],[0,1]], x = -u internally
  MagnusMatrix e1{Element::x_var(1, 0), {Element(1)}};
  MagnusMatrix f1{Element::one_plus_var(1, 0), {Element(1)}};
  MagnusMatrix uu{Element::integer(1, 1), {Element::integer(1, 1)}};
  MagnusMatrix ue1 = mat_mul(uu, e1);
  MagnusMatrix uf1 = mat_mul(uu, f1);
  MagnusMatrix c = commutator(ue1, uf1);
  CHECK(c.t.is_one());
  CHECK(!c.coords[0].is_zero());
  // the module part is (2x-1)/(x(1-x)), which vanishes at x = 1/2 (u = -1/2)
  Rational val = c.coords[0].evaluate({Rational(-1, 2)});
  CHECK(val == 0);
  // diagonal generators commute
  CHECK(is_identity(commutator(e1, f1)));
}

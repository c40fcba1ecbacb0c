#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cbcalc/sigma.hpp"

using namespace cbcalc;
using namespace cbcalc::sigma;

namespace {

Character ray(long long a, long long b) { return Character::of_ints({Int(a), Int(b)}); }

std::vector<Int> apply_rotation(const std::vector<Int>& r) {
  // the order-three matrix [[-1,1],[-1,0]] acting on columns
  return {-r[0] + r[1], -r[0]};
}

} // namespace

TEST_CASE("classical fan") {
  auto fan = gamma_rays_classical();
  REQUIRE(fan.size() == 3);

  // invariant under the order-three rotation
  std::set<std::vector<Int>> fan_set(fan.begin(), fan.end());
  for (const auto& r : fan) CHECK(fan_set.count(apply_rotation(r)) == 1);

  // no antipodal pair
  for (const auto& r : fan) CHECK(fan_set.count({-r[0], -r[1]}) == 0);
  CHECK(gamma_pm(BSModule::classical()).kind == GammaPm::Kind::Zero);
}

TEST_CASE("certificates") {
  BSModule m = BSModule::classical();

  auto c1 = in_gamma_certificate(m, ray(0, 1));
  REQUIRE(c1.has_value());
  CHECK(c1->functional == RayFunctional::OrdOnePlusU);
  CHECK(c1->family() == "(1+u)^-k");
  CHECK(verify_certificate(m, ray(0, 1), *c1));

  auto c2 = in_gamma_certificate(m, ray(-1, -1));
  REQUIRE(c2.has_value());
  CHECK(c2->functional == RayFunctional::NegTopDeg);
  CHECK(verify_certificate(m, ray(-2, -2), *c2)); // conic

  auto c3 = in_gamma_certificate(m, ray(1, 0));
  REQUIRE(c3.has_value());
  CHECK(c3->functional == RayFunctional::OrdU);

  CHECK(!in_gamma_certificate(m, ray(1, 1)).has_value());
  CHECK(!in_gamma_certificate(m, ray(-1, 0)).has_value());

  // a certificate does not verify against a foreign ray
  CHECK(!verify_certificate(m, ray(1, 1), *c1));
}

TEST_CASE("the classical saturation identities re-verify") {
  BSModule m = BSModule::classical();
  // 1/(1+u) = u^2/(1+u) - (1+u) + 2, against v = (1,1)
  Witness w1;
  w1.qa = 0;
  w1.qb = -1;
  w1.combination = {{2, -1, 1}, {0, 1, -1}, {0, 0, 2}};
  CHECK(verify_witness(m, ray(1, 1), w1));

  // 1/u = (1+u)^2/u - 2 - u
  Witness w2;
  w2.qa = -1;
  w2.qb = 0;
  w2.combination = {{-1, 2, 1}, {0, 0, -2}, {1, 0, -1}};
  CHECK(verify_witness(m, ray(1, 1), w2));

  // a corrupted combination must fail
  Witness bad = w1;
  bad.combination[0].coeff = 2;
  CHECK(!verify_witness(m, ray(1, 1), bad));
  // q inside Q_v is no witness
  Witness pos = w1;
  pos.qa = 1;
  pos.qb = 0;
  CHECK(!verify_witness(m, ray(1, 1), pos));
}

TEST_CASE("witness search") {
  BSModule m = BSModule::classical();

  GammaVerdict v11 = not_in_gamma_witness(m, ray(1, 1), 6);
  CHECK(v11.kind == GammaVerdict::Kind::NotInGamma);
  REQUIRE(v11.witness.has_value());
  CHECK(verify_witness(m, ray(1, 1), *v11.witness));

  GammaVerdict v21 = not_in_gamma_witness(m, ray(2, 1), 8);
  CHECK(v21.kind == GammaVerdict::Kind::NotInGamma);
  CHECK(verify_witness(m, ray(2, 1), *v21.witness));

  // fan rays have no witness at any window
  CHECK(not_in_gamma_witness(m, ray(0, 1), 6).kind == GammaVerdict::Kind::Inconclusive);
  CHECK(not_in_gamma_witness(m, ray(1, 0), 6).kind == GammaVerdict::Kind::Inconclusive);
}

TEST_CASE("ray sweep: exclusivity, closure, conic verdicts") {
  BSModule m = BSModule::classical();
  auto rays = standard_ray_sweep(72);
  REQUIRE(rays.size() == 72);
  auto verdicts = sweep_rays(m, rays, 12, /*parallel=*/false);

  std::set<std::vector<Int>> fan_set;
  for (auto& r : gamma_rays_classical()) fan_set.insert(r);

  int in = 0, out = 0, inconclusive = 0;
  std::set<std::vector<Int>> witnessed;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    switch (v.kind) {
      case GammaVerdict::Kind::InGamma:
        ++in;
        CHECK(fan_set.count(v.ray) == 1);
        REQUIRE(v.certificate.has_value());
        CHECK(verify_certificate(m, rays[i], *v.certificate));
        CHECK(!v.witness.has_value());
        break;
      case GammaVerdict::Kind::NotInGamma:
        ++out;
        CHECK(fan_set.count(v.ray) == 0);
        REQUIRE(v.witness.has_value());
        CHECK(verify_witness(m, rays[i], *v.witness));
        witnessed.insert(v.ray);
        break;
      default: ++inconclusive;
    }
  }
  CHECK(in == 3);
  CHECK(out == 69);
  CHECK(inconclusive == 0);

  // the witnessed set is closed under the order-three rotation
  for (const auto& r : witnessed) {
    auto img = Character::of_ints(apply_rotation(r)).primitive_ray();
    if (fan_set.count(img) == 0) {
      GammaVerdict v = not_in_gamma_witness(m, Character::of_ints(img), 12);
      CHECK(v.kind == GammaVerdict::Kind::NotInGamma);
    }
  }

  // parallel sweep computes the identical verdict list
  auto par = sweep_rays(m, rays, 12, /*parallel=*/true);
  REQUIRE(par.size() == verdicts.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].kind == verdicts[i].kind);
    CHECK(par[i].ray == verdicts[i].ray);
  }

  // conic: a positive rational multiple gets the same verdict
  Character v32 = Character::of({Rational(3, 2), Rational(3, 2)});
  CHECK(decide_ray(m, v32, 6).kind == GammaVerdict::Kind::NotInGamma);
  CHECK(decide_ray(m, ray(1, 1), 6).kind == GammaVerdict::Kind::NotInGamma);
}

TEST_CASE("coefficient modulus variant") {
  BSModule m4 = BSModule::classical(4);
  CHECK(decide_ray(m4, ray(0, 1), 6).kind == GammaVerdict::Kind::InGamma);
  GammaVerdict w = decide_ray(m4, ray(1, 1), 6);
  CHECK(w.kind == GammaVerdict::Kind::NotInGamma);
  CHECK(verify_witness(m4, ray(1, 1), *w.witness));
}

TEST_CASE("tensor modules") {
  for (int d = 1; d <= 3; ++d) {
    BSModule a = BSModule::tensor_power(d);
    CHECK(gamma_pm(a).kind == GammaPm::Kind::Zero);
    CHECK(finitely_presented(a) == FpVerdict::Yes);
  }

  // degenerate tensor is the child itself
  CHECK(BSModule::tensor_power(1).kind() == BSModule::Kind::Classical);

  // outer bound: product of leaf fans, flagged outer
  BSModule a2 = BSModule::tensor_power(2);
  auto bound = gamma_outer_bound(a2);
  REQUIRE(bound.has_value());
  CHECK(!bound->exact);
  CHECK(bound->factor_rays.size() == 2);
  CHECK(bound->factor_rays[0] == gamma_rays_classical());

  // a factor witness settles a tensor ray
  Character v{{Rational(1), Rational(1), Rational(0), Rational(0)}};
  GammaVerdict w = decide_ray(a2, v, 8);
  CHECK(w.kind == GammaVerdict::Kind::NotInGamma);
  REQUIRE(w.witness.has_value());
  CHECK(w.witness->factor == 0);
  CHECK(verify_witness(a2, v, *w.witness));

  Character v2{{Rational(0), Rational(0), Rational(2), Rational(1)}};
  GammaVerdict w2 = decide_ray(a2, v2, 8);
  CHECK(w2.kind == GammaVerdict::Kind::NotInGamma);
  CHECK(w2.witness->factor == 1);

  // all nonzero blocks on the fan: containment proves nothing
  Character von{{Rational(0), Rational(1), Rational(1), Rational(0)}};
  CHECK(decide_ray(a2, von, 6).kind == GammaVerdict::Kind::Inconclusive);
}

TEST_CASE("explicit fans and the fp criterion") {
  // the wreath module Z[u, u^-1] over Q = Z: both rays, so Gamma^pm nontrivial
  BSModule line = BSModule::explicit_fan(1, {{Int(1)}, {Int(-1)}});
  CHECK(gamma_pm(line).kind == GammaPm::Kind::NonZero);
  CHECK(finitely_presented(line) == FpVerdict::No);

  BSModule half = BSModule::explicit_fan(1, {{Int(1)}});
  CHECK(gamma_pm(half).kind == GammaPm::Kind::Zero);
  CHECK(finitely_presented(half) == FpVerdict::Yes);

  CHECK(decide_ray(line, Character::of_ints({Int(2)}), 4).kind ==
        GammaVerdict::Kind::InGamma);

  // tensor with a nontrivial factor: only Unknown is honest
  BSModule mix = BSModule::tensor({BSModule::classical(), line});
  CHECK(gamma_pm(mix).kind == GammaPm::Kind::Unknown);
  CHECK(finitely_presented(mix) == FpVerdict::Unknown);
}

TEST_CASE("verdict json round trip") {
  BSModule m = BSModule::classical();
  for (auto& c : {ray(1, 1), ray(0, 1), ray(-3, 1)}) {
    GammaVerdict v = decide_ray(m, c, 8);
    GammaVerdict back = verdict_from_json(verdict_to_json(v));
    CHECK(back.kind == v.kind);
    CHECK(back.ray == v.ray);
    CHECK(back.window == v.window);
    if (v.witness) {
      REQUIRE(back.witness.has_value());
      CHECK(verify_witness(m, c, *back.witness));
    }
    if (v.certificate) {
      REQUIRE(back.certificate.has_value());
      CHECK(verify_certificate(m, c, *back.certificate));
    }
  }
}

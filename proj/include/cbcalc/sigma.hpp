#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbcalc/ints.hpp"

namespace cbcalc::sigma {

struct SigmaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rational character on Q = Z^n. Rays are compared through the primitive
/// integer normalization, so verdicts are conic by construction.
struct Character {
  std::vector<Rational> coeffs;

  static Character of(std::vector<Rational> coeffs);
  static Character of_ints(const std::vector<Int>& coeffs);
  bool is_zero() const;
  std::vector<Int> primitive_ray() const; // throws SigmaError on zero
  Rational eval(const std::vector<int>& u_exps, const std::vector<int>& v_exps) const;
};

/// Module class the invariant engine understands: the classical one-variable
/// localized ring Z[u, (u+u^2)^{-1}] with Q = Z^2 acting by u^m (1+u)^n
/// (optionally with Z/k coefficients), tensor products of such, and fixtures
/// with an explicitly given fan.
class BSModule {
public:
  enum class Kind { Classical, Tensor, ExplicitFan };

  static BSModule classical(Int modulus = 0);
  static BSModule tensor(std::vector<BSModule> children);
  // d-fold tensor of classical rings: the localized polynomial ring in d variables
  static BSModule tensor_power(int d, Int modulus = 0);
  static BSModule explicit_fan(int q_rank, std::vector<std::vector<Int>> rays);

  Kind kind() const { return kind_; }
  const Int& modulus() const { return modulus_; }
  const std::vector<BSModule>& children() const { return children_; }
  const std::vector<std::vector<Int>>& rays() const { return rays_; }
  int q_rank() const;
  // classical/fan leaves in tensor order
  std::vector<const BSModule*> leaves() const;
  std::string str() const;

private:
  explicit BSModule(Kind k) : kind_(k) {}
  Kind kind_;
  Int modulus_ = 0;
  std::vector<BSModule> children_;
  int fan_rank_ = 0;
  std::vector<std::vector<Int>> rays_;
};

// The three catalog valuations of the classical ring and the ray each induces
// on the exponent pair (m, n) of u^m (1+u)^n.
enum class RayFunctional { OrdU, OrdOnePlusU, NegTopDeg };

struct Certificate {
  RayFunctional functional;
  int factor = 0; // leaf index inside a tensor
  std::vector<Int> induced_ray() const;
  std::string family() const; // the unbounded family it rides
};

// Element q of the leaf's Q = Z^2 together with an exact integer combination
// expressing q.1 in the Z-span of Q_v-monomials; evidence that the module is
// finitely generated over Z[Q_v].
struct Witness {
  int factor = 0;
  int qa = 0, qb = 0; // q = u^qa (1+u)^qb, v(q) < 0
  struct Term {
    int a, b;
    Int coeff;
  };
  std::vector<Term> combination;
};

struct GammaVerdict {
  enum class Kind { InGamma, NotInGamma, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<Int> ray; // primitive form of the decided ray
  int window = 0;       // saturation window in force
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
  std::string str() const;
};

// {(1,0), (0,1), (-1,-1)}: the exact fan of the classical ring.
std::vector<std::vector<Int>> gamma_rays_classical();

// Valuation certificate for rays on the classical fan; nullopt off the fan.
std::optional<Certificate> in_gamma_certificate(const BSModule& m, const Character& v);
// Independent re-verification: the functional must ride an unbounded family
// while staying nonnegative on sampled Q_v-monomials.
bool verify_certificate(const BSModule& m, const Character& v, const Certificate& c);

// Bounded saturation search: expand candidate group elements and Q_v-monomials
// inside the window and solve the integer linear system exactly. Every witness
// is re-verified with exact ring arithmetic before being returned. Absence of
// a witness proves nothing; the verdict is then Inconclusive.
GammaVerdict not_in_gamma_witness(const BSModule& m, const Character& v, int window);
bool verify_witness(const BSModule& m, const Character& v, const Witness& w);

// Certificate on fan rays, witness search elsewhere; tensor rays are decided
// factorwise through the tensor containment (witness direction only).
GammaVerdict decide_ray(const BSModule& m, const Character& v, int window);

// Verdicts for many rays; the parallel path and the serial reference compute
// identical results (each ray is independent).
std::vector<GammaVerdict> sweep_rays(const BSModule& m, const std::vector<Character>& rays,
                                     int window, bool parallel = false);

// The canonical rational ray sweep: the `count` lattice points on the L1
// sphere |a|+|b| = count/4, reduced to primitive vectors, in rotation order.
// For count = 360 exactly three of them lie on the classical fan.
std::vector<Character> standard_ray_sweep(int count = 360);

/// Outer description of the fan: the product of the leaf fans. `exact` only
/// when the module is a single leaf with known fan.
struct FanDescription {
  bool exact = false;
  std::vector<int> factor_ranks;
  std::vector<std::vector<std::vector<Int>>> factor_rays;
};

std::optional<FanDescription> gamma_outer_bound(const BSModule& m);

struct GammaPm {
  enum class Kind { Zero, NonZero, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<Int> ray; // one of the antipodal pair when NonZero
};

// Gamma cap -Gamma: {0} for the classical ring and for tensors of trivial
// factors; decided from the ray list for explicit fans; Unknown otherwise.
GammaPm gamma_pm(const BSModule& m);

enum class FpVerdict { Yes, No, Unknown };

// Bieri-Strebel criterion: a finitely generated metabelian group with module
// M is finitely presented iff Gamma^pm(M) = {0}.
FpVerdict finitely_presented(const BSModule& m);

// Serialization for offline re-verification.
std::string verdict_to_json(const GammaVerdict& v);
GammaVerdict verdict_from_json(const std::string& text);

int default_window(); // 12, overridable through CBCALC_WINDOW

} // namespace cbcalc::sigma

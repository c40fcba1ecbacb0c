#include "cbcalc/sigma.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cbcalc/hnf.hpp"
#include "cbcalc/laurent.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cbcalc::sigma {

using laurent::Element;

Character Character::of(std::vector<Rational> coeffs) {
  if (coeffs.empty()) throw SigmaError("character needs at least one coordinate");
  return Character{std::move(coeffs)};
}

Character Character::of_ints(const std::vector<Int>& coeffs) {
  std::vector<Rational> r(coeffs.begin(), coeffs.end());
  return of(std::move(r));
}

bool Character::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

std::vector<Int> Character::primitive_ray() const {
  if (is_zero()) throw SigmaError("the zero character has no ray");
  Int lcm = 1;
  for (const auto& c : coeffs) {
    Int den = denominator(c);
    lcm = lcm / gcd(lcm, den) * den;
  }
  std::vector<Int> out;
  out.reserve(coeffs.size());
  Int g = 0;
  for (const auto& c : coeffs) {
    Int v = numerator(c) * (lcm / denominator(c));
    g = gcd(g, v);
    out.push_back(std::move(v));
  }
  for (auto& v : out) v /= g; // g > 0: scaling preserves the ray
  return out;
}

Rational Character::eval(const std::vector<int>& u_exps, const std::vector<int>& v_exps) const {
  if (coeffs.size() != 2 * u_exps.size() || u_exps.size() != v_exps.size())
    throw SigmaError("character arity mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < u_exps.size(); ++i) {
    acc += coeffs[2 * i] * u_exps[i];
    acc += coeffs[2 * i + 1] * v_exps[i];
  }
  return acc;
}

BSModule BSModule::classical(Int modulus) {
  if (modulus < 0) throw SigmaError("modulus must be >= 0");
  BSModule m(Kind::Classical);
  m.modulus_ = std::move(modulus);
  return m;
}

BSModule BSModule::tensor(std::vector<BSModule> children) {
  if (children.empty()) throw SigmaError("tensor needs at least one factor");
  if (children.size() == 1) return children[0];
  BSModule m(Kind::Tensor);
  m.children_ = std::move(children);
  return m;
}

BSModule BSModule::tensor_power(int d, Int modulus) {
  if (d < 1) throw SigmaError("tensor power needs d >= 1");
  return tensor(std::vector<BSModule>(d, classical(modulus)));
}

BSModule BSModule::explicit_fan(int q_rank, std::vector<std::vector<Int>> rays) {
  if (q_rank < 1) throw SigmaError("fan rank must be >= 1");
  for (const auto& r : rays)
    if (static_cast<int>(r.size()) != q_rank)
      throw SigmaError("fan ray arity mismatch");
  BSModule m(Kind::ExplicitFan);
  m.fan_rank_ = q_rank;
  for (auto& r : rays) m.rays_.push_back(Character::of_ints(r).primitive_ray());
  return m;
}

int BSModule::q_rank() const {
  switch (kind_) {
    case Kind::Classical: return 2;
    case Kind::ExplicitFan: return fan_rank_;
    case Kind::Tensor: {
      int total = 0;
      for (const auto& c : children_) total += c.q_rank();
      return total;
    }
  }
  return 0;
}

std::vector<const BSModule*> BSModule::leaves() const {
  std::vector<const BSModule*> out;
  if (kind_ != Kind::Tensor) {
    out.push_back(this);
    return out;
  }
  for (const auto& c : children_) {
    auto sub = c.leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string BSModule::str() const {
  switch (kind_) {
    case Kind::Classical: {
      std::ostringstream os;
      os << "classical";
      if (modulus_ > 0) os << "(mod=" << modulus_ << ")";
      return os.str();
    }
    case Kind::Tensor: {
      std::ostringstream os;
      os << "tensor(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) os << ", ";
        os << children_[i].str();
      }
      os << ")";
      return os.str();
    }
    case Kind::ExplicitFan: {
      std::ostringstream os;
      os << "fan(qrank=" << fan_rank_ << ", rays=[";
      for (std::size_t i = 0; i < rays_.size(); ++i) {
        if (i) os << ", ";
        os << "(";
        for (std::size_t j = 0; j < rays_[i].size(); ++j) {
          if (j) os << ",";
          os << rays_[i][j];
        }
        os << ")";
      }
      os << "])";
      return os.str();
    }
  }
  return "";
}

std::vector<Int> Certificate::induced_ray() const {
  switch (functional) {
    case RayFunctional::OrdU: return {1, 0};
    case RayFunctional::OrdOnePlusU: return {0, 1};
    case RayFunctional::NegTopDeg: return {-1, -1};
  }
  return {};
}

std::string Certificate::family() const {
  switch (functional) {
    case RayFunctional::OrdU: return "u^-k";
    case RayFunctional::OrdOnePlusU: return "(1+u)^-k";
    case RayFunctional::NegTopDeg: return "u^k";
  }
  return "";
}

std::string GammaVerdict::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::InGamma: os << "InGamma"; break;
    case Kind::NotInGamma: os << "NotInGamma"; break;
    case Kind::Inconclusive: os << "Inconclusive"; break;
  }
  os << " ray=(";
  for (std::size_t i = 0; i < ray.size(); ++i) {
    if (i) os << ",";
    os << ray[i];
  }
  os << ")";
  return os.str();
}

std::vector<std::vector<Int>> gamma_rays_classical() {
  return {{1, 0}, {0, 1}, {-1, -1}};
}

namespace {

// local character with exactly one classical block
Character slice2(const Character& v, int offset) {
  return Character::of({v.coeffs[offset], v.coeffs[offset + 1]});
}

Rational eval2(const Character& v2, int a, int b) {
  return v2.coeffs[0] * a + v2.coeffs[1] * b;
}

int leaf_value_w(RayFunctional f, const Element& e) {
  switch (f) {
    case RayFunctional::OrdU: return e.ord_var(0);
    case RayFunctional::OrdOnePlusU: return e.ord_one_plus_var(0);
    case RayFunctional::NegTopDeg: return -e.top_deg(0);
  }
  throw SigmaError("bad functional");
}

Int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int acc = 1;
  for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
  return acc;
}

std::vector<int> deepening_schedule(int window) {
  std::vector<int> ws;
  for (int w : {2, 3, 4, 6, 8, 12})
    if (w < window) ws.push_back(w);
  if (window >= 1) ws.push_back(window);
  return ws;
}

struct CandidateMonomials {
  std::vector<std::pair<int, int>> monos; // (a, b) with v >= 0 inside the box
  hnf::Matrix matrix;                     // rows: u-coefficients after clearing
  int w = 0;
  int rows = 0;
};

// everything multiplied by u^W (1+u)^W: monomial (a,b) becomes the polynomial
// u^{a+W} (1+u)^{b+W}, a coefficient column of height 4W+1
std::vector<Int> cleared_column(int a, int b, int w) {
  std::vector<Int> col(4 * w + 1, 0);
  for (int j = 0; j <= b + w; ++j) {
    int e = a + w + j;
    col[e] = binom(b + w, j);
  }
  return col;
}

CandidateMonomials build_candidates(const Character& v2, int w, const Int& modulus) {
  CandidateMonomials out;
  out.w = w;
  out.rows = 4 * w + 1;
  std::vector<std::vector<Int>> cols;
  for (int a = -w; a <= w; ++a)
    for (int b = -w; b <= w; ++b) {
      if (eval2(v2, a, b) < 0) continue;
      out.monos.emplace_back(a, b);
      cols.push_back(cleared_column(a, b, w));
    }
  if (modulus > 0)
    for (int r = 0; r < out.rows; ++r) {
      std::vector<Int> col(out.rows, 0);
      col[r] = modulus;
      cols.push_back(std::move(col));
    }
  out.matrix.assign(out.rows, std::vector<Int>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int r = 0; r < out.rows; ++r) out.matrix[r][j] = cols[j][r];
  return out;
}

std::optional<Witness> witness_search_leaf(const Int& modulus, const Character& v2,
                                           int window, int factor) {
  for (int w : deepening_schedule(window)) {
    CandidateMonomials cand = build_candidates(v2, w, modulus);
    hnf::IntegerSolver solver(cand.matrix);
    // candidate group elements by increasing word length
    for (int s = 1; s <= w; ++s)
      for (int a = -s; a <= s; ++a) {
        int r = s - std::abs(a);
        for (int sign = 0; sign < (r == 0 ? 1 : 2); ++sign) {
          int b = sign == 0 ? r : -r;
          if (eval2(v2, a, b) >= 0) continue;
          auto sol = solver.solve(cleared_column(a, b, w));
          if (!sol) continue;
          Witness wit;
          wit.factor = factor;
          wit.qa = a;
          wit.qb = b;
          for (std::size_t j = 0; j < cand.monos.size(); ++j)
            if ((*sol)[j] != 0)
              wit.combination.push_back({cand.monos[j].first, cand.monos[j].second, (*sol)[j]});
          return wit;
        }
      }
  }
  return std::nullopt;
}

bool verify_witness_leaf(const Int& modulus, const Character& v2, const Witness& w) {
  if (eval2(v2, w.qa, w.qb) >= 0) return false;
  for (const auto& t : w.combination)
    if (eval2(v2, t.a, t.b) < 0) return false;
  Element lhs = Element::monomial(1, {w.qa}, {w.qb});
  for (const auto& t : w.combination)
    lhs = lhs - Element::monomial(1, {t.a}, {t.b}, t.coeff);
  if (modulus == 0) return lhs.is_zero();
  for (const auto& [e, c] : lhs.num().terms())
    if (c % modulus != 0) return false;
  return true;
}

int leaf_offset(const std::vector<const BSModule*>& leaves, int factor) {
  int off = 0;
  for (int i = 0; i < factor; ++i) off += leaves[i]->q_rank();
  return off;
}

} // namespace

std::optional<Certificate> in_gamma_certificate(const BSModule& m, const Character& v) {
  if (m.kind() != BSModule::Kind::Classical)
    throw SigmaError("certificates are issued for the classical ring");
  if (v.is_zero()) throw SigmaError("certificates decide nonzero rays");
  std::vector<Int> r = v.primitive_ray();
  Certificate c;
  c.factor = 0;
  if (r == std::vector<Int>{1, 0})
    c.functional = RayFunctional::OrdU;
  else if (r == std::vector<Int>{0, 1})
    c.functional = RayFunctional::OrdOnePlusU;
  else if (r == std::vector<Int>{-1, -1})
    c.functional = RayFunctional::NegTopDeg;
  else
    return std::nullopt;
  if (!verify_certificate(m, v, c)) throw SigmaError("certificate failed self-verification");
  return c;
}

bool verify_certificate(const BSModule& m, const Character& v, const Certificate& c) {
  if (static_cast<int>(v.coeffs.size()) != m.q_rank()) return false;
  auto leaves = m.leaves();
  if (c.factor < 0 || c.factor >= static_cast<int>(leaves.size())) return false;
  if (leaves[c.factor]->kind() != BSModule::Kind::Classical) return false;
  Character v2 = slice2(v, leaf_offset(leaves, c.factor));
  if (v2.is_zero()) return false;
  if (v2.primitive_ray() != c.induced_ray()) return false;

  // the functional is unbounded below on the inverted generator family
  for (int k = 1; k <= 6; ++k) {
    Element e(1);
    switch (c.functional) {
      case RayFunctional::OrdU: e = Element::monomial(1, {-k}, {0}); break;
      case RayFunctional::OrdOnePlusU: e = Element::monomial(1, {0}, {-k}); break;
      case RayFunctional::NegTopDeg: e = Element::monomial(1, {k}, {0}); break;
    }
    if (leaf_value_w(c.functional, e) != -k) return false;
  }

  // and nonnegative on sampled monomials of Q_v
  int sampled = 0;
  for (int radius = 1; sampled < 100 && radius <= 64; ++radius)
    for (int a = -radius; a <= radius && sampled < 100; ++a)
      for (int b = -radius; b <= radius && sampled < 100; ++b) {
        if (std::max(std::abs(a), std::abs(b)) != radius) continue;
        if (eval2(v2, a, b) < 0) continue;
        Element mono = Element::monomial(1, {a}, {b});
        if (leaf_value_w(c.functional, mono) < 0) return false;
        ++sampled;
      }
  return sampled == 100;
}

bool verify_witness(const BSModule& m, const Character& v, const Witness& w) {
  if (static_cast<int>(v.coeffs.size()) != m.q_rank()) return false;
  auto leaves = m.leaves();
  if (w.factor < 0 || w.factor >= static_cast<int>(leaves.size())) return false;
  const BSModule* leaf = leaves[w.factor];
  if (leaf->kind() != BSModule::Kind::Classical) return false;
  Character v2 = slice2(v, leaf_offset(leaves, w.factor));
  return verify_witness_leaf(leaf->modulus(), v2, w);
}

GammaVerdict not_in_gamma_witness(const BSModule& m, const Character& v, int window) {
  if (window < 1) throw SigmaError("window must be >= 1");
  if (static_cast<int>(v.coeffs.size()) != m.q_rank())
    throw SigmaError("character arity does not match the module");
  if (v.is_zero()) throw SigmaError("the zero character is always in Gamma");
  GammaVerdict out;
  out.ray = v.primitive_ray();
  out.window = window;
  auto leaves = m.leaves();
  int offset = 0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const BSModule* leaf = leaves[i];
    if (leaf->kind() == BSModule::Kind::Classical) {
      Character v2 = slice2(v, offset);
      if (!v2.is_zero()) {
        auto wit = witness_search_leaf(leaf->modulus(), v2, window, static_cast<int>(i));
        if (wit) {
          if (!verify_witness(m, v, *wit))
            throw SigmaError("witness failed exact re-verification");
          out.kind = GammaVerdict::Kind::NotInGamma;
          out.witness = std::move(wit);
          return out;
        }
      }
    } else if (leaf->kind() == BSModule::Kind::ExplicitFan) {
      std::vector<Rational> block(v.coeffs.begin() + offset,
                                  v.coeffs.begin() + offset + leaf->q_rank());
      Character vb{std::move(block)};
      if (!vb.is_zero()) {
        auto r = vb.primitive_ray();
        bool on_fan = std::find(leaf->rays().begin(), leaf->rays().end(), r) !=
                      leaf->rays().end();
        if (!on_fan) {
          out.kind = GammaVerdict::Kind::NotInGamma; // declared fan, no artifact
          return out;
        }
      }
    }
    offset += leaf->q_rank();
  }
  out.kind = GammaVerdict::Kind::Inconclusive;
  return out;
}

GammaVerdict decide_ray(const BSModule& m, const Character& v, int window) {
  if (v.is_zero()) throw SigmaError("decide_ray takes a nonzero character");
  if (static_cast<int>(v.coeffs.size()) != m.q_rank())
    throw SigmaError("character arity does not match the module");
  GammaVerdict out;
  out.ray = v.primitive_ray();
  out.window = window;

  if (m.kind() == BSModule::Kind::Classical) {
    auto cert = in_gamma_certificate(m, v);
    if (cert) {
      out.kind = GammaVerdict::Kind::InGamma;
      out.certificate = cert;
      return out;
    }
    return not_in_gamma_witness(m, v, window);
  }
  if (m.kind() == BSModule::Kind::ExplicitFan) {
    bool on_fan =
        std::find(m.rays().begin(), m.rays().end(), out.ray) != m.rays().end();
    out.kind = on_fan ? GammaVerdict::Kind::InGamma : GammaVerdict::Kind::NotInGamma;
    return out;
  }
  // tensor: the containment Gamma(M) in Gamma(M_1) x Gamma(M_2) transports
  // factor witnesses; membership is not certified this way
  return not_in_gamma_witness(m, v, window);
}

std::vector<GammaVerdict> sweep_rays(const BSModule& m, const std::vector<Character>& rays,
                                     int window, bool parallel) {
  std::vector<GammaVerdict> out(rays.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(rays.size()); ++i)
      out[i] = decide_ray(m, rays[i], window);
  } else {
    for (std::size_t i = 0; i < rays.size(); ++i) out[i] = decide_ray(m, rays[i], window);
  }
  return out;
}

std::vector<Character> standard_ray_sweep(int count) {
  if (count < 4 || count % 4 != 0) throw SigmaError("sweep size must be a positive multiple of 4");
  int radius = count / 4;
  std::vector<Character> out;
  out.reserve(count);
  auto push = [&](int a, int b) { out.push_back(Character::of_ints({Int(a), Int(b)})); };
  for (int i = 0; i < radius; ++i) push(radius - i, i);
  for (int i = 0; i < radius; ++i) push(-i, radius - i);
  for (int i = 0; i < radius; ++i) push(-radius + i, -i);
  for (int i = 0; i < radius; ++i) push(i, -radius + i);
  return out;
}

std::optional<FanDescription> gamma_outer_bound(const BSModule& m) {
  FanDescription out;
  auto leaves = m.leaves();
  out.exact = leaves.size() == 1;
  for (const auto* leaf : leaves) {
    out.factor_ranks.push_back(leaf->q_rank());
    if (leaf->kind() == BSModule::Kind::Classical)
      out.factor_rays.push_back(gamma_rays_classical());
    else
      out.factor_rays.push_back(leaf->rays());
  }
  return out;
}

GammaPm gamma_pm(const BSModule& m) {
  GammaPm out;
  switch (m.kind()) {
    case BSModule::Kind::Classical:
      // no two of (1,0), (0,1), (-1,-1) are antipodal
      out.kind = GammaPm::Kind::Zero;
      return out;
    case BSModule::Kind::ExplicitFan: {
      for (const auto& r : m.rays()) {
        std::vector<Int> neg(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        if (std::find(m.rays().begin(), m.rays().end(), neg) != m.rays().end()) {
          out.kind = GammaPm::Kind::NonZero;
          out.ray = r;
          return out;
        }
      }
      out.kind = GammaPm::Kind::Zero;
      return out;
    }
    case BSModule::Kind::Tensor: {
      for (const auto& c : m.children()) {
        GammaPm sub = gamma_pm(c);
        if (sub.kind != GammaPm::Kind::Zero) {
          // the tensor containment only propagates trivial caps
          out.kind = GammaPm::Kind::Unknown;
          return out;
        }
      }
      out.kind = GammaPm::Kind::Zero;
      return out;
    }
  }
  return out;
}

FpVerdict finitely_presented(const BSModule& m) {
  switch (gamma_pm(m).kind) {
    case GammaPm::Kind::Zero: return FpVerdict::Yes;
    case GammaPm::Kind::NonZero: return FpVerdict::No;
    case GammaPm::Kind::Unknown: return FpVerdict::Unknown;
  }
  return FpVerdict::Unknown;
}

namespace {

nlohmann::json ray_json(const std::vector<Int>& r) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : r) a.push_back(v.str());
  return a;
}

std::vector<Int> ray_from_json(const nlohmann::json& a) {
  std::vector<Int> out;
  for (const auto& v : a) out.push_back(Int(v.get<std::string>()));
  return out;
}

} // namespace

std::string verdict_to_json(const GammaVerdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case GammaVerdict::Kind::InGamma: j["kind"] = "in_gamma"; break;
    case GammaVerdict::Kind::NotInGamma: j["kind"] = "not_in_gamma"; break;
    case GammaVerdict::Kind::Inconclusive: j["kind"] = "inconclusive"; break;
  }
  j["ray"] = ray_json(v.ray);
  j["window"] = v.window;
  if (v.certificate) {
    const char* f = nullptr;
    switch (v.certificate->functional) {
      case RayFunctional::OrdU: f = "ord_u"; break;
      case RayFunctional::OrdOnePlusU: f = "ord_one_plus_u"; break;
      case RayFunctional::NegTopDeg: f = "neg_top_deg"; break;
    }
    j["certificate"] = {{"functional", f},
                        {"factor", v.certificate->factor},
                        {"family", v.certificate->family()}};
  }
  if (v.witness) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : v.witness->combination)
      terms.push_back({{"a", t.a}, {"b", t.b}, {"coeff", t.coeff.str()}});
    j["witness"] = {{"factor", v.witness->factor},
                    {"q", {v.witness->qa, v.witness->qb}},
                    {"combination", terms}};
  }
  return j.dump();
}

GammaVerdict verdict_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GammaVerdict v;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "in_gamma")
    v.kind = GammaVerdict::Kind::InGamma;
  else if (kind == "not_in_gamma")
    v.kind = GammaVerdict::Kind::NotInGamma;
  else
    v.kind = GammaVerdict::Kind::Inconclusive;
  v.ray = ray_from_json(j.at("ray"));
  v.window = j.at("window").get<int>();
  if (j.contains("certificate")) {
    Certificate c;
    std::string f = j["certificate"].at("functional").get<std::string>();
    if (f == "ord_u")
      c.functional = RayFunctional::OrdU;
    else if (f == "ord_one_plus_u")
      c.functional = RayFunctional::OrdOnePlusU;
    else if (f == "neg_top_deg")
      c.functional = RayFunctional::NegTopDeg;
    else
      throw SigmaError("unknown certificate functional");
    c.factor = j["certificate"].at("factor").get<int>();
    v.certificate = c;
  }
  if (j.contains("witness")) {
    Witness w;
    w.factor = j["witness"].at("factor").get<int>();
    w.qa = j["witness"].at("q")[0].get<int>();
    w.qb = j["witness"].at("q")[1].get<int>();
    for (const auto& t : j["witness"].at("combination"))
      w.combination.push_back(
          {t.at("a").get<int>(), t.at("b").get<int>(), Int(t.at("coeff").get<std::string>())});
    v.witness = std::move(w);
  }
  return v;
}

int default_window() {
  if (const char* env = std::getenv("CBCALC_WINDOW")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 12;
}

} // namespace cbcalc::sigma

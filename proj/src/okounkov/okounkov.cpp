#include "torifan/okounkov.hpp"

#include <algorithm>
#include <stdexcept>

#include "torifan/error.hpp"
#include "torifan/linalg.hpp"

namespace torifan::okounkov {

namespace {

void check_flag(const FlagSpec& flag) {
  if (!flag.variety) throw std::invalid_argument("flag: null variety");
  const auto& cones = flag.variety->cones();
  if (flag.cone_index >= cones.size()) {
    throw std::invalid_argument("flag: cone index " + std::to_string(flag.cone_index) + " out of range");
  }
  auto a = cones[flag.cone_index];
  auto b = flag.ray_order;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("flag: ray order is not a permutation of the cone's rays");
}

void require_big(const TDivisor& xi, const char* op) {
  if (!toric::is_big(xi)) throw NotBig(std::string(op) + ": divisor " + to_string(xi.coeffs()) + " is not big");
}

Vec axis_point(std::size_t n, const Rational& x) {
  Vec p(n, Rational(0));
  p[0] = x;
  return p;
}

}  // namespace

FlagSpec standard_flag(const toric::VarietyPtr& x, std::size_t cone_index) {
  return FlagSpec{x, cone_index, x->cones().at(cone_index)};
}

std::vector<FlagSpec> all_flags(const toric::VarietyPtr& x) {
  std::vector<FlagSpec> out;
  for (std::size_t c = 0; c < x->cones().size(); ++c) {
    auto order = x->cones()[c];
    std::sort(order.begin(), order.end());
    do {
      out.push_back(FlagSpec{x, c, order});
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

FlagSpec exceptional_flag(const toric::Blowup& b, std::size_t which) {
  const std::size_t n = b.variety->dim();
  if (which >= n) throw std::out_of_range("exceptional_flag: sub-cone index");
  // The star subdivision replaces the blown-up cone in place by n cones.
  const std::size_t c = b.cone_index + which;
  const auto& cone = b.variety->cones()[c];
  FlagSpec f{b.variety, c, {b.exceptional_ray}};
  for (auto r : cone)
    if (r != b.exceptional_ray) f.ray_order.push_back(r);
  check_flag(f);
  return f;
}

OkounkovBody okounkov_body(const TDivisor& xi, const FlagSpec& flag) {
  check_flag(flag);
  if (xi.variety() != flag.variety) throw std::invalid_argument("okounkov_body: flag on a different variety");
  require_big(xi, "okounkov_body");
  linalg::Matrix a;
  Vec shift;
  for (auto r : flag.ray_order) {
    a.push_back(xi.variety()->ray(r));
    shift.push_back(xi[r]);
  }
  auto body = ratgeom::affine_image(toric::section_polytope(xi), a, shift);
  return OkounkovBody{std::move(body), flag, xi};
}

Rational pseff_threshold(const TDivisor& xi, const FlagSpec& flag) {
  const auto body = okounkov_body(xi, flag);
  const auto& vs = body.body.vertices();
  Rational best = vs.front()[0];
  for (const auto& v : vs) best = std::max(best, v[0]);
  return best;
}

bool translation_identity_check(const TDivisor& xi, const FlagSpec& flag, const Rational& t) {
  const Rational tau = pseff_threshold(xi, flag);
  if (t < 0 || t >= tau) {
    throw ThresholdExceeded("translation identity needs 0 <= t < " + to_string(tau) + ", got " + to_string(t));
  }
  const std::size_t n = xi.dim();
  const auto lhs = ratgeom::truncate_below(okounkov_body(xi, flag).body, 0, t);
  const auto shifted = xi - t * toric::prime_divisor(xi.variety(), flag.ray_order[0]);
  const auto rhs = ratgeom::translate(okounkov_body(shifted, flag).body, axis_point(n, t));
  return ratgeom::polytopes_equal(lhs, rhs);
}

bool nef_by_origin(const TDivisor& xi) {
  require_big(xi, "nef_by_origin");
  const auto& x = xi.variety();
  const Vec origin(x->dim(), Rational(0));
  for (std::size_t c = 0; c < x->cones().size(); ++c) {
    if (!ratgeom::contains(okounkov_body(xi, standard_flag(x, c)).body, origin)) return false;
  }
  return true;
}

SliceProfile slice_profile(const ratgeom::Polytope& body) {
  return SliceProfile{body.ambient_dim(), ratgeom::slice_area_profile(body, 0)};
}

SliceProfile slice_profile(const OkounkovBody& body) { return slice_profile(body.body); }

bool bm_concavity_check(const SliceProfile& profile, unsigned samples) {
  const auto& a = profile.area;
  if (a.empty() || profile.dim < 2) return true;
  const Rational n = static_cast<long>(profile.dim);
  // With g = A^{1/(n-1)}: g'' <= 0  <=>  (n-1) A A'' <= (n-2) A'^2 where A > 0.
  auto concave_at = [&](const ratgeom::Polynomial& p, const ratgeom::Polynomial& d1,
                        const ratgeom::Polynomial& d2, const Rational& r) {
    const Rational v = p(r);
    if (v < 0) return false;
    if (v == 0) return true;
    const Rational s = d1(r);
    return (n - 1) * v * d2(r) <= (n - 2) * s * s;
  };
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const auto& p = a.pieces[i];
    const auto d1 = p.derivative();
    const auto d2 = d1.derivative();
    const Rational lo = a.breakpoints[i], hi = a.breakpoints[i + 1];
    for (unsigned k = 0; k <= samples + 1; ++k) {
      const Rational r = lo + (hi - lo) * Rational(static_cast<long>(k)) / Rational(static_cast<long>(samples + 1));
      if (!concave_at(p, d1, d2, r)) return false;
      // A zero strictly inside the support splits it.
      if (p(r) == 0 && r != a.domain_begin() && r != a.domain_end()) return false;
    }
    if (i + 1 < a.pieces.size()) {
      const auto& q = a.pieces[i + 1];
      if (p(hi) != q(hi)) return false;
      if (d1(hi) < q.derivative()(hi)) return false;
    }
  }
  return true;
}

bool cone_structure_check(const ratgeom::Polytope& body, const Rational& a) {
  if (a <= 0) return false;
  const std::size_t n = body.ambient_dim();
  const auto top = ratgeom::slice(body, 0, a);
  if (top.is_empty()) return false;
  std::vector<Vec> pts{Vec(n, Rational(0))};
  for (const auto& v : top.vertices()) {
    Vec p{a};
    p.insert(p.end(), v.begin(), v.end());
    pts.push_back(std::move(p));
  }
  const auto cone = ratgeom::Polytope::from_vertices(n, std::move(pts));
  return ratgeom::polytopes_equal(ratgeom::truncate(body, 0, Rational(0), a), cone);
}

bool cone_structure_check(const OkounkovBody& body, const Rational& a) { return cone_structure_check(body.body, a); }

bool segment_membership_check(const ratgeom::Polytope& body, const Rational& a) {
  const std::size_t n = body.ambient_dim();
  for (const Rational& x : {Rational(0), Rational(a / 2), a})
    if (!ratgeom::contains(body, axis_point(n, x))) return false;
  return true;
}

bool segment_membership_check(const OkounkovBody& body, const Rational& a) {
  return segment_membership_check(body.body, a);
}

}  // namespace torifan::okounkov

#include "torifan/invariants.hpp"

#include <algorithm>

#include "torifan/error.hpp"

namespace torifan::invariants {

namespace {

void require_ample(const TDivisor& d, const char* op) {
  if (!toric::is_ample(d)) throw NotAmple(std::string(op) + ": divisor " + to_string(d.coeffs()) + " is not ample");
}

// p(lo + w t) as a polynomial in t.
ratgeom::Polynomial rescale(const ratgeom::Polynomial& p, const Rational& lo, const Rational& w) {
  ratgeom::Polynomial out{{Rational(0)}};
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    // out = out * (lo + w t) + c
    Vec next(out.coeffs.size() + 1, Rational(0));
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
      next[k] += out.coeffs[k] * lo;
      next[k + 1] += out.coeffs[k] * w;
    }
    next[0] += *it;
    out.coeffs = std::move(next);
  }
  return out;
}

Rational binomial(std::size_t n, std::size_t k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

std::optional<bool> nonnegative_rec(const ratgeom::Polynomial& p, const Rational& lo, const Rational& hi,
                                    int depth) {
  const auto q = rescale(p, lo, hi - lo);
  const int d = q.degree();
  if (d <= 0) return d < 0 || q.coeffs[0] >= 0;
  const std::size_t deg = static_cast<std::size_t>(d);
  Vec bern(deg + 1, Rational(0));
  for (std::size_t i = 0; i <= deg; ++i)
    for (std::size_t k = 0; k <= i; ++k) bern[i] += binomial(i, k) / binomial(deg, k) * q.coeffs[k];
  if (bern.front() < 0 || bern.back() < 0) return false;
  if (std::all_of(bern.begin(), bern.end(), [](const Rational& b) { return b >= 0; })) return true;
  if (depth == 0) return std::nullopt;
  const Rational mid = (lo + hi) / 2;
  if (p(mid) < 0) return false;
  auto left = nonnegative_rec(p, lo, mid, depth - 1);
  if (left && !*left) return false;
  auto right = nonnegative_rec(p, mid, hi, depth - 1);
  if (right && !*right) return false;
  if (!left || !right) return std::nullopt;
  return true;
}

ratgeom::Polynomial fujita_polynomial(const Rational& base_volume, std::size_t n) {
  ratgeom::Polynomial p{Vec(n + 1, Rational(0))};
  p.coeffs[0] = base_volume;
  p.coeffs[n] = -1;
  return p;
}

}  // namespace

std::optional<bool> nonnegative_on(const ratgeom::Polynomial& p, const Rational& lo, const Rational& hi,
                                   int max_depth) {
  if (lo > hi) return true;
  if (lo == hi) return p(lo) >= 0;
  return nonnegative_rec(p, lo, hi, max_depth);
}

SeshadriResult seshadri(const TDivisor& xi) {
  require_ample(xi, "seshadri");
  const auto& x = xi.variety();
  const auto minus_k = toric::anticanonical(x);
  std::optional<SeshadriResult> best;
  const auto& ws = x->walls();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const Rational ratio = toric::intersect_wall(minus_k, ws[i]) / toric::intersect_wall(xi, ws[i]);
    if (!best || ratio < best->value) best = SeshadriResult{ratio, i, ws[i]};
  }
  return *best;
}

Rational expected_vanishing_order(const TDivisor& l, std::size_t ray) {
  const auto bc = ratgeom::barycenter(toric::section_polytope(l));
  return dot(bc, l.variety()->ray(ray)) + l[ray];
}

Rational expected_vanishing_order_oracle(const TDivisor& l, std::size_t ray) {
  const auto p = toric::section_polytope(l);
  const Rational total = ratgeom::volume(p);
  if (total == 0) throw DegeneratePolytope("expected vanishing order of a class with zero volume");
  // Vol(L - x D_rho) / n! = vol(P_L ∩ {<m, u_rho> >= -a_rho + x}).
  const auto profile = ratgeom::cut_volume_profile(p, l.variety()->ray(ray), -l[ray]);
  return profile.integral() / total;
}

namespace {

DeltaResult delta_from_barycenter(const TDivisor& l, const Vec& bc) {
  const auto& x = *l.variety();
  DeltaResult out;
  for (std::size_t r = 0; r < x.num_rays(); ++r) {
    const Rational s = dot(bc, x.ray(r)) + l[r];
    if (r == 0 || s > out.expected_vanishing_order) {
      out.expected_vanishing_order = s;
      out.ray = r;
    }
  }
  out.value = 1 / out.expected_vanishing_order;
  return out;
}

}  // namespace

DeltaResult delta_toric(const TDivisor& l) {
  require_ample(l, "delta_toric");
  return delta_from_barycenter(l, ratgeom::barycenter(toric::section_polytope(l)));
}

Rational beta(const TDivisor& xi) {
  return std::min(seshadri(xi).value, delta_toric(xi).value);
}

Rational score_bound(std::size_t n) { return pow(Rational(static_cast<long>(n + 1)), static_cast<unsigned>(n)); }

InvariantReport score(const TDivisor& xi) {
  const auto eps = seshadri(xi);
  const auto m = ratgeom::moments(toric::section_polytope(xi));
  const auto delta = delta_from_barycenter(xi, m.barycenter);
  const auto& x = *xi.variety();
  const std::size_t n = x.dim();
  const Rational b = std::min(eps.value, delta.value);
  const Rational volume = factorial(static_cast<unsigned>(n)) * m.volume;
  InvariantReport r{x.name(), n,           xi,          volume, eps.value, eps.wall_index, eps.witness,
                    delta.value, delta.ray, b,           pow(b, static_cast<unsigned>(n)) * volume,
                    score_bound(n), false};
  if (r.score > r.bound) {
    throw AssertionFailure("score " + to_string(r.score) + " exceeds " + to_string(r.bound) + " on " + x.name() +
                           " with divisor " + to_string(xi.coeffs()));
  }
  r.is_extremal = r.score == r.bound;
  return r;
}

bool delta_volume_bound_check(const TDivisor& l) {
  const auto d = delta_toric(l);
  const std::size_t n = l.dim();
  return pow(d.value, static_cast<unsigned>(n)) * toric::vol(l) <= score_bound(n);
}

Rational VolumeProfile::fujita_lower_bound(const Rational& x) const {
  return base_volume - pow(x, static_cast<unsigned>(dim));
}

Rational VolumeProfile::exceptional_vanishing_order() const { return volume.integral() / base_volume; }

VolumeProfile fujita_profile(const TDivisor& xi, std::size_t cone_index) {
  if (!toric::is_nef(xi)) throw NotNef("fujita_profile: divisor " + to_string(xi.coeffs()) + " is not nef");
  const auto blow = toric::blowup_at_fixed_point(xi.variety(), cone_index);
  const auto up = toric::pullback(xi, blow);
  const std::size_t n = xi.dim();
  const Rational nfact = factorial(static_cast<unsigned>(n));

  VolumeProfile out;
  out.dim = n;
  out.cone_index = cone_index;
  out.base_volume = toric::vol(xi);
  if (out.base_volume == 0) throw NotBig("fujita_profile: divisor has zero volume");

  const auto poly = toric::section_polytope(up);
  out.volume = ratgeom::cut_volume_profile(poly, blow.variety->ray(blow.exceptional_ray),
                                           -up[blow.exceptional_ray])
                   .scaled(nfact);
  out.domain_end = out.volume.domain_end();

  const auto target = fujita_polynomial(out.base_volume, n);
  bool holds = true;
  for (std::size_t i = 0; i < out.volume.pieces.size(); ++i) {
    const Rational lo = out.volume.breakpoints[i], hi = out.volume.breakpoints[i + 1];
    const auto diff = out.volume.pieces[i] - target;
    if (diff.degree() < 0) {
      if (!out.equality_intervals.empty() && out.equality_intervals.back().second == lo)
        out.equality_intervals.back().second = hi;
      else
        out.equality_intervals.emplace_back(lo, hi);
    }
    const auto ok = nonnegative_on(diff, lo, hi);
    if (!ok || !*ok) holds = false;
  }
  // Past the threshold the profile is 0, so Vol(xi) - x^n must be <= 0 there.
  if (pow(out.domain_end, static_cast<unsigned>(n)) < out.base_volume) holds = false;
  out.fujita_inequality_holds = holds;
  return out;
}

Rational exceptional_vanishing_order_barycentric(const TDivisor& xi, std::size_t cone_index) {
  const auto blow = toric::blowup_at_fixed_point(xi.variety(), cone_index);
  const auto up = toric::pullback(xi, blow);
  const auto bc = ratgeom::barycenter(toric::section_polytope(up));
  return dot(bc, blow.variety->ray(blow.exceptional_ray)) + up[blow.exceptional_ray];
}

Rational seshadri_at_point(const TDivisor& xi, std::size_t cone_index) {
  require_ample(xi, "seshadri_at_point");
  const auto blow = toric::blowup_at_fixed_point(xi.variety(), cone_index);
  const auto up = toric::pullback(xi, blow);
  const auto e = toric::exceptional(blow);
  std::optional<Rational> best;
  for (const auto& w : blow.variety->walls()) {
    const Rational ec = toric::intersect_wall(e, w);
    if (ec <= 0) continue;
    const Rational ratio = toric::intersect_wall(up, w) / ec;
    if (!best || ratio < *best) best = ratio;
  }
  return *best;
}

BlowupChain blowup_chain(const TDivisor& xi, std::size_t cone_index) {
  const std::size_t n = xi.dim();
  const auto nn = static_cast<unsigned>(n);
  const Rational nr = static_cast<long>(n);
  const auto profile = fujita_profile(xi, cone_index);
  BlowupChain c;
  c.log_discrepancy = exceptional_log_discrepancy(n);
  c.beta = beta(xi);
  c.exceptional_s = profile.exceptional_vanishing_order();
  c.beta_times_s = c.beta * c.exceptional_s;
  c.discrepancy_bound = c.log_discrepancy >= c.beta_times_s;
  c.discrepancy_tight = c.log_discrepancy == c.beta_times_s;
  const Rational lhs = pow((nr + 1) * c.exceptional_s / nr, nn);
  c.fujita_bound = lhs >= profile.base_volume;
  c.fujita_tight = lhs == profile.base_volume;
  const Rational scored = pow(c.beta, nn) * profile.base_volume;
  c.final_bound = score_bound(n) >= scored;
  c.final_tight = score_bound(n) == scored;
  return c;
}

}  // namespace torifan::invariants

#include <doctest.h>

#include <random>

#include "fans.hpp"
#include "oracles.hpp"
#include "torifan/error.hpp"
#include "torifan/invariants.hpp"

using namespace torifan;
using namespace torifan::toric;
using namespace torifan::invariants;

namespace {

Rational Q(long p, long q = 1) { return make_rational(p, q); }

TDivisor random_ample(const VarietyPtr& x, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(0, 12);
  for (;;) {
    Vec c(x->num_rays());
    for (auto& v : c) v = make_rational(coef(rng), 4);
    TDivisor d(x, c);
    if (is_ample(d)) return d;
  }
}

// S from a shoelace centroid; independent of triangulation.
Rational shoelace_s(const TDivisor& l, std::size_t ray) {
  const auto hull = oracle::convex_hull_2d(section_polytope(l).vertices());
  const auto c = oracle::shoelace_centroid(hull);
  return dot(c, l.variety()->ray(ray)) + l[ray];
}

}  // namespace

TEST_CASE("projective plane with O(1)") {
  const auto p2 = validate(fans::p2());
  const TDivisor h(p2, {0, 0, 1});
  const auto r = score(h);
  CHECK(r.eps == 3);
  CHECK(r.delta == 3);
  CHECK(r.beta == 3);
  CHECK(r.vol == 1);
  CHECK(r.score == 9);
  CHECK(r.bound == 9);
  CHECK(r.is_extremal);
  for (std::size_t i = 0; i < 3; ++i) CHECK(expected_vanishing_order(h, i) == Q(1, 3));
}

TEST_CASE("F1 anticanonical") {
  const auto f1 = validate(fans::f1());
  const auto k = anticanonical(f1);
  const Vec expected{Q(13, 12), Q(7, 6), Q(13, 12), Q(5, 6)};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(expected_vanishing_order(k, i) == expected[i]);
    CHECK(expected_vanishing_order_oracle(k, i) == expected[i]);
    CHECK(shoelace_s(k, i) == expected[i]);
  }
  const auto d = delta_toric(k);
  CHECK(d.value == Q(6, 7));
  CHECK(d.ray == 1);
  const auto e = seshadri(k);
  CHECK(e.value == 1);
  const auto r = score(k);
  CHECK(r.beta == Q(6, 7));
  CHECK(r.score == Q(288, 49));
  CHECK_FALSE(r.is_extremal);

  // A non-anticanonical ample class.
  const TDivisor xi(f1, {2, 0, 0, 1});
  CHECK(is_ample(xi));
  CHECK(seshadri(xi).value == Q(1, 2));

  CHECK_THROWS_AS(seshadri(TDivisor(f1, {1, 0, 0, 0})), NotAmple);
  CHECK_THROWS_AS(score(TDivisor(f1, {0, 1, 0, 0})), NotAmple);
}

TEST_CASE("symmetric cases") {
  const auto q = validate(fans::p1xp1());
  const auto k = anticanonical(q);
  for (std::size_t i = 0; i < 4; ++i) CHECK(expected_vanishing_order(k, i) == 1);
  const auto r = score(k);
  CHECK(r.eps == 1);
  CHECK(r.delta == 1);
  CHECK(r.score == 8);

  const auto p3 = validate(fans::projective(3));
  const TDivisor h(p3, {0, 0, 0, 1});
  CHECK(delta_toric(h).value == 4);
  CHECK(score(h).score == 64);
  CHECK(score(anticanonical(p3)).is_extremal);

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto pn = validate(fans::projective(n));
    CHECK(score(anticanonical(pn)).score == score_bound(n));
  }
}

TEST_CASE("scaling laws and bounds") {
  std::mt19937_64 rng(17);
  for (const auto& fan : {fans::f1(), fans::bl2p2(), fans::bl3p2(), fans::p1cubed()}) {
    const auto x = validate(fan);
    const auto n = static_cast<unsigned>(x->dim());
    for (int t = 0; t < 4; ++t) {
      const auto xi = random_ample(x, rng);
      const Rational s = Q(1 + t, 3);
      CHECK(seshadri(s * xi).value == seshadri(xi).value / s);
      CHECK(delta_toric(s * xi).value == delta_toric(xi).value / s);
      CHECK(score(s * xi).score == score(xi).score);
      CHECK(delta_volume_bound_check(xi));
      const auto r = score(xi);
      CHECK(r.score == pow(r.beta, n) * r.vol);
      CHECK(r.score <= r.bound);
    }
  }
}

TEST_CASE("S agrees with its defining integral") {
  std::mt19937_64 rng(5);
  for (const auto& fan : {fans::f1(), fans::bl2p2(), fans::bl3p2(), fans::projective(3), fans::p1cubed()}) {
    const auto x = validate(fan);
    for (int t = 0; t < 3; ++t) {
      const auto l = random_ample(x, rng);
      for (std::size_t r = 0; r < x->num_rays(); ++r) {
        const Rational s = expected_vanishing_order(l, r);
        CHECK(s == expected_vanishing_order_oracle(l, r));
        if (x->dim() == 2) CHECK(s == shoelace_s(l, r));
      }
    }
  }
}

TEST_CASE("nonnegativity by Bernstein coefficients") {
  using ratgeom::Polynomial;
  const Polynomial square{{Q(1, 4), Q(-1), Q(1)}};  // (x - 1/2)^2
  CHECK(nonnegative_on(square, 0, 1) == true);
  const Polynomial dip{{Q(-1, 100), 0, 1}};
  CHECK(nonnegative_on(dip, 0, 1) == false);
  CHECK(nonnegative_on(dip, Q(1, 5), 1) == true);
  const Polynomial bump{{0, 1, -1}};
  CHECK(nonnegative_on(bump, 0, 1) == true);
  CHECK(nonnegative_on(bump, 0, 2) == false);
  CHECK(nonnegative_on(Polynomial{{}}, 0, 1) == true);
}

TEST_CASE("Fujita profiles") {
  using ratgeom::Polynomial;
  const auto p2 = validate(fans::p2());
  const auto prof = fujita_profile(TDivisor(p2, {0, 0, 1}), 0);
  CHECK(prof.base_volume == 1);
  CHECK(prof.domain_end == 1);
  REQUIRE(prof.volume.pieces.size() == 1);
  CHECK(prof.volume.pieces[0] == Polynomial{{1, 0, -1}});
  REQUIRE(prof.equality_intervals.size() == 1);
  CHECK(prof.equality_intervals[0] == std::pair<Rational, Rational>{0, 1});
  CHECK(prof.fujita_inequality_holds);
  CHECK(prof.exceptional_vanishing_order() == Q(2, 3));

  const auto q = validate(fans::p1xp1());
  const auto pq = fujita_profile(anticanonical(q), 0);
  CHECK(pq.base_volume == 8);
  CHECK(pq.domain_end == 4);
  REQUIRE(pq.equality_intervals.size() == 1);
  CHECK(pq.equality_intervals[0] == std::pair<Rational, Rational>{0, 2});
  for (const auto& x : {Q(0), Q(1, 2), Q(3, 2), Q(2)}) CHECK(pq(x) == 8 - x * x);
  for (const auto& x : {Q(5, 2), Q(3), Q(4)}) CHECK(pq(x) == (4 - x) * (4 - x));
  CHECK(pq.margin(3) == 2);
  CHECK(pq.fujita_inequality_holds);
  CHECK(pq.exceptional_vanishing_order() == 2);

  CHECK_THROWS_AS(fujita_profile(TDivisor(validate(fans::f1()), {0, 1, 0, 0}), 0), NotNef);
}

TEST_CASE("profile integral matches barycentric S on the blow-up") {
  std::mt19937_64 rng(23);
  for (const auto& fan : {fans::p2(), fans::f1(), fans::bl3p2(), fans::projective(3)}) {
    const auto x = validate(fan);
    for (int t = 0; t < 2; ++t) {
      const auto xi = random_ample(x, rng);
      for (std::size_t c = 0; c < x->cones().size(); c += 2) {
        const auto prof = fujita_profile(xi, c);
        CHECK(prof.fujita_inequality_holds);
        CHECK(prof.exceptional_vanishing_order() == exceptional_vanishing_order_barycentric(xi, c));
        CHECK(prof(0) == prof.base_volume);
      }
    }
  }
}

TEST_CASE("Seshadri constant at a point") {
  const auto p2 = validate(fans::p2());
  CHECK(seshadri_at_point(TDivisor(p2, {0, 0, 1}), 0) == 1);
  const auto q = validate(fans::p1xp1());
  CHECK(seshadri_at_point(anticanonical(q), 0) == 2);

  std::mt19937_64 rng(31);
  for (const auto& fan : {fans::f1(), fans::bl2p2(), fans::p1cubed()}) {
    const auto x = validate(fan);
    const auto xi = random_ample(x, rng);
    const auto n = static_cast<unsigned>(x->dim());
    for (std::size_t c = 0; c < x->cones().size(); ++c) {
      const Rational e = seshadri_at_point(xi, c);
      CHECK(e > 0);
      CHECK(pow(e, n) <= vol(xi));
      // Vol(xi) - x^n is exact up to eps_p.
      CHECK(fujita_profile(xi, c)(e) == vol(xi) - pow(e, n));
    }
  }
}

TEST_CASE("blow-up chain") {
  const auto p2 = validate(fans::p2());
  for (const auto& d : {TDivisor(p2, {0, 0, 1}), anticanonical(p2)}) {
    const auto c = blowup_chain(d, 0);
    CHECK(c.log_discrepancy == 2);
    CHECK(c.beta_times_s == 2);
    CHECK(c.discrepancy_bound);
    CHECK(c.discrepancy_tight);
    CHECK(c.fujita_tight);
    CHECK(c.final_tight);
  }
  const auto q = blowup_chain(anticanonical(validate(fans::p1xp1())), 0);
  CHECK(q.exceptional_s == 2);
  CHECK(q.discrepancy_tight);
  CHECK(q.fujita_bound);
  CHECK_FALSE(q.fujita_tight);
  CHECK(q.final_bound);
  CHECK_FALSE(q.final_tight);

  std::mt19937_64 rng(41);
  const auto bl3 = validate(fans::bl3p2());
  for (int t = 0; t < 4; ++t) {
    const auto c = blowup_chain(random_ample(bl3, rng), static_cast<std::size_t>(t));
    CHECK(c.discrepancy_bound);
    CHECK(c.fujita_bound);
    CHECK(c.final_bound);
  }
}

TEST_CASE("envelopes along a segment of ample classes") {
  const auto f1 = validate(fans::f1());
  const auto k = anticanonical(f1);
  const auto dir = prime_divisor(f1, 0);
  auto at = [&](const Rational& t) { return k + t * dir; };

  // 1/eps is a max of affine functions of the class, hence convex.
  for (int i = 0; i < 12; ++i) {
    const Rational a = Q(i, 4), b = Q(i + 2, 4), m = (a + b) / 2;
    CHECK(2 / seshadri(at(m)).value <= 1 / seshadri(at(a)).value + 1 / seshadri(at(b)).value);
  }

  // Vol * S_rho is polynomial of degree n + 1 along the segment, so each
  // branch of delta is a ratio of polynomials and delta is continuous.
  for (std::size_t r = 0; r < f1->num_rays(); ++r) {
    Vec xs, ys;
    for (int i = 0; i <= 3; ++i) {
      const Rational t = Q(i, 2);
      xs.push_back(t);
      ys.push_back(vol(at(t)) * expected_vanishing_order(at(t), r));
    }
    const auto p = ratgeom::Polynomial::interpolate(xs, ys);
    for (const auto& t : {Q(1, 3), Q(5, 7), Q(9, 4), Q(3)})
      CHECK(p(t) == vol(at(t)) * expected_vanishing_order(at(t), r));
  }
  const Rational h = Q(1, 1000000);
  for (const auto& t : {Q(1, 2), Q(1), Q(2)}) {
    const Rational jump = delta_toric(at(t + h)).value - delta_toric(at(t)).value;
    CHECK(abs(jump) < Q(1, 10000));
  }
}

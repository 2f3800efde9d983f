#include <doctest.h>

#include <random>

#include "fans.hpp"
#include "oracles.hpp"
#include "torifan/error.hpp"
#include "torifan/invariants.hpp"
#include "torifan/okounkov.hpp"

using namespace torifan;
using namespace torifan::toric;
using namespace torifan::okounkov;
using ratgeom::Polynomial;
using ratgeom::Polytope;

namespace {

Rational Q(long p, long q = 1) { return make_rational(p, q); }

Polytope hull(std::size_t n, std::vector<Vec> pts) { return Polytope::from_vertices(n, std::move(pts)); }

TDivisor random_big(const VarietyPtr& x, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-4, 8);
  for (;;) {
    Vec c(x->num_rays());
    for (auto& v : c) v = make_rational(coef(rng), 2);
    TDivisor d(x, c);
    if (is_big(d)) return d;
  }
}

bool nonnegative(const Polytope& p) {
  for (const auto& v : p.vertices())
    for (const auto& c : v)
      if (c < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("bodies of torus-invariant flags") {
  const auto p2 = validate(fans::p2());
  const TDivisor h(p2, {0, 0, 1});
  const auto b = okounkov_body(h, standard_flag(p2, 0));
  CHECK(b.body.vertices() == std::vector<Vec>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(2 * ratgeom::volume(b.body) == vol(h));

  const auto f1 = validate(fans::f1());
  const auto k = anticanonical(f1);
  const auto flags = all_flags(f1);
  CHECK(flags.size() == 8);
  for (const auto& flag : flags) {
    const auto body = okounkov_body(k, flag);
    CHECK(ratgeom::volume(body.body) == 4);
    CHECK(nonnegative(body.body));
    CHECK(body.body.vertices().size() == 4);
    const auto area = oracle::shoelace_area(oracle::convex_hull_2d(body.body.vertices()));
    CHECK(area == 4);
  }

  for (const auto& fan : {fans::bl3p2(), fans::projective(3), fans::p1cubed()}) {
    const auto x = validate(fan);
    const auto kx = anticanonical(x);
    const Rational v = vol(kx);
    const Rational nf = factorial(static_cast<unsigned>(x->dim()));
    for (const auto& flag : all_flags(x)) {
      const auto body = okounkov_body(kx, flag);
      CHECK(nf * ratgeom::volume(body.body) == v);
      CHECK(nonnegative(body.body));
    }
  }

  CHECK_THROWS_AS(okounkov_body(TDivisor(p2, {0, 0, 0}), standard_flag(p2, 0)), NotBig);
  CHECK_THROWS_AS(okounkov_body(h, FlagSpec{p2, 0, {0, 2}}), std::invalid_argument);
}

TEST_CASE("pseudo-effective thresholds and the translation identity") {
  const auto p2 = validate(fans::p2());
  const TDivisor h(p2, {0, 0, 1});
  const auto flag = standard_flag(p2, 0);
  CHECK(pseff_threshold(h, flag) == 1);
  CHECK(translation_identity_check(h, flag, 0));
  CHECK(translation_identity_check(h, flag, Q(1, 2)));
  CHECK_THROWS_AS(translation_identity_check(h, flag, 1), ThresholdExceeded);
  CHECK_THROWS_AS(translation_identity_check(h, flag, Q(-1, 3)), ThresholdExceeded);

  const auto q = validate(fans::p1xp1());
  const auto kq = anticanonical(q);
  const Rational tau = pseff_threshold(kq, standard_flag(q, 0));
  CHECK(tau == 2);
  CHECK(vol(kq - tau * prime_divisor(q, q->cones()[0][0])) == 0);

  const auto f1 = validate(fans::f1());
  std::mt19937_64 rng(7);
  for (const auto& flag : all_flags(f1)) {
    const auto k = anticanonical(f1);
    CHECK(translation_identity_check(k, flag, Q(1, 3)));
    const Rational t1 = pseff_threshold(k, flag);
    for (int i = 0; i < 4; ++i) {
      std::uniform_int_distribution<long> num(0, 99);
      const Rational t = t1 * make_rational(num(rng), 100);
      CHECK(translation_identity_check(k, flag, t));
    }
  }
  // Non-nef big classes too.
  const auto bl3 = validate(fans::bl3p2());
  for (int i = 0; i < 6; ++i) {
    const auto d = random_big(bl3, rng);
    const auto flag = all_flags(bl3)[static_cast<std::size_t>(i)];
    CHECK(translation_identity_check(d, flag, pseff_threshold(d, flag) / 2));
  }
}

TEST_CASE("nef criterion by origin membership") {
  const auto f1 = validate(fans::f1());
  const auto k = anticanonical(f1);
  for (std::size_t c = 0; c < 4; ++c)
    CHECK(ratgeom::contains(okounkov_body(k, standard_flag(f1, c)).body, Vec{0, 0}));
  CHECK(nef_by_origin(k));

  const auto p2 = validate(fans::p2());
  const TDivisor mixed(p2, {Q(-1, 2), 1, 1});
  CHECK(nef_by_origin(mixed) == is_nef(mixed));

  const TDivisor pushed = k - 2 * prime_divisor(f1, 0);
  REQUIRE(is_big(pushed));
  CHECK_FALSE(is_nef(pushed));
  CHECK_FALSE(nef_by_origin(pushed));

  std::mt19937_64 rng(11);
  for (const auto& fan : {fans::f1(), fans::bl2p2(), fans::bl3p2(), fans::p1xp1()}) {
    const auto x = validate(fan);
    int disagreements = 0;
    for (int t = 0; t < 30; ++t) {
      const auto d = random_big(x, rng);
      disagreements += nef_by_origin(d) != is_nef(d);
    }
    CHECK_MESSAGE(disagreements == 0, fan.name);
  }
  CHECK_THROWS_AS(nef_by_origin(TDivisor(p2, {0, 0, 0})), NotBig);
}

TEST_CASE("slice profiles") {
  const auto simplex = hull(2, {{0, 0}, {1, 0}, {0, 1}});
  const auto cone = hull(2, {{0, 0}, {1, 0}, {1, 1}});
  const auto square = hull(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto sp = slice_profile(simplex);
  REQUIRE(sp.area.pieces.size() == 1);
  CHECK(sp.area.pieces[0] == Polynomial{{1, -1}});
  CHECK(slice_profile(cone).area.pieces[0] == Polynomial{{0, 1}});
  CHECK(slice_profile(square).area.pieces[0] == Polynomial{{1}});

  // Model cone in dimension n: A(r) = r^{n-1}/(n-1)!.
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<Vec> pts{Vec(n, Rational(0))};
    Vec v(n, Rational(0));
    v[0] = 1;
    pts.push_back(v);
    for (std::size_t k = 1; k < n; ++k) {
      v[k] = 1;
      pts.push_back(v);
    }
    const auto prof = slice_profile(hull(n, pts));
    REQUIRE(prof.area.pieces.size() == 1);
    Polynomial expected{Vec(n, Rational(0))};
    expected.coeffs[n - 1] = 1 / factorial(static_cast<unsigned>(n - 1));
    CHECK(prof.area.pieces[0] == expected);
    CHECK(bm_concavity_check(prof));
  }

  std::mt19937_64 rng(13);
  const auto bl2 = validate(fans::bl2p2());
  for (const auto& flag : all_flags(bl2)) {
    const auto body = okounkov_body(anticanonical(bl2), flag);
    const auto prof = slice_profile(body);
    CHECK(prof.area.integral() == ratgeom::volume(body.body));
    std::uniform_int_distribution<long> num(0, 60);
    const Rational x = make_rational(num(rng), 20);
    CHECK(prof.area.integral_up_to(x) ==
          ratgeom::volume(ratgeom::truncate(body.body, 0, prof.support_begin(), x)));
    CHECK(bm_concavity_check(prof));
  }
}

TEST_CASE("Brunn-Minkowski concavity") {
  CHECK(bm_concavity_check(slice_profile(hull(2, {{0, 0}, {1, 0}, {0, 1}}))));
  CHECK(bm_concavity_check(slice_profile(hull(2, {{0, 0}, {1, 0}, {1, 1}}))));

  const SliceProfile jump{2, {{0, 1, 2}, {Polynomial{{0, 1}}, Polynomial{{2}}}}};
  CHECK_FALSE(bm_concavity_check(jump));
  const SliceProfile kink{2, {{0, 1, 2}, {Polynomial{{1}}, Polynomial{{0, 1}}}}};
  CHECK_FALSE(bm_concavity_check(kink));
  const SliceProfile convex{2, {{0, 1}, {Polynomial{{1, 0, 1}}}}};
  CHECK_FALSE(bm_concavity_check(convex));
  // r^2 is concave after the square root in dimension 3, r^3 is not.
  CHECK(bm_concavity_check(SliceProfile{3, {{0, 1}, {Polynomial{{0, 0, 1}}}}}));
  CHECK_FALSE(bm_concavity_check(SliceProfile{3, {{0, 1}, {Polynomial{{0, 0, 0, 1}}}}}));

  for (const auto& fan : {fans::p1cubed(), fans::projective(3)}) {
    const auto x = validate(fan);
    for (const auto& flag : all_flags(x)) CHECK(bm_concavity_check(slice_profile(okounkov_body(anticanonical(x), flag))));
  }
}

TEST_CASE("cone structure in the equality case") {
  const auto cone = hull(2, {{0, 0}, {1, 0}, {1, 1}});
  const auto square = hull(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(cone_structure_check(cone, 1));
  CHECK(segment_membership_check(cone, 1));
  CHECK_FALSE(cone_structure_check(square, 1));
  CHECK_FALSE(segment_membership_check(ratgeom::translate(cone, {0, 1}), 1));

  const auto p2 = validate(fans::p2());
  const TDivisor h(p2, {0, 0, 1});
  const auto prof = invariants::fujita_profile(h, 0);
  REQUIRE(prof.equality_intervals.size() == 1);
  const Rational a = prof.equality_intervals[0].second;
  CHECK(a == 1);
  const auto blow = blowup_at_fixed_point(p2, 0);
  for (std::size_t which = 0; which < 2; ++which) {
    const auto body = okounkov_body(pullback(h, blow), exceptional_flag(blow, which));
    CHECK(cone_structure_check(body, a));
    CHECK(segment_membership_check(body, a));
    const auto sp = slice_profile(body);
    CHECK(sp.area.pieces[0] == Polynomial{{0, 1}});
  }

  const auto q = validate(fans::p1xp1());
  const auto kq = anticanonical(q);
  const auto pq = invariants::fujita_profile(kq, 0);
  CHECK(pq.equality_intervals[0].second == 2);
  const auto bq = blowup_at_fixed_point(q, 0);
  const auto body = okounkov_body(pullback(kq, bq), exceptional_flag(bq));
  CHECK(cone_structure_check(body, 2));
  CHECK(segment_membership_check(body, 2));
  CHECK(cone_structure_check(body, 1));
  CHECK_FALSE(cone_structure_check(body, 3));

  const auto p3 = validate(fans::projective(3));
  const TDivisor h3(p3, {0, 0, 0, 1});
  const auto b3 = blowup_at_fixed_point(p3, 0);
  const auto body3 = okounkov_body(pullback(h3, b3), exceptional_flag(b3));
  CHECK(cone_structure_check(body3, 1));
  CHECK(slice_profile(body3).area.pieces[0] == Polynomial{{0, 0, Q(1, 2)}});
}

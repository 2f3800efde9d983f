// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "torifan/catalog.hpp"
#include "torifan/error.hpp"
#include "torifan/invariants.hpp"
#include "torifan/okounkov.hpp"
#include "torifan/sweep.hpp"

using namespace torifan;
using namespace torifan::toric;

namespace {

Rational Q(long p, long q = 1) { return make_rational(p, q); }

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what;
    ok = ok && cond;
  }
};

harness::Catalog surfaces() {
  auto c = harness::load_catalog(TORIFAN_CATALOG_DIR);
  std::erase_if(c, [](const harness::CatalogEntry& e) { return e.fan.dim != 2; });
  return c;
}

TDivisor random_class(const VarietyPtr& x, std::mt19937_64& rng, int lo, int hi,
                      const std::function<bool(const TDivisor&)>& keep) {
  std::uniform_int_distribution<int> coef(lo, hi);
  for (;;) {
    Vec c(x->num_rays());
    for (auto& v : c) v = make_rational(coef(rng), 3);
    TDivisor d(x, c);
    if (keep(d)) return d;
  }
}

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.note << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    if (c.ok) c.note << "over time limit";
    c.ok = false;
  }
  if (!c.ok) ++failures;
  std::string timing = std::to_string(secs).substr(0, std::to_string(secs).find('.') + 3) + " s";
  if (limit_seconds > 0) timing += ", limit " + std::to_string(static_cast<int>(limit_seconds)) + " s";
  std::printf("criterion %d %s: %s (%s)%s%s\n", id, title, c.ok ? "PASS" : "FAIL", timing.c_str(),
              c.note.str().empty() ? "" : " ", c.note.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  run(1, "projective spaces are extremal", 1.0, [](Check& c) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto x = validate(harness::projective_space(n));
      Vec coeffs(n + 1, Rational(0));
      coeffs[n] = 1;
      const TDivisor h(x, coeffs);
      const auto r = invariants::score(h);
      const Rational np1 = static_cast<long>(n + 1);
      c.expect(r.eps == np1 && r.delta == np1 && r.beta == np1, "eps = delta = n+1 on P" + std::to_string(n));
      c.expect(r.score == pow(np1, static_cast<unsigned>(n)) && r.is_extremal, "score (n+1)^n");
      for (std::size_t i = 0; i <= n; ++i)
        c.expect(invariants::expected_vanishing_order(h, i) == 1 / np1, "S = 1/(n+1)");
    }
  });

  run(2, "F1 anticanonical pipeline", 1.0, [](Check& c) {
    const auto f1 = validate(harness::del_pezzo(1));
    const auto k = anticanonical(f1);
    const auto d = invariants::delta_toric(k);
    c.expect(d.value == Q(6, 7), "delta = 6/7");
    c.expect(f1->fan().rays[d.ray] == IntVec{0, 1} && d.expected_vanishing_order == Q(7, 6), "witness ray (0,1)");
    const auto r = invariants::score(k);
    c.expect(r.eps == 1 && r.beta == Q(6, 7) && r.score == Q(288, 49), "eps, beta, score");
    const Vec bc{Q(1, 12), Q(1, 6)};
    c.expect(ratgeom::barycenter(section_polytope(k)) == bc, "barycenter (1/12, 1/6)");
    for (std::size_t i = 0; i < f1->num_rays(); ++i) {
      c.expect(invariants::expected_vanishing_order_oracle(k, i) == dot(bc, f1->ray(i)) + k[i],
               "defining integral matches barycenter pairing");
    }
  });

  run(3, "theorem inequality sweep, surfaces at resolution 8", 30.0, [](Check& c) {
    const auto rows = harness::verify_theorem(surfaces(), 8);
    c.expect(rows.size() == 5, "five bundled surfaces");
    for (const auto& row : rows) {
      c.expect(row.sweep.ample_samples >= 100, row.variety + " has at least 100 ample samples");
      for (const auto& cls : row.sweep.classes) {
        c.expect(cls.report.score <= 9, row.variety + " score <= 9");
        c.expect(cls.delta_volume_ok, row.variety + " delta^2 vol <= 9");
      }
      c.expect(row.projective_space ? row.sweep.gap == 0 : row.sweep.gap > 0, row.variety + " gap");
    }
  });

  run(4, "Fujita profiles", 10.0, [](Check& c) {
    const auto p2 = validate(harness::del_pezzo(0));
    const auto prof = invariants::fujita_profile(TDivisor(p2, {0, 0, 1}), 0);
    c.expect(prof.volume.breakpoints == Vec{0, 1} && prof.volume.pieces.size() == 1 &&
                 prof.volume.pieces[0] == ratgeom::Polynomial{{1, 0, -1}},
             "P2 profile is 1 - x^2 on [0,1]");
    for (const auto& e : surfaces()) {
      const auto x = validate(e.fan);
      const auto k = anticanonical(x);
      for (std::size_t cone = 0; cone < x->cones().size(); ++cone) {
        const auto p = invariants::fujita_profile(k, cone);
        c.expect(p.fujita_inequality_holds, e.name + " symbolic Fujita inequality");
        Vec xs = p.volume.breakpoints;
        for (long s = 0; s < 100; ++s) xs.push_back(p.domain_end * make_rational(s, 99));
        for (const auto& t : xs) c.expect(p.margin(t) >= 0, e.name + " margin >= 0");
      }
    }
  });

  run(5, "S integral consistency and the blow-up chain", 0, [](Check& c) {
    std::mt19937_64 rng(2024);
    const auto surf = surfaces();
    int random_checked = 0;
    for (const auto& e : surf) {
      const auto x = validate(e.fan);
      const auto k = anticanonical(x);
      for (std::size_t r = 0; r < x->num_rays(); ++r) {
        c.expect(invariants::expected_vanishing_order(k, r) == invariants::expected_vanishing_order_oracle(k, r),
                 e.name + " -K S");
      }
      for (int t = 0; t < 10; ++t, ++random_checked) {
        const auto d = random_class(x, rng, 0, 9, [](const TDivisor& d) { return is_ample(d); });
        for (std::size_t r = 0; r < x->num_rays(); ++r) {
          c.expect(invariants::expected_vanishing_order(d, r) == invariants::expected_vanishing_order_oracle(d, r),
                   e.name + " random ample S");
        }
      }
    }
    c.expect(random_checked >= 50, "50 random ample classes");
    const auto p2 = validate(harness::del_pezzo(0));
    const auto chain = invariants::blowup_chain(TDivisor(p2, {0, 0, 1}), 0);
    c.expect(chain.log_discrepancy == 2 && chain.beta_times_s == 2, "n = beta S(E)");
    c.expect(chain.discrepancy_bound && chain.fujita_bound && chain.final_bound, "chain holds");
    c.expect(chain.discrepancy_tight && chain.fujita_tight && chain.final_tight, "chain is tight on P2");
  });

  run(6, "Okounkov suite", 60.0, [](Check& c) {
    std::mt19937_64 rng(99);
    std::size_t pairs = 0;
    for (const auto& e : surfaces()) {
      const auto x = validate(e.fan);
      const auto big = [](const TDivisor& d) { return is_big(d); };
      const std::vector<TDivisor> classes{anticanonical(x), random_class(x, rng, 1, 9, [](const TDivisor& d) {
                                            return is_ample(d);
                                          }),
                                          random_class(x, rng, -3, 9, big)};
      const Rational v = 2;
      for (const auto& d : classes) {
        for (const auto& flag : okounkov::all_flags(x)) {
          const auto body = okounkov::okounkov_body(d, flag);
          c.expect(v * ratgeom::volume(body.body) == vol(d), e.name + " n! vol(body) = vol");
          const Rational tau = okounkov::pseff_threshold(d, flag);
          std::uniform_int_distribution<long> num(0, 999);
          for (int i = 0; i < 10; ++i) {
            const Rational t = tau * make_rational(num(rng), 1000);
            c.expect(okounkov::translation_identity_check(d, flag, t), e.name + " translation identity");
          }
          ++pairs;
        }
      }
      int disagreements = 0;
      for (int i = 0; i < 50; ++i) {
        const auto d = random_class(x, rng, -6, 9, big);
        disagreements += okounkov::nef_by_origin(d) != is_nef(d);
      }
      c.expect(disagreements == 0, e.name + " nef criterion agreement");
    }
    c.expect(pairs >= 20, "at least 20 (class, flag) pairs");
  });

  run(7, "slice profiles, concavity and cone structure", 0, [](Check& c) {
    for (std::size_t n = 2; n <= 4; ++n) {
      std::vector<Vec> pts{Vec(n, Rational(0))};
      Vec v(n, Rational(0));
      v[0] = 1;
      pts.push_back(v);
      for (std::size_t k = 1; k < n; ++k) {
        v[k] = 1;
        pts.push_back(v);
      }
      const auto prof = okounkov::slice_profile(ratgeom::Polytope::from_vertices(n, pts));
      ratgeom::Polynomial model{Vec(n, Rational(0))};
      model.coeffs[n - 1] = 1 / factorial(static_cast<unsigned>(n - 1));
      c.expect(prof.area.pieces.size() == 1 && prof.area.pieces[0] == model, "A(r) = r^(n-1)/(n-1)!");
    }
    for (const auto& e : harness::load_catalog(TORIFAN_CATALOG_DIR)) {
      const auto x = validate(e.fan);
      for (const auto& flag : okounkov::all_flags(x)) {
        const auto prof = okounkov::slice_profile(okounkov::okounkov_body(anticanonical(x), flag));
        c.expect(okounkov::bm_concavity_check(prof), e.name + " Brunn-Minkowski concavity");
      }
    }
    const auto p2 = validate(harness::del_pezzo(0));
    const auto b = blowup_at_fixed_point(p2, 0);
    const auto body = okounkov::okounkov_body(pullback(TDivisor(p2, {0, 0, 1}), b), okounkov::exceptional_flag(b));
    c.expect(okounkov::cone_structure_check(body, 1), "P2 blow-up body is a cone on [0,1]");
    c.expect(okounkov::segment_membership_check(body, 1), "P2 blow-up body contains the segment");
    const auto square = ratgeom::Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    c.expect(!okounkov::cone_structure_check(square, 1), "square is not a cone");
    const auto off_axis = ratgeom::Polytope::from_vertices(2, {{0, 1}, {1, 1}, {1, 2}});
    c.expect(!okounkov::segment_membership_check(off_axis, 1), "off-axis body misses the segment");
  });

  run(8, "gap report for surfaces at resolution 16", 120.0, [](Check& c) {
    const auto surf = surfaces();
    const auto g8 = harness::gap_report(surf, 8);
    const auto g16 = harness::gap_report(surf, 16);
    c.expect(g8.size() == 1 && g16.size() == 1, "one surface row");
    if (g8.size() != 1 || g16.size() != 1) return;
    c.expect(g16[0].epsilon > 0, "epsilon_toric(2) > 0");
    c.expect(g16[0].epsilon <= 1, "epsilon_toric(2) <= 1");
    c.expect(!g16[0].variety.empty(), "achieving variety reported");
    c.expect(g16[0].epsilon <= g8[0].epsilon, "refinement does not increase epsilon");
    c.note << "epsilon_toric(2) = " << to_string(g16[0].epsilon) << " at " << g16[0].variety;
  });

  return failures == 0 ? 0 : 1;
}

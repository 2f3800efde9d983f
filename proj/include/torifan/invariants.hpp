#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torifan/piecewise.hpp"
#include "torifan/rational.hpp"
#include "torifan/toric.hpp"

namespace torifan::invariants {

using toric::TDivisor;

struct SeshadriResult {
  Rational value;
  std::size_t wall_index = 0;
  toric::Wall witness;
};

/// eps(X, xi) = sup{mu : -K_X - mu xi nef} = min over walls of
/// (-K_X . C_w) / (xi . C_w). Ties go to the smallest wall index.
/// Throws NotAmple.
SeshadriResult seshadri(const TDivisor& xi);

/// S_L(D_rho) = <barycenter(P_L), u_rho> + a_rho.
Rational expected_vanishing_order(const TDivisor& l, std::size_t ray);

/// S_L(D_rho) from its defining integral (1/Vol L) int_0^inf Vol(L - x D_rho) dx,
/// with the volume profile recovered exactly as a piecewise polynomial.
Rational expected_vanishing_order_oracle(const TDivisor& l, std::size_t ray);

struct DeltaResult {
  Rational value;
  std::size_t ray = 0;
  Rational expected_vanishing_order;  // S at the witness ray
};

/// delta restricted to torus-invariant prime divisors (log discrepancy 1):
/// min over rays of 1 / S_L(D_rho). Ties go to the smallest ray index.
/// Throws NotAmple.
DeltaResult delta_toric(const TDivisor& l);

/// min(eps, delta). Throws NotAmple.
Rational beta(const TDivisor& xi);

struct InvariantReport {
  std::string variety_name;
  std::size_t dim = 0;
  TDivisor divisor;
  Rational vol;
  Rational eps;
  std::size_t eps_wall_index = 0;
  toric::Wall eps_witness;
  Rational delta;
  std::size_t delta_witness = 0;
  Rational beta;
  Rational score;  // beta^n * vol
  Rational bound;  // (n+1)^n
  bool is_extremal = false;
};

/// Full report for an ample class. Throws AssertionFailure if the score
/// exceeds (n+1)^n, which would mean an implementation bug.
InvariantReport score(const TDivisor& xi);

/// delta^n * Vol(L) <= (n+1)^n, decided exactly.
bool delta_volume_bound_check(const TDivisor& l);

/// (n+1)^n.
Rational score_bound(std::size_t n);

/// x -> Vol(sigma^* xi - x E) for the blow-up of a torus-fixed point.
struct VolumeProfile {
  std::size_t dim = 0;
  std::size_t cone_index = 0;
  Rational base_volume;        // Vol(xi)
  ratgeom::PiecewisePolynomial volume;  // supported on [0, domain_end]
  Rational domain_end;         // pseudo-effective threshold of E

  /// Intervals on which Vol(sigma^* xi - x E) == Vol(xi) - x^n identically.
  std::vector<std::pair<Rational, Rational>> equality_intervals;
  /// Vol(sigma^* xi - x E) >= Vol(xi) - x^n verified piecewise, symbolically.
  bool fujita_inequality_holds = false;

  Rational operator()(const Rational& x) const { return volume(x); }
  /// Vol(xi) - x^n.
  Rational fujita_lower_bound(const Rational& x) const;
  Rational margin(const Rational& x) const { return (*this)(x) - fujita_lower_bound(x); }
  /// S of the exceptional divisor: integral of the profile over Vol(xi).
  Rational exceptional_vanishing_order() const;
};

/// Throws NotNef (and NotBig when the class has zero volume).
VolumeProfile fujita_profile(const TDivisor& xi, std::size_t cone_index);

/// S_xi(E) via the barycenter pairing on the blow-up; the cross-check for
/// VolumeProfile::exceptional_vanishing_order().
Rational exceptional_vanishing_order_barycentric(const TDivisor& xi, std::size_t cone_index);

/// eps_p for the torus-fixed point of the cone: sup{x : sigma^* xi - x E nef}.
/// Throws NotAmple.
Rational seshadri_at_point(const TDivisor& xi, std::size_t cone_index);

/// Log discrepancy of the exceptional divisor of a point blow-up: n.
inline Rational exceptional_log_discrepancy(std::size_t n) { return Rational(static_cast<long>(n)); }

/// Exact values along the blow-up argument
///   n = A_X(E) >= beta S(E) >= beta/Vol int_0^{Vol^{1/n}} (Vol - x^n) dx
///     = n beta Vol^{1/n} / (n + 1).
/// Every comparison is decided on rationals (powers are raised instead of
/// taking roots).
struct BlowupChain {
  Rational log_discrepancy;   // n
  Rational beta;
  Rational exceptional_s;     // S(E) from the profile integral
  Rational beta_times_s;
  bool discrepancy_bound = false;  // n >= beta * S(E)
  bool fujita_bound = false;       // S(E) >= n Vol^{1/n} / (n+1)
  bool final_bound = false;        // n >= n beta Vol^{1/n} / (n+1)
  bool discrepancy_tight = false;
  bool fujita_tight = false;
  bool final_tight = false;
};

BlowupChain blowup_chain(const TDivisor& xi, std::size_t cone_index);

/// Exact nonnegativity of a polynomial on [lo, hi] via Bernstein coefficients
/// with subdivision; nullopt when undecided at the depth limit.
std::optional<bool> nonnegative_on(const ratgeom::Polynomial& p, const Rational& lo, const Rational& hi,
                                   int max_depth = 24);

}  // namespace torifan::invariants

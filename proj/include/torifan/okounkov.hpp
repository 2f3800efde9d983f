#pragma once

#include <vector>

#include "torifan/piecewise.hpp"
#include "torifan/polytope.hpp"
#include "torifan/toric.hpp"

namespace torifan::okounkov {

using toric::TDivisor;

/// Torus-invariant admissible flag. Y_1 is the divisor of ray_order[0],
/// Y_k the intersection of the first k, Y_n the fixed point of the cone.
struct FlagSpec {
  toric::VarietyPtr variety;
  std::size_t cone_index = 0;
  std::vector<std::size_t> ray_order;
};

/// Flag at a cone with the rays in the order they are listed.
FlagSpec standard_flag(const toric::VarietyPtr& x, std::size_t cone_index);

/// Every (cone, ray order) flag of the variety.
std::vector<FlagSpec> all_flags(const toric::VarietyPtr& x);

/// Flag on the blow-up whose first member is the exceptional divisor,
/// at the sub-cone `which` of the star subdivision.
FlagSpec exceptional_flag(const toric::Blowup& b, std::size_t which = 0);

struct OkounkovBody {
  ratgeom::Polytope body;
  FlagSpec flag;
  TDivisor divisor;
};

/// Delta(xi) = { (<m,u_1> + a_1, ..., <m,u_n> + a_n) : m in P_xi } for the flag
/// rays u_1..u_n. Throws NotBig; std::invalid_argument on a malformed flag.
OkounkovBody okounkov_body(const TDivisor& xi, const FlagSpec& flag);

/// sup{t : xi - t Y_1 big}, the largest nu_1 on the body. Throws NotBig.
Rational pseff_threshold(const TDivisor& xi, const FlagSpec& flag);

/// Delta(xi) ∩ {nu_1 >= t} == Delta(xi - t Y_1) + t e_1. Throws
/// ThresholdExceeded unless 0 <= t < pseff_threshold.
bool translation_identity_check(const TDivisor& xi, const FlagSpec& flag, const Rational& t);

/// Origin membership of the body at every torus-fixed point. Throws NotBig.
bool nef_by_origin(const TDivisor& xi);

struct SliceProfile {
  std::size_t dim = 0;                  // dimension of the body
  ratgeom::PiecewisePolynomial area;    // r -> vol_{n-1}(slice at nu_1 = r)

  Rational support_begin() const { return area.domain_begin(); }
  Rational support_end() const { return area.domain_end(); }
  Rational operator()(const Rational& r) const { return area(r); }
};

SliceProfile slice_profile(const OkounkovBody& body);
SliceProfile slice_profile(const ratgeom::Polytope& body);

/// A^{1/(n-1)} concave on the support: checked on each piece at its endpoints
/// and `samples` interior points, plus continuity and decreasing slopes at the
/// breakpoints.
bool bm_concavity_check(const SliceProfile& profile, unsigned samples = 200);

/// body ∩ {0 <= nu_1 <= a} equals the cone over the slice at nu_1 = a with
/// apex at the origin.
bool cone_structure_check(const ratgeom::Polytope& body, const Rational& a);
bool cone_structure_check(const OkounkovBody& body, const Rational& a);

/// (x, 0, ..., 0) lies in the body for x in {0, a/2, a}.
bool segment_membership_check(const ratgeom::Polytope& body, const Rational& a);
bool segment_membership_check(const OkounkovBody& body, const Rational& a);

}  // namespace torifan::okounkov

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "torifan/polytope.hpp"
#include "torifan/rational.hpp"

namespace torifan::toric {

using IntVec = std::vector<std::int64_t>;
using Cone = std::vector<std::size_t>;

/// Combinatorial fan: primitive rays and maximal cones as ray-index sets.
struct Fan {
  std::size_t dim = 0;
  std::vector<IntVec> rays;
  std::vector<Cone> max_cones;
  std::string name;
};

/// Codimension-one cone shared by two maximal cones, with the integer relation
///   u[ray_a] + u[ray_b] + sum_i relation[i] * u[ray_indices[i]] = 0
/// where ray_a / ray_b are the rays of cone_a / cone_b off the wall.
struct Wall {
  Cone ray_indices;
  std::size_t cone_a = 0;
  std::size_t cone_b = 0;
  std::size_t ray_a = 0;
  std::size_t ray_b = 0;
  IntVec relation;
};

/// A validated smooth complete toric variety. Only obtainable through
/// validate(), so holding one is the smoothness/completeness certificate.
class ToricVariety {
 public:
  const Fan& fan() const noexcept { return fan_; }
  std::size_t dim() const noexcept { return fan_.dim; }
  std::size_t num_rays() const noexcept { return fan_.rays.size(); }
  const std::vector<Cone>& cones() const noexcept { return fan_.max_cones; }
  const std::string& name() const noexcept { return fan_.name; }
  const std::vector<Wall>& walls() const noexcept { return walls_; }

  /// Ray generator as a rational vector.
  const Vec& ray(std::size_t i) const { return rational_rays_.at(i); }

 private:
  friend std::shared_ptr<const ToricVariety> validate(Fan fan);
  ToricVariety(Fan fan, std::vector<Wall> walls);

  Fan fan_;
  std::vector<Wall> walls_;
  std::vector<Vec> rational_rays_;
};

using VarietyPtr = std::shared_ptr<const ToricVariety>;

/// Checks primitivity, simpliciality, smoothness (unimodular cones) and
/// completeness (every wall shared by exactly two cones on opposite sides, and
/// a connected cone adjacency graph). Throws ValidationError.
VarietyPtr validate(Fan fan);

/// Torus-invariant R-divisor sum_rho a_rho D_rho (rational coefficients).
class TDivisor {
 public:
  TDivisor(VarietyPtr variety, Vec coeffs);

  const VarietyPtr& variety() const noexcept { return variety_; }
  const Vec& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  std::size_t dim() const { return variety_->dim(); }

  TDivisor operator+(const TDivisor& o) const;
  TDivisor operator-(const TDivisor& o) const;
  friend TDivisor operator*(const Rational& s, const TDivisor& d);

  bool operator==(const TDivisor& o) const {
    return variety_ == o.variety_ && coeffs_ == o.coeffs_;
  }

 private:
  VarietyPtr variety_;
  Vec coeffs_;
};

TDivisor anticanonical(const VarietyPtr& x);

/// Divisor with a single nonzero coefficient 1 on ray i.
TDivisor prime_divisor(const VarietyPtr& x, std::size_t ray);

/// P_D = {m : <m, u_rho> >= -a_rho for all rho}.
ratgeom::Polytope section_polytope(const TDivisor& d);

/// Volume of the class: n! * vol(P_D).
Rational vol(const TDivisor& d);

const std::vector<Wall>& walls(const ToricVariety& x);

/// D . C_w = a_a + a_b + sum_i b_i a_i.
Rational intersect_wall(const TDivisor& d, const Wall& w);

bool is_nef(const TDivisor& d);
bool is_ample(const TDivisor& d);
bool is_big(const TDivisor& d);

/// m_sigma with <m_sigma, u_rho> = -a_rho for the rays of maximal cone sigma.
Vec local_vertex(const TDivisor& d, std::size_t cone);

/// D + div(chi^m): coefficients a_rho + <m, u_rho>. Same class.
TDivisor linearly_equivalent(const TDivisor& d, const Vec& m);

/// The representative of the class of d vanishing on the rays of `cone`.
TDivisor normalized_at_cone(const TDivisor& d, std::size_t cone = 0);

/// Smooth complete toric varieties with n + 1 rays are exactly P^n.
bool is_projective_space(const ToricVariety& x);

bool is_fano(const VarietyPtr& x);

/// Star subdivision of a maximal cone: the toric blow-up of its fixed point.
struct Blowup {
  VarietyPtr base;
  VarietyPtr variety;
  std::size_t cone_index = 0;
  std::size_t exceptional_ray = 0;
};

/// Adds u_E = sum of the cone's rays (appended as the last ray) and replaces
/// the cone, in place, by the n cones obtained by swapping one ray for u_E.
Blowup blowup_at_fixed_point(const VarietyPtr& x, std::size_t cone_index);

/// Pullback along the blow-up: original coefficients, plus
/// a_E = sum of a_rho over the blown-up cone.
TDivisor pullback(const TDivisor& d, const Blowup& b);

/// The exceptional divisor E on the blow-up.
TDivisor exceptional(const Blowup& b);

}  // namespace torifan::toric

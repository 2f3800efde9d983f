#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "torifan/linalg.hpp"
#include "torifan/rational.hpp"

namespace torifan::ratgeom {

/// The closed half-space {m : <m, normal> >= -offset}.
struct HalfSpace {
  Vec normal;
  Rational offset;

  Rational slack(const Vec& m) const { return dot(m, normal) + offset; }
  bool contains(const Vec& m) const { return slack(m) >= 0; }

  /// Rescales to a primitive integer normal (positive factor only).
  HalfSpace normalized() const;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

bool operator<(const HalfSpace& a, const HalfSpace& b);

/// Convex polyhedron in H-representation with a lazily enumerated,
/// thread-safe, write-once vertex cache. Copies share the cache.
///
/// Constraints whose normal collapses to zero (e.g. after slicing) are
/// dropped when satisfied and mark the polytope infeasible otherwise, so the
/// stored half-spaces always have nonzero normals.
class Polytope {
 public:
  Polytope(std::size_t ambient_dim, std::vector<HalfSpace> halfspaces);

  static Polytope empty(std::size_t ambient_dim);

  /// H-representation of conv(points). Lower-dimensional hulls get their
  /// affine hull as pairs of opposite half-spaces.
  static Polytope from_vertices(std::size_t ambient_dim, std::vector<Vec> points);

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const noexcept { return halfspaces_; }

  /// True when a constant constraint is violated; the feasible set is empty.
  bool trivially_infeasible() const noexcept { return infeasible_; }

  /// Sorted extreme points. Throws UnboundedPolytope.
  const std::vector<Vec>& vertices() const;

  bool is_empty() const { return vertices().empty(); }
  bool full_dimensional() const;

 private:
  struct Cache;

  std::size_t dim_;
  std::vector<HalfSpace> halfspaces_;
  bool infeasible_ = false;
  std::shared_ptr<Cache> cache_;
};

std::vector<Vec> enumerate_vertices(const Polytope& p);

/// Dimension of the affine hull of a point set; -1 for the empty set.
int affine_dimension(const std::vector<Vec>& points);

/// Pulling triangulation: every simplex of the result contains the chosen base
/// vertex (an index into p.vertices()). Simplices are vertex-index lists of
/// length affine_dim + 1.
std::vector<std::vector<std::size_t>> fan_triangulation(const Polytope& p,
                                                         std::size_t base_vertex = 0);

/// Exact n-dimensional Euclidean volume; zero for lower-dimensional sets.
Rational volume(const Polytope& p);

/// Same as volume() but summed over the triangulation from `base_vertex`.
Rational volume_from(const Polytope& p, std::size_t base_vertex);

/// Exact centroid. Throws DegeneratePolytope when the volume is zero.
Vec barycenter(const Polytope& p);

struct Moments {
  Rational volume;
  Vec barycenter;
};

/// Volume and centroid from a single triangulation. Throws DegeneratePolytope
/// when the volume is zero.
Moments moments(const Polytope& p);

/// P ∩ {x_axis = value} with the fixed coordinate dropped.
Polytope slice(const Polytope& p, std::size_t axis, const Rational& value);

/// P ∩ {lo <= x_axis <= hi}.
Polytope truncate(const Polytope& p, std::size_t axis, const Rational& lo, const Rational& hi);

/// P ∩ {x_axis >= lo}.
Polytope truncate_below(const Polytope& p, std::size_t axis, const Rational& lo);

Polytope intersect(const Polytope& p, const HalfSpace& h);

Polytope translate(const Polytope& p, const Vec& v);

/// Image under x -> A x + b for invertible A.
Polytope affine_image(const Polytope& p, const linalg::Matrix& a, const Vec& b);

bool contains(const Polytope& p, const Vec& q);

/// Set equality of the feasible regions via mutual vertex containment.
bool polytopes_equal(const Polytope& p, const Polytope& q);

/// Irredundant, normalized H-representation rebuilt from the vertices.
Polytope canonicalize(const Polytope& p);

}  // namespace torifan::ratgeom

#include "torifan/polytope.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>

#include "torifan/error.hpp"

namespace torifan::ratgeom {

namespace {

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

bool satisfies_all(const std::vector<HalfSpace>& hs, const Vec& m) {
  return std::all_of(hs.begin(), hs.end(), [&](const HalfSpace& h) { return h.contains(m); });
}

std::vector<Vec> compute_vertices(std::size_t n, const std::vector<HalfSpace>& hs, bool infeasible) {
  if (infeasible) return {};
  if (n == 0) return {Vec{}};

  linalg::Matrix normals;
  normals.reserve(hs.size());
  for (const auto& h : hs) normals.push_back(h.normal);
  const auto lineality = linalg::nullspace(normals, n);

  // Pin the lineality space through the origin so that the remaining system
  // is pointed; any feasible point then yields a vertex of the pinned system.
  linalg::Matrix rows = normals;
  Vec rhs;
  for (const auto& h : hs) rhs.push_back(-h.offset);
  for (const auto& d : lineality) {
    rows.push_back(d);
    rhs.push_back(0);
  }

  std::set<Vec> found;
  for_each_combination(rows.size(), n, [&](const std::vector<std::size_t>& pick) {
    if (n == 2) {
      // Cramer's rule; the common case for surfaces.
      const Vec& p = rows[pick[0]];
      const Vec& q = rows[pick[1]];
      const Rational det = p[0] * q[1] - p[1] * q[0];
      if (det == 0) return;
      const Rational& r = rhs[pick[0]];
      const Rational& s = rhs[pick[1]];
      Vec x{(r * q[1] - p[1] * s) / det, (p[0] * s - r * q[0]) / det};
      for (const auto& d : lineality)
        if (dot(d, x) != 0) return;
      if (found.count(x) == 0 && satisfies_all(hs, x)) found.insert(std::move(x));
      return;
    }
    linalg::Matrix a;
    Vec b;
    for (auto i : pick) {
      a.push_back(rows[i]);
      b.push_back(rhs[i]);
    }
    auto x = linalg::solve(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& d : lineality)
      if (dot(d, *x) != 0) return;
    if (satisfies_all(hs, *x)) found.insert(std::move(*x));
  });

  if (found.empty()) return {};
  if (!lineality.empty()) {
    throw UnboundedPolytope("polytope contains a line", lineality.front());
  }

  // Nonempty and pointed: bounded iff the recession cone {d : <n_i, d> >= 0}
  // is trivial. A nontrivial pointed cone has an extreme ray cut out by n-1
  // independent normals.
  std::optional<Vec> ray;
  for_each_combination(normals.size(), n - 1, [&](const std::vector<std::size_t>& pick) {
    if (ray) return;
    linalg::Matrix a;
    for (auto i : pick) a.push_back(normals[i]);
    auto null = linalg::nullspace(a, n);
    if (null.size() != 1) return;
    for (const Rational& sign : {Rational(1), Rational(-1)}) {
      Vec d = sign * null.front();
      bool ok = std::all_of(normals.begin(), normals.end(),
                            [&](const Vec& nv) { return dot(nv, d) >= 0; });
      if (ok) {
        ray = d;
        return;
      }
    }
  });
  if (ray) throw UnboundedPolytope("polytope is unbounded", *ray);

  return {found.begin(), found.end()};
}

}  // namespace

struct Polytope::Cache {
  std::once_flag once;
  std::vector<Vec> vertices;
  std::exception_ptr error;
};

HalfSpace HalfSpace::normalized() const {
  mpz_class lcm = 1;
  for (const auto& c : normal) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  mpz_class g = 0;
  for (const auto& c : normal) {
    mpz_class v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) return *this;
  const Rational scale = Rational(lcm) / Rational(g);
  HalfSpace out{scale * normal, scale * offset};
  return out;
}

bool operator<(const HalfSpace& a, const HalfSpace& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

Polytope::Polytope(std::size_t ambient_dim, std::vector<HalfSpace> halfspaces)
    : dim_(ambient_dim), cache_(std::make_shared<Cache>()) {
  halfspaces_.reserve(halfspaces.size());
  for (auto& h : halfspaces) {
    if (h.normal.size() != dim_) throw std::invalid_argument("half-space dimension mismatch");
    const bool zero = std::all_of(h.normal.begin(), h.normal.end(),
                                  [](const Rational& c) { return c == 0; });
    if (zero) {
      if (h.offset < 0) infeasible_ = true;
      continue;
    }
    halfspaces_.push_back(std::move(h));
  }
}

Polytope Polytope::empty(std::size_t ambient_dim) {
  return Polytope(ambient_dim, {HalfSpace{zero_vec(ambient_dim), Rational(-1)}});
}

Polytope Polytope::from_vertices(std::size_t ambient_dim, std::vector<Vec> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return empty(ambient_dim);
  for (const auto& p : points)
    if (p.size() != ambient_dim) throw std::invalid_argument("point dimension mismatch");

  const Vec& base = points.front();
  linalg::Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - base);
  const auto equalities = linalg::nullspace(diffs, ambient_dim);
  const int d = static_cast<int>(ambient_dim) - static_cast<int>(equalities.size());

  std::set<HalfSpace> facets;
  for (const auto& w : equalities) {
    facets.insert(HalfSpace{w, -dot(w, base)}.normalized());
    facets.insert(HalfSpace{Rational(-1) * w, dot(w, base)}.normalized());
  }
  if (d >= 1) {
    for_each_combination(points.size(), static_cast<std::size_t>(d),
                         [&](const std::vector<std::size_t>& pick) {
                           linalg::Matrix rows = equalities;
                           const Vec& s0 = points[pick[0]];
                           for (std::size_t i = 1; i < pick.size(); ++i)
                             rows.push_back(points[pick[i]] - s0);
                           auto null = linalg::nullspace(rows, ambient_dim);
                           if (null.size() != 1) return;
                           const Vec& w = null.front();
                           Rational lo = dot(w, s0), hi = lo;
                           for (const auto& p : points) {
                             const Rational v = dot(w, p);
                             if (v < lo) lo = v;
                             if (v > hi) hi = v;
                           }
                           const Rational at = dot(w, s0);
                           if (at == lo) facets.insert(HalfSpace{w, -lo}.normalized());
                           if (at == hi) facets.insert(HalfSpace{Rational(-1) * w, hi}.normalized());
                         });
  }
  return Polytope(ambient_dim, {facets.begin(), facets.end()});
}

const std::vector<Vec>& Polytope::vertices() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->vertices = compute_vertices(dim_, halfspaces_, infeasible_);
    } catch (...) {
      cache_->error = std::current_exception();
    }
  });
  if (cache_->error) std::rethrow_exception(cache_->error);
  return cache_->vertices;
}

bool Polytope::full_dimensional() const {
  return affine_dimension(vertices()) == static_cast<int>(dim_);
}

std::vector<Vec> enumerate_vertices(const Polytope& p) { return p.vertices(); }

int affine_dimension(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  linalg::Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(linalg::rank(std::move(diffs)));
}

namespace {

struct FaceLattice {
  const std::vector<Vec>& verts;
  // tight[h][v]: vertex v lies on the boundary hyperplane of half-space h.
  std::vector<std::vector<bool>> tight;

  FaceLattice(const Polytope& p) : verts(p.vertices()) {
    for (const auto& h : p.halfspaces()) {
      std::vector<bool> row(verts.size());
      for (std::size_t v = 0; v < verts.size(); ++v) row[v] = h.slack(verts[v]) == 0;
      tight.push_back(std::move(row));
    }
  }

  int dim_of(const std::vector<std::size_t>& ids) const {
    std::vector<Vec> pts;
    for (auto i : ids) pts.push_back(verts[i]);
    return affine_dimension(pts);
  }

  // Facets of the face `ids` (of dimension d), each as a sorted id list.
  std::vector<std::vector<std::size_t>> facets(const std::vector<std::size_t>& ids, int d) const {
    std::set<std::vector<std::size_t>> out;
    for (const auto& row : tight) {
      std::vector<std::size_t> sub;
      for (auto i : ids)
        if (row[i]) sub.push_back(i);
      if (sub.size() == ids.size() || sub.size() < static_cast<std::size_t>(d)) continue;
      // Distinct vertices: one is a point, two span a segment.
      if (d <= 2 && sub.size() == static_cast<std::size_t>(d)) {
        out.insert(std::move(sub));
        continue;
      }
      if (dim_of(sub) == d - 1) out.insert(std::move(sub));
    }
    return {out.begin(), out.end()};
  }

  void triangulate(const std::vector<std::size_t>& ids, int d, std::size_t apex,
                   std::vector<std::vector<std::size_t>>& out) const {
    if (d == 0) {
      out.push_back({ids.front()});
      return;
    }
    for (const auto& f : facets(ids, d)) {
      if (std::binary_search(f.begin(), f.end(), apex)) continue;
      std::vector<std::vector<std::size_t>> sub;
      triangulate(f, d - 1, f.front(), sub);
      for (auto& s : sub) {
        s.insert(s.begin(), apex);
        out.push_back(std::move(s));
      }
    }
  }
};

Rational simplex_volume(const std::vector<Vec>& verts, const std::vector<std::size_t>& s,
                        std::size_t n) {
  linalg::Matrix m;
  for (std::size_t i = 1; i < s.size(); ++i) m.push_back(verts[s[i]] - verts[s[0]]);
  Rational det = linalg::determinant(std::move(m));
  if (det < 0) det = -det;
  return det / factorial(static_cast<unsigned>(n));
}

}  // namespace

std::vector<std::vector<std::size_t>> fan_triangulation(const Polytope& p, std::size_t base_vertex) {
  const auto& verts = p.vertices();
  if (verts.empty()) return {};
  if (base_vertex >= verts.size()) throw std::out_of_range("fan_triangulation: base vertex");
  FaceLattice lattice(p);
  std::vector<std::size_t> all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const int d = affine_dimension(verts);
  std::vector<std::vector<std::size_t>> out;
  lattice.triangulate(all, d, base_vertex, out);
  return out;
}

Rational volume_from(const Polytope& p, std::size_t base_vertex) {
  const std::size_t n = p.ambient_dim();
  if (n == 0) return p.is_empty() ? Rational(0) : Rational(1);
  if (!p.full_dimensional()) return 0;
  const auto& verts = p.vertices();
  Rational total = 0;
  for (const auto& s : fan_triangulation(p, base_vertex)) total += simplex_volume(verts, s, n);
  return total;
}

Rational volume(const Polytope& p) { return volume_from(p, 0); }

Moments moments(const Polytope& p) {
  const std::size_t n = p.ambient_dim();
  if (n == 0 || !p.full_dimensional()) throw DegeneratePolytope("barycenter of a degenerate polytope");
  const auto& verts = p.vertices();
  Rational total = 0;
  Vec acc = zero_vec(n);
  for (const auto& s : fan_triangulation(p, 0)) {
    const Rational w = simplex_volume(verts, s, n);
    Vec c = zero_vec(n);
    for (auto i : s) c = c + verts[i];
    acc = acc + (w / Rational(static_cast<long>(s.size()))) * c;
    total += w;
  }
  return {total, (1 / total) * acc};
}

Vec barycenter(const Polytope& p) { return moments(p).barycenter; }

Polytope slice(const Polytope& p, std::size_t axis, const Rational& value) {
  const std::size_t n = p.ambient_dim();
  if (axis >= n) throw std::out_of_range("slice: axis");
  std::vector<HalfSpace> hs;
  if (p.trivially_infeasible()) return Polytope::empty(n - 1);
  for (const auto& h : p.halfspaces()) {
    Vec normal;
    for (std::size_t i = 0; i < n; ++i)
      if (i != axis) normal.push_back(h.normal[i]);
    hs.push_back(HalfSpace{std::move(normal), h.offset + h.normal[axis] * value});
  }
  return Polytope(n - 1, std::move(hs));
}

Polytope truncate_below(const Polytope& p, std::size_t axis, const Rational& lo) {
  if (axis >= p.ambient_dim()) throw std::out_of_range("truncate: axis");
  Vec e = zero_vec(p.ambient_dim());
  e[axis] = 1;
  return intersect(p, HalfSpace{e, -lo});
}

Polytope truncate(const Polytope& p, std::size_t axis, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("truncate: lo > hi");
  Vec e = zero_vec(p.ambient_dim());
  e[axis] = -1;
  return intersect(truncate_below(p, axis, lo), HalfSpace{e, hi});
}

Polytope intersect(const Polytope& p, const HalfSpace& h) {
  if (p.trivially_infeasible()) return Polytope::empty(p.ambient_dim());
  auto hs = p.halfspaces();
  hs.push_back(h);
  return Polytope(p.ambient_dim(), std::move(hs));
}

Polytope translate(const Polytope& p, const Vec& v) {
  if (v.size() != p.ambient_dim()) throw std::invalid_argument("translate: dimension mismatch");
  if (p.trivially_infeasible()) return Polytope::empty(p.ambient_dim());
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces()) hs.push_back(HalfSpace{h.normal, h.offset - dot(v, h.normal)});
  return Polytope(p.ambient_dim(), std::move(hs));
}

Polytope affine_image(const Polytope& p, const linalg::Matrix& a, const Vec& b) {
  auto inv = linalg::inverse(a);
  if (!inv) throw std::invalid_argument("affine_image: singular map");
  if (p.trivially_infeasible()) return Polytope::empty(p.ambient_dim());
  const auto inv_t = linalg::transpose(*inv);
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces()) {
    Vec normal = linalg::multiply(inv_t, h.normal);
    const Rational offset = h.offset - dot(b, normal);
    hs.push_back(HalfSpace{std::move(normal), offset});
  }
  return Polytope(p.ambient_dim(), std::move(hs));
}

bool contains(const Polytope& p, const Vec& q) {
  if (q.size() != p.ambient_dim()) throw std::invalid_argument("contains: dimension mismatch");
  return !p.trivially_infeasible() && satisfies_all(p.halfspaces(), q);
}

bool polytopes_equal(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw std::invalid_argument("polytopes_equal: dimension mismatch");
  const auto& vp = p.vertices();
  const auto& vq = q.vertices();
  if (vp.empty() || vq.empty()) return vp.empty() && vq.empty();
  auto inside = [](const std::vector<Vec>& pts, const Polytope& body) {
    return std::all_of(pts.begin(), pts.end(), [&](const Vec& v) { return contains(body, v); });
  };
  return inside(vp, q) && inside(vq, p);
}

Polytope canonicalize(const Polytope& p) {
  return Polytope::from_vertices(p.ambient_dim(), p.vertices());
}

}  // namespace torifan::ratgeom

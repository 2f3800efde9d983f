#include "torifan/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "torifan/error.hpp"
#include "torifan/linalg.hpp"

namespace torifan::toric {

namespace {

std::string describe(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string describe(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

linalg::Matrix cone_matrix(const std::vector<Vec>& rays, const Cone& cone) {
  linalg::Matrix m;
  for (auto r : cone) m.push_back(rays[r]);
  return m;
}

std::int64_t to_int(const Rational& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    throw ValidationError("NotSmooth", "non-integral wall relation coefficient " + to_string(q));
  }
  return q.get_num().get_si();
}

void check_rays(const Fan& fan) {
  if (fan.dim == 0) throw ValidationError("Malformed", "fan dimension must be positive");
  if (fan.rays.empty()) throw ValidationError("Malformed", "fan has no rays");
  std::set<IntVec> seen;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& r = fan.rays[i];
    if (r.size() != fan.dim) {
      throw ValidationError("Malformed", "ray " + std::to_string(i) + " has wrong length");
    }
    std::int64_t g = 0;
    for (auto c : r) g = std::gcd(g, c);
    if (g != 1) {
      throw ValidationError("NotPrimitive", "ray " + std::to_string(i) + " " + describe(r));
    }
    if (!seen.insert(r).second) {
      throw ValidationError("DuplicateRay", "ray " + std::to_string(i) + " " + describe(r));
    }
  }
}

}  // namespace

ToricVariety::ToricVariety(Fan fan, std::vector<Wall> walls)
    : fan_(std::move(fan)), walls_(std::move(walls)) {
  for (const auto& r : fan_.rays) rational_rays_.push_back(to_vec(r));
}

VarietyPtr validate(Fan fan) {
  check_rays(fan);
  const std::size_t n = fan.dim;
  std::vector<Vec> rays;
  for (const auto& r : fan.rays) rays.push_back(to_vec(r));

  if (fan.max_cones.empty()) throw ValidationError("NotComplete", "fan has no maximal cones");
  std::set<Cone> distinct;
  for (auto& cone : fan.max_cones) {
    Cone sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    const bool bad_index = std::any_of(sorted.begin(), sorted.end(),
                                       [&](std::size_t r) { return r >= rays.size(); });
    if (bad_index) throw ValidationError("Malformed", "cone " + describe(cone) + " has a bad ray index");
    if (sorted.size() != n || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ValidationError("NotSimplicial", "cone " + describe(cone) + " does not have " +
                                                 std::to_string(n) + " distinct rays");
    }
    const Rational det = linalg::determinant(cone_matrix(rays, sorted));
    if (det == 0) throw ValidationError("NotSimplicial", "cone " + describe(cone) + " is not full-dimensional");
    if (det != 1 && det != -1) {
      throw ValidationError("NotSmooth", "cone " + describe(cone) + " has determinant " + to_string(det));
    }
    if (!distinct.insert(sorted).second) {
      throw ValidationError("Malformed", "cone " + describe(cone) + " listed twice");
    }
  }

  // Wall -> cones containing it.
  std::map<Cone, std::vector<std::size_t>> incidence;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    Cone sorted = fan.max_cones[c];
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t drop = 0; drop < n; ++drop) {
      Cone face;
      for (std::size_t j = 0; j < n; ++j)
        if (j != drop) face.push_back(sorted[j]);
      incidence[face].push_back(c);
    }
  }

  std::vector<Wall> walls;
  std::vector<std::vector<std::size_t>> adjacent(fan.max_cones.size());
  for (const auto& [face, owners] : incidence) {
    if (owners.size() != 2) {
      throw ValidationError("NotComplete", "wall " + describe(face) + " lies in " +
                                               std::to_string(owners.size()) + " maximal cone(s)");
    }
    Wall w;
    w.ray_indices = face;
    w.cone_a = owners[0];
    w.cone_b = owners[1];
    auto off_wall = [&](std::size_t c) {
      for (auto r : fan.max_cones[c])
        if (!std::binary_search(face.begin(), face.end(), r)) return r;
      throw std::logic_error("wall equals cone");
    };
    w.ray_a = off_wall(w.cone_a);
    w.ray_b = off_wall(w.cone_b);

    // u_b = c_a u_a + sum c_i u_i in the basis of cone_a.
    Cone basis = face;
    basis.push_back(w.ray_a);
    auto coords = linalg::solve(linalg::transpose(cone_matrix(rays, basis)), rays[w.ray_b]);
    if (!coords) throw std::logic_error("unimodular cone is singular");
    if ((*coords)[n - 1] >= 0) {
      throw ValidationError("Malformed", "cones " + describe(fan.max_cones[w.cone_a]) + " and " +
                                             describe(fan.max_cones[w.cone_b]) +
                                             " lie on the same side of their wall");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) w.relation.push_back(-to_int((*coords)[i]));
    adjacent[w.cone_a].push_back(w.cone_b);
    adjacent[w.cone_b].push_back(w.cone_a);
    walls.push_back(std::move(w));
  }

  std::vector<bool> reached(fan.max_cones.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  reached[0] = true;
  while (!frontier.empty()) {
    const auto c = frontier.front();
    frontier.pop();
    for (auto d : adjacent[c])
      if (!reached[d]) {
        reached[d] = true;
        frontier.push(d);
      }
  }
  for (std::size_t c = 0; c < reached.size(); ++c)
    if (!reached[c]) {
      throw ValidationError("NotComplete", "cone " + describe(fan.max_cones[c]) +
                                               " is disconnected from cone 0");
    }

  return VarietyPtr(new ToricVariety(std::move(fan), std::move(walls)));
}

TDivisor::TDivisor(VarietyPtr variety, Vec coeffs) : variety_(std::move(variety)), coeffs_(std::move(coeffs)) {
  if (!variety_) throw std::invalid_argument("TDivisor: null variety");
  if (coeffs_.size() != variety_->num_rays()) {
    throw std::invalid_argument("TDivisor: expected " + std::to_string(variety_->num_rays()) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

TDivisor TDivisor::operator+(const TDivisor& o) const {
  if (variety_ != o.variety_) throw std::invalid_argument("TDivisor: different varieties");
  return TDivisor(variety_, coeffs_ + o.coeffs_);
}

TDivisor TDivisor::operator-(const TDivisor& o) const {
  if (variety_ != o.variety_) throw std::invalid_argument("TDivisor: different varieties");
  return TDivisor(variety_, coeffs_ - o.coeffs_);
}

TDivisor operator*(const Rational& s, const TDivisor& d) { return TDivisor(d.variety_, torifan::operator*(s, d.coeffs_)); }

TDivisor anticanonical(const VarietyPtr& x) { return TDivisor(x, Vec(x->num_rays(), Rational(1))); }

TDivisor prime_divisor(const VarietyPtr& x, std::size_t ray) {
  Vec c(x->num_rays(), Rational(0));
  c.at(ray) = 1;
  return TDivisor(x, std::move(c));
}

ratgeom::Polytope section_polytope(const TDivisor& d) {
  const auto& x = *d.variety();
  std::vector<ratgeom::HalfSpace> hs;
  hs.reserve(x.num_rays());
  for (std::size_t i = 0; i < x.num_rays(); ++i) hs.push_back({x.ray(i), d[i]});
  return ratgeom::Polytope(x.dim(), std::move(hs));
}

Rational vol(const TDivisor& d) {
  return factorial(static_cast<unsigned>(d.dim())) * ratgeom::volume(section_polytope(d));
}

const std::vector<Wall>& walls(const ToricVariety& x) { return x.walls(); }

Rational intersect_wall(const TDivisor& d, const Wall& w) {
  Rational s = d[w.ray_a] + d[w.ray_b];
  for (std::size_t i = 0; i < w.ray_indices.size(); ++i)
    s += Rational(static_cast<long>(w.relation[i])) * d[w.ray_indices[i]];
  return s;
}

bool is_nef(const TDivisor& d) {
  const auto& ws = d.variety()->walls();
  return std::all_of(ws.begin(), ws.end(), [&](const Wall& w) { return intersect_wall(d, w) >= 0; });
}

bool is_ample(const TDivisor& d) {
  const auto& ws = d.variety()->walls();
  return std::all_of(ws.begin(), ws.end(), [&](const Wall& w) { return intersect_wall(d, w) > 0; });
}

bool is_big(const TDivisor& d) { return section_polytope(d).full_dimensional(); }

Vec local_vertex(const TDivisor& d, std::size_t cone) {
  const auto& x = *d.variety();
  linalg::Matrix a;
  Vec b;
  for (auto r : x.cones().at(cone)) {
    a.push_back(x.ray(r));
    b.push_back(-d[r]);
  }
  auto m = linalg::solve(std::move(a), std::move(b));
  if (!m) throw std::logic_error("local_vertex: singular cone");
  return *m;
}

TDivisor linearly_equivalent(const TDivisor& d, const Vec& m) {
  const auto& x = *d.variety();
  Vec c = d.coeffs();
  for (std::size_t i = 0; i < x.num_rays(); ++i) c[i] += dot(m, x.ray(i));
  return TDivisor(d.variety(), std::move(c));
}

TDivisor normalized_at_cone(const TDivisor& d, std::size_t cone) {
  return linearly_equivalent(d, local_vertex(d, cone));
}

bool is_projective_space(const ToricVariety& x) { return x.num_rays() == x.dim() + 1; }

bool is_fano(const VarietyPtr& x) { return is_ample(anticanonical(x)); }

Blowup blowup_at_fixed_point(const VarietyPtr& x, std::size_t cone_index) {
  const auto& fan = x->fan();
  if (cone_index >= fan.max_cones.size()) throw std::out_of_range("blowup: cone index");
  const Cone& target = fan.max_cones[cone_index];

  Fan out;
  out.dim = fan.dim;
  out.rays = fan.rays;
  out.name = fan.name + "_bl" + std::to_string(cone_index);
  IntVec ue(fan.dim, 0);
  for (auto r : target)
    for (std::size_t k = 0; k < fan.dim; ++k) ue[k] += fan.rays[r][k];
  const std::size_t e = out.rays.size();
  out.rays.push_back(ue);

  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    if (c != cone_index) {
      out.max_cones.push_back(fan.max_cones[c]);
      continue;
    }
    for (std::size_t j = 0; j < target.size(); ++j) {
      Cone sub = target;
      sub[j] = e;
      out.max_cones.push_back(std::move(sub));
    }
  }
  return Blowup{x, validate(std::move(out)), cone_index, e};
}

TDivisor pullback(const TDivisor& d, const Blowup& b) {
  if (d.variety() != b.base) throw std::invalid_argument("pullback: divisor not on the blown-up base");
  Vec c = d.coeffs();
  Rational ae = 0;
  for (auto r : b.base->cones()[b.cone_index]) ae += d[r];
  c.push_back(ae);
  return TDivisor(b.variety, std::move(c));
}

TDivisor exceptional(const Blowup& b) { return prime_divisor(b.variety, b.exceptional_ray); }

}  // namespace torifan::toric

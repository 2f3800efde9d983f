#include "torifan/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace torifan::ratgeom {

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  Polynomial d;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    d.coeffs.push_back(coeffs[i] * Rational(static_cast<long>(i)));
  return d;
}

Polynomial Polynomial::antiderivative() const {
  Polynomial a;
  a.coeffs.push_back(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    a.coeffs.push_back(coeffs[i] / Rational(static_cast<long>(i + 1)));
  return a;
}

int Polynomial::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

Polynomial Polynomial::interpolate(const Vec& xs, const Vec& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad samples");
  const std::size_t k = xs.size();
  Polynomial out{Vec(k, Rational(0))};
  for (std::size_t i = 0; i < k; ++i) {
    // Basis polynomial prod_{j != i} (x - xj) / (xi - xj), built incrementally.
    Vec basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      Vec next(basis.size() + 1, Rational(0));
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    const Rational f = ys[i] / denom;
    for (std::size_t t = 0; t < basis.size(); ++t) out.coeffs[t] += f * basis[t];
  }
  const int deg = out.degree();
  out.coeffs.resize(static_cast<std::size_t>(deg + 1));
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial out{Vec(std::max(coeffs.size(), o.coeffs.size()), Rational(0))};
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += coeffs[i];
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) out.coeffs[i] -= o.coeffs[i];
  return out;
}

Polynomial Polynomial::operator*(const Rational& s) const { return Polynomial{s * coeffs}; }

bool Polynomial::operator==(const Polynomial& o) const { return (*this - o).degree() < 0; }

int PiecewisePolynomial::piece_at(const Rational& x) const {
  if (pieces.empty() || x < breakpoints.front() || x > breakpoints.back()) return -1;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  int idx = static_cast<int>(it - breakpoints.begin()) - 1;
  return std::min(idx, static_cast<int>(pieces.size()) - 1);
}

Rational PiecewisePolynomial::operator()(const Rational& x) const {
  const int i = piece_at(x);
  return i < 0 ? Rational(0) : pieces[static_cast<std::size_t>(i)](x);
}

Rational PiecewisePolynomial::integral() const {
  Rational total = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto anti = pieces[i].antiderivative();
    total += anti(breakpoints[i + 1]) - anti(breakpoints[i]);
  }
  return total;
}

Rational PiecewisePolynomial::integral_up_to(const Rational& x) const {
  Rational total = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Rational lo = breakpoints[i];
    const Rational hi = std::min(breakpoints[i + 1], x);
    if (hi <= lo) break;
    const auto anti = pieces[i].antiderivative();
    total += anti(hi) - anti(lo);
  }
  return total;
}

PiecewisePolynomial PiecewisePolynomial::scaled(const Rational& s) const {
  PiecewisePolynomial out{breakpoints, {}};
  for (const auto& p : pieces) out.pieces.push_back(p * s);
  return out;
}

PiecewisePolynomial interpolate_pieces(Vec breakpoints, unsigned degree,
                                       const std::function<Rational(const Rational&)>& fn) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  PiecewisePolynomial out;
  if (breakpoints.size() < 2) return out;
  out.breakpoints = breakpoints;
  const Rational steps = static_cast<long>(degree + 2);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const Rational lo = breakpoints[i];
    const Rational width = breakpoints[i + 1] - lo;
    Vec xs, ys;
    for (unsigned j = 1; j <= degree + 1; ++j) {
      const Rational x = lo + width * Rational(static_cast<long>(j)) / steps;
      xs.push_back(x);
      ys.push_back(fn(x));
    }
    out.pieces.push_back(Polynomial::interpolate(xs, ys));
  }
  return out;
}

PiecewisePolynomial slice_area_profile(const Polytope& p, std::size_t axis) {
  const auto& verts = p.vertices();
  Vec breaks;
  for (const auto& v : verts) breaks.push_back(v[axis]);
  const unsigned degree = static_cast<unsigned>(p.ambient_dim() - 1);
  return interpolate_pieces(std::move(breaks), degree,
                            [&](const Rational& r) { return volume(slice(p, axis, r)); });
}

PiecewisePolynomial cut_volume_profile(const Polytope& p, const Vec& direction,
                                       const Rational& base) {
  const auto& verts = p.vertices();
  if (verts.empty()) return {};
  Vec breaks{Rational(0)};
  Rational tau = dot(verts.front(), direction) - base;
  for (const auto& v : verts) {
    const Rational x = dot(v, direction) - base;
    tau = std::max(tau, x);
    if (x > 0) breaks.push_back(x);
  }
  if (tau <= 0) return {};
  const unsigned degree = static_cast<unsigned>(p.ambient_dim());
  return interpolate_pieces(std::move(breaks), degree, [&](const Rational& x) {
    return volume(intersect(p, HalfSpace{direction, -(base + x)}));
  });
}

}  // namespace torifan::ratgeom

#pragma once

#include <functional>
#include <vector>

#include "torifan/polytope.hpp"
#include "torifan/rational.hpp"

namespace torifan::ratgeom {

/// Dense univariate polynomial, coefficients in ascending degree.
struct Polynomial {
  Vec coeffs;

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  int degree() const;  // -1 for the zero polynomial

  /// Lagrange interpolation through (xs[i], ys[i]); xs must be distinct.
  static Polynomial interpolate(const Vec& xs, const Vec& ys);

  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const;
};

/// Piecewise polynomial on [breakpoints.front(), breakpoints.back()], zero
/// outside. Piece i lives on [breakpoints[i], breakpoints[i+1]].
struct PiecewisePolynomial {
  Vec breakpoints;
  std::vector<Polynomial> pieces;

  bool empty() const { return pieces.empty(); }
  Rational domain_begin() const { return breakpoints.front(); }
  Rational domain_end() const { return breakpoints.back(); }

  /// Value at x. Interior breakpoints use the right-hand piece, the final
  /// breakpoint the last piece.
  Rational operator()(const Rational& x) const;

  /// Piece index containing x, or -1 outside the domain.
  int piece_at(const Rational& x) const;

  Rational integral() const;
  /// Integral over [0, x] ∩ domain.
  Rational integral_up_to(const Rational& x) const;

  PiecewisePolynomial scaled(const Rational& s) const;
};

/// Recovers a piecewise polynomial of known maximal degree from exact samples:
/// on each interval the function is interpolated through degree + 1 interior
/// points. Exact whenever fn really is polynomial of that degree per piece.
PiecewisePolynomial interpolate_pieces(Vec breakpoints, unsigned degree,
                                       const std::function<Rational(const Rational&)>& fn);

/// r -> vol_{n-1}(P ∩ {x_axis = r}) over the axis range of P.
PiecewisePolynomial slice_area_profile(const Polytope& p, std::size_t axis);

/// x -> vol_n(P ∩ {<m, direction> >= base + x}) for x in [0, tau], where tau is
/// the largest x with a nonempty cut. Empty when the cut is already empty at 0.
PiecewisePolynomial cut_volume_profile(const Polytope& p, const Vec& direction,
                                       const Rational& base);

}  // namespace torifan::ratgeom

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace torifan {

/// Arbitrary-precision rational, always kept in canonical reduced form.
using Rational = mpq_class;

/// A point or vector with rational coordinates.
using Vec = std::vector<Rational>;

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline Rational make_rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed input or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers keep the "/1" suffix so that output is
/// uniform and round-trips bit-exactly.
std::string to_string(const Rational& q);

/// Decimal rendering with 12 significant digits, for display only.
std::string to_decimal(const Rational& q);

double to_double(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

Rational factorial(unsigned n);

Rational dot(const Vec& a, const Vec& b);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& v);

Vec to_vec(const std::vector<std::int64_t>& ints);

std::string to_string(const Vec& v);

}  // namespace torifan

#pragma once

#include <optional>
#include <vector>

#include "torifan/rational.hpp"

namespace torifan::linalg {

/// Row-major dense matrix of exact rationals.
using Matrix = std::vector<Vec>;

/// Unique solution of A x = b for square A, or nullopt when A is singular.
std::optional<Vec> solve(Matrix a, Vec b);

Rational determinant(Matrix a);

std::size_t rank(Matrix rows);

/// Basis of {x : row . x = 0 for every row}, with `cols` unknowns.
std::vector<Vec> nullspace(Matrix rows, std::size_t cols);

Matrix transpose(const Matrix& a);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);

Vec multiply(const Matrix& a, const Vec& x);

}  // namespace torifan::linalg

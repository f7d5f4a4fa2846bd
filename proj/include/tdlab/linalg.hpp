#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tdlab/matrix.hpp"

namespace tdlab {

struct RowEchelon {
  std::size_t rank = 0;
  Matrix echelon;                   // reduced row-echelon form, same shape as the input
  std::vector<std::size_t> pivots;  // pivot column of each of the first `rank` rows
};

/// Gauss-Jordan elimination over the rationals.
RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of {x : m x = 0}, one column per free variable
/// (free variable set to 1, the others to 0).
Matrix kernel(const Matrix& m);

/// Exact inverse; nullopt when singular.
std::optional<Matrix> try_inverse(const Matrix& m);
/// Throws ConsistencyError when singular.
Matrix inverse(const Matrix& m);

/// Solution set {particular + directions * t} of coeffs * x = rhs.
struct AffineSolution {
  Matrix particular;  // n x 1
  Matrix directions;  // n x k, a kernel basis
  [[nodiscard]] std::size_t dimension() const { return directions.cols(); }
};

/// nullopt when the system is inconsistent.
std::optional<AffineSolution> solve_affine(const Matrix& coeffs, const Matrix& rhs);

/// prod_k (a - roots[k] I); the empty product is I.
Matrix eval_factored_poly(const Matrix& a, std::span<const Rational> roots);

}  // namespace tdlab

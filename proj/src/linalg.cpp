#include "tdlab/linalg.hpp"

#include "tdlab/errors.hpp"

namespace tdlab {

RowEchelon rref(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  RowEchelon out;
  std::size_t pivot_row = 0;
  mpq_class factor;
  mpq_class term;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && m(r, c).is_zero()) ++r;
    if (r == rows) continue;
    if (r != pivot_row) {
      for (std::size_t k = c; k < cols; ++k) std::swap(m(r, k).raw(), m(pivot_row, k).raw());
    }
    const Rational inv = m(pivot_row, c).inverse();
    for (std::size_t k = c; k < cols; ++k) m(pivot_row, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pivot_row || m(i, c).is_zero()) continue;
      factor = m(i, c).raw();
      for (std::size_t k = c; k < cols; ++k) {
        const mpq_class& p = m(pivot_row, k).raw();
        if (sgn(p) == 0) continue;
        mpq_mul(term.get_mpq_t(), factor.get_mpq_t(), p.get_mpq_t());
        mpq_class& target = m(i, k).raw();
        mpq_sub(target.get_mpq_t(), target.get_mpq_t(), term.get_mpq_t());
      }
    }
    out.pivots.push_back(c);
    ++pivot_row;
  }
  out.rank = pivot_row;
  out.echelon = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel(const Matrix& m) {
  const RowEchelon e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix basis(n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    const std::size_t f = free[k];
    basis(f, k) = Rational(1);
    for (std::size_t r = 0; r < e.rank; ++r) basis(e.pivots[r], k) = -e.echelon(r, f);
  }
  return basis;
}

std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const RowEchelon e = rref(hcat(m, Matrix::identity(n)));
  if (e.rank < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.echelon.cols_range(n, n);
}

Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw ConsistencyError("matrix is singular");
  return *std::move(inv);
}

std::optional<AffineSolution> solve_affine(const Matrix& coeffs, const Matrix& rhs) {
  if (rhs.rows() != coeffs.rows() || rhs.cols() != 1) throw DimensionError("solve_affine rhs shape");
  const std::size_t n = coeffs.cols();
  const RowEchelon e = rref(hcat(coeffs, rhs));
  if (e.rank > 0 && e.pivots[e.rank - 1] == n) return std::nullopt;  // pivot in the rhs column
  AffineSolution sol;
  sol.particular = Matrix(n, 1);
  for (std::size_t r = 0; r < e.rank; ++r) sol.particular(e.pivots[r], 0) = e.echelon(r, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  sol.directions = Matrix(n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    sol.directions(free[k], k) = Rational(1);
    for (std::size_t r = 0; r < e.rank; ++r) sol.directions(e.pivots[r], k) = -e.echelon(r, free[k]);
  }
  return sol;
}

Matrix eval_factored_poly(const Matrix& a, std::span<const Rational> roots) {
  if (!a.is_square()) throw DimensionError("eval_factored_poly needs a square matrix");
  Matrix result = Matrix::identity(a.rows());
  for (const auto& root : roots) result = result * (a - Matrix::scalar(a.rows(), root));
  return result;
}

}  // namespace tdlab

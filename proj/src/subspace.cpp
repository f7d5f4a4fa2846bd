#include "tdlab/subspace.hpp"

#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"

namespace tdlab {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("subspaces live in different ambient spaces");
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix(ambient_dim, 0);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) { return span(Matrix::identity(ambient_dim)); }

Subspace Subspace::span(const Matrix& generators) {
  const RowEchelon e = rref(generators.transpose());
  Subspace s;
  s.ambient_dim_ = generators.rows();
  s.basis_ = Matrix(s.ambient_dim_, e.rank);
  for (std::size_t k = 0; k < e.rank; ++k)
    for (std::size_t r = 0; r < s.ambient_dim_; ++r) s.basis_(r, k) = e.echelon(k, r);
  s.pivots_ = e.pivots;
  return s;
}

bool Subspace::contains(const Matrix& vectors) const {
  if (vectors.rows() != ambient_dim_) throw DimensionError("vector length differs from ambient dimension");
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    Matrix v = vectors.col(c);
    // Each basis column has a 1 at its pivot and 0 at every other pivot.
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Rational coef = v(pivots_[k], 0);
      if (coef.is_zero()) continue;
      for (std::size_t r = 0; r < ambient_dim_; ++r) {
        if (!basis_(r, k).is_zero()) v(r, 0) -= coef * basis_(r, k);
      }
    }
    if (!v.is_zero()) return false;
  }
  return true;
}

Subspace Subspace::image(const Matrix& op) const {
  if (op.cols() != ambient_dim_) throw DimensionError("operator does not act on this ambient space");
  return span(op * basis_);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return Subspace::span(hcat(a.basis(), b.basis()));
}

Subspace subspace_sum(std::span<const Subspace> parts, std::size_t ambient_dim) {
  return Subspace::span(concat_bases(parts, ambient_dim));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient_dim());
  const Matrix stacked = hcat(a.basis(), -b.basis());
  const Matrix coords = kernel(stacked);
  if (coords.cols() == 0) return Subspace::zero(a.ambient_dim());
  Matrix alpha(a.dim(), coords.cols());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < coords.cols(); ++c) alpha(r, c) = coords(r, c);
  return Subspace::span(a.basis() * alpha);
}

Matrix concat_bases(std::span<const Subspace> parts, std::size_t ambient_dim) {
  std::vector<Matrix> bases;
  bases.reserve(parts.size());
  for (const auto& p : parts) {
    if (p.ambient_dim() != ambient_dim) throw DimensionError("subspace ambient dimension mismatch");
    bases.push_back(p.basis());
  }
  return hcat(bases, ambient_dim);
}

bool is_direct_sum(std::span<const Subspace> parts, std::size_t ambient_dim) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  if (total != ambient_dim) return false;
  return rank(concat_bases(parts, ambient_dim)) == ambient_dim;
}

bool is_independent(std::span<const Subspace> parts) {
  if (parts.empty()) return true;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  return rank(concat_bases(parts, parts.front().ambient_dim())) == total;
}

Matrix operator_from_decomposition(std::span<const Subspace> parts, std::span<const Rational> weights) {
  if (parts.size() != weights.size()) throw DimensionError("one weight per summand required");
  if (parts.empty()) throw DimensionError("empty decomposition");
  const std::size_t n = parts.front().ambient_dim();
  if (!is_direct_sum(parts, n)) throw ConsistencyError("summands do not form a decomposition");
  const Matrix basis = concat_bases(parts, n);
  std::vector<Rational> diag;
  diag.reserve(n);
  for (std::size_t i = 0; i < parts.size(); ++i) diag.insert(diag.end(), parts[i].dim(), weights[i]);
  return basis * Matrix::diagonal(diag) * inverse(basis);
}

void MatrixEquationSystem::push_row(std::vector<Rational> row, Rational rhs) {
  rows_.push_back(std::move(row));
  rhs_.push_back(std::move(rhs));
}

void MatrixEquationSystem::add_commutator(const Matrix& r, const Matrix& c) {
  if (r.rows() != n_ || !r.is_square() || c.rows() != n_ || !c.is_square())
    throw DimensionError("commutator constraint shape");
  // (X r - r X)_{ab} = sum_k X_{ak} r_{kb} - r_{ak} X_{kb}
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      std::vector<Rational> row(n_ * n_);
      for (std::size_t k = 0; k < n_; ++k) {
        row[a * n_ + k] += r(k, b);
        row[k * n_ + b] -= r(a, k);
      }
      push_row(std::move(row), c(a, b));
    }
  }
}

void MatrixEquationSystem::add_annihilates(const Matrix& vectors) {
  add_projected_annihilates(Matrix::identity(n_), vectors);
}

void MatrixEquationSystem::add_projected_annihilates(const Matrix& p, const Matrix& vectors) {
  if (p.cols() != n_ || vectors.rows() != n_) throw DimensionError("annihilation constraint shape");
  // (p X v)_a = sum_{b,c} p_{ab} X_{bc} v_c
  for (std::size_t col = 0; col < vectors.cols(); ++col) {
    for (std::size_t a = 0; a < p.rows(); ++a) {
      std::vector<Rational> row(n_ * n_);
      bool any = false;
      for (std::size_t b = 0; b < n_; ++b) {
        if (p(a, b).is_zero()) continue;
        for (std::size_t c = 0; c < n_; ++c) {
          if (vectors(c, col).is_zero()) continue;
          row[b * n_ + c] += p(a, b) * vectors(c, col);
          any = true;
        }
      }
      if (any) push_row(std::move(row), Rational(0));
    }
  }
}

std::optional<MatrixEquationSystem::Solution> MatrixEquationSystem::solve() const {
  Matrix coeffs(rows_.size(), n_ * n_);
  Matrix rhs(rows_.size(), 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t k = 0; k < n_ * n_; ++k) coeffs(i, k) = rows_[i][k];
    rhs(i, 0) = rhs_[i];
  }
  auto affine = solve_affine(coeffs, rhs);
  if (!affine) return std::nullopt;
  auto unflatten = [this](const Matrix& flat, std::size_t col) {
    Matrix x(n_, n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) x(a, b) = flat(a * n_ + b, col);
    return x;
  };
  Solution sol;
  sol.particular = unflatten(affine->particular, 0);
  for (std::size_t k = 0; k < affine->dimension(); ++k) sol.directions.push_back(unflatten(affine->directions, k));
  return sol;
}

std::optional<MatrixEquationSystem::Solution> solve_commutant_constraint(
    const Matrix& r, const Matrix& c, std::span<const Subspace> annihilated) {
  MatrixEquationSystem system(r.rows());
  system.add_commutator(r, c);
  for (const auto& s : annihilated) system.add_annihilates(s.basis());
  return system.solve();
}

}  // namespace tdlab

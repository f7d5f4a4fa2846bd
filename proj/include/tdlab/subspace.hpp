#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tdlab/matrix.hpp"

namespace tdlab {

/// A subspace of Q^n stored by a canonical basis: the nonzero rows of the
/// reduced row-echelon form of its generators, kept as columns. Two subspaces
/// are equal iff their stored bases are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// Span of the columns of `generators`.
  static Subspace span(const Matrix& generators);

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
  [[nodiscard]] std::size_t dim() const { return basis_.cols(); }
  [[nodiscard]] bool is_zero() const { return dim() == 0; }
  [[nodiscard]] const Matrix& basis() const { return basis_; }

  /// True iff every column of `vectors` lies in the subspace.
  [[nodiscard]] bool contains(const Matrix& vectors) const;
  [[nodiscard]] bool contains(const Subspace& other) const { return contains(other.basis_); }

  /// Span of op * basis.
  [[nodiscard]] Subspace image(const Matrix& op) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_dim_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_sum(std::span<const Subspace> parts, std::size_t ambient_dim);
/// Intersection via the kernel of the stacked generator system [S | -T].
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// Bases of `parts` side by side.
Matrix concat_bases(std::span<const Subspace> parts, std::size_t ambient_dim);

/// True iff dims add to `ambient_dim` and the concatenated bases have full rank.
bool is_direct_sum(std::span<const Subspace> parts, std::size_t ambient_dim);

/// True iff the sum of `parts` is direct (dims add up to the dim of the sum).
bool is_independent(std::span<const Subspace> parts);

/// Operator acting as weights[i] on parts[i]; the parts must form a decomposition.
Matrix operator_from_decomposition(std::span<const Subspace> parts, std::span<const Rational> weights);

/// Linear constraints on the n*n entries of an unknown matrix X.
class MatrixEquationSystem {
 public:
  explicit MatrixEquationSystem(std::size_t n) : n_(n) {}

  /// X r - r X = c
  void add_commutator(const Matrix& r, const Matrix& c);
  /// X v = 0 for each column v.
  void add_annihilates(const Matrix& vectors);
  /// p X v = 0 for each column v.
  void add_projected_annihilates(const Matrix& p, const Matrix& vectors);

  [[nodiscard]] std::size_t unknowns() const { return n_ * n_; }
  [[nodiscard]] std::size_t equations() const { return rhs_.size(); }

  struct Solution {
    Matrix particular;
    std::vector<Matrix> directions;
    [[nodiscard]] std::size_t dimension() const { return directions.size(); }
  };
  /// nullopt when inconsistent.
  [[nodiscard]] std::optional<Solution> solve() const;

 private:
  void push_row(std::vector<Rational> row, Rational rhs);

  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
};

/// Solution set of {X r - r X = c, X * basis(S) = 0 for S in annihilated}.
std::optional<MatrixEquationSystem::Solution> solve_commutant_constraint(
    const Matrix& r, const Matrix& c, std::span<const Subspace> annihilated);

}  // namespace tdlab

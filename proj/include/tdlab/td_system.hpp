#pragma once

#include <span>
#include <vector>

#include "tdlab/matrix.hpp"
#include "tdlab/report.hpp"
#include "tdlab/subspace.hpp"

namespace tdlab {

/// Diameter d and the nonzero scalars q, a, b of a q-Racah eigenvalue pattern.
struct QRacahParams {
  int d = 1;
  Rational q{2};
  Rational a{3};
  Rational b{5};

  /// Throws ParameterError naming the violated constraint: d >= 1; q, a, b
  /// nonzero; q^4 != 1; q^{2i} != 1 for 1 <= i <= d; a^2, b^2 not among
  /// q^{2d-2}, q^{2d-4}, ..., q^{2-2d}.
  void validate() const;

  /// q^{d-2i}
  [[nodiscard]] Rational weight(int i) const;

  friend bool operator==(const QRacahParams&, const QRacahParams&) = default;
};

struct EigenSequences {
  std::vector<Rational> theta;       // a q^{d-2i} + a^{-1} q^{2i-d}
  std::vector<Rational> theta_star;  // b q^{d-2i} + b^{-1} q^{2i-d}
};

/// Validates params first; each sequence has d+1 mutually distinct entries.
EigenSequences qracah_eigenvalues(const QRacahParams& params);

/// Primitive idempotents and eigenspaces of a diagonalizable matrix in a fixed
/// eigenvalue ordering.
struct EigenData {
  std::vector<Rational> eigenvalues;
  std::vector<Subspace> eigenspaces;
  std::vector<Matrix> idempotents;

  [[nodiscard]] std::size_t size() const { return eigenvalues.size(); }
  [[nodiscard]] EigenData reversed() const;
};

/// Eigenspaces as kernels of (m - theta_i I), idempotents by the Lagrange
/// product formula. Throws ParameterError on repeated eigenvalues and
/// ValidationError("not diagonalizable with the given spectrum") when the
/// eigenspace dimensions do not add up.
EigenData build_eigendata(const Matrix& m, std::span<const Rational> eigenvalues);

/// Axioms (i)-(iv) for the given orderings. Failures are report entries with
/// the offending index pairs.
VerificationReport verify_td_axioms(const Matrix& a, const Matrix& a_star, const EigenData& eig,
                                    const EigenData& eig_star);
/// Same, but axiom (i) is evaluated here so that a spectrum mismatch becomes a
/// failing entry instead of an exception.
VerificationReport verify_td_axioms(const Matrix& a, const Matrix& a_star, std::span<const Rational> theta,
                                    std::span<const Rational> theta_star);

/// Dimension of the span of all words in {a, a_star} (including the empty word).
std::size_t word_algebra_dimension(const Matrix& a, const Matrix& a_star);

/// (theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i) is independent of i
/// for 2 <= i <= d-1 and agrees with the dual ratio. Vacuous for d < 3.
CheckResult check_eigenvalue_ratios(std::span<const Rational> theta, std::span<const Rational> theta_star);

struct StandardOrderings {
  std::vector<Rational> theta;
  std::vector<Rational> theta_star;
};

/// Orderings given by the q-Racah formulas. Confirms the returned ordering
/// and its reversal are standard, that the pair is irreducible and, for
/// d <= 5, that no other permutation is standard. Throws ValidationError("not a TD system for these parameters").
StandardOrderings find_standard_orderings(const Matrix& a, const Matrix& a_star, const QRacahParams& params);

/// A validated tridiagonal system of q-Racah type.
struct TDSystem {
  QRacahParams params;
  Matrix a;
  Matrix a_star;
  EigenData eig;       // A, standard ordering
  EigenData eig_star;  // A*, standard ordering

  [[nodiscard]] int d() const { return params.d; }
  [[nodiscard]] std::size_t dim() const { return a.rows(); }
  [[nodiscard]] const std::vector<Rational>& theta() const { return eig.eigenvalues; }
  /// tau_{ij}(A) = (A - theta_i I) ... (A - theta_{j-1} I)
  [[nodiscard]] Matrix tau(int i, int j) const;
};

/// Same matrices, A-ordering reversed, a replaced by a^{-1}.
TDSystem second_inversion(const TDSystem& sys);

}  // namespace tdlab

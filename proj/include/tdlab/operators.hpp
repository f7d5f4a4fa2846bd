#pragma once

#include <cstddef>

#include "tdlab/report.hpp"
#include "tdlab/split.hpp"
#include "tdlab/td_system.hpp"

namespace tdlab {

struct OperatorSet {
  Matrix r;       // A - aK - a^{-1}K^{-1}
  Matrix r_dd;    // A - a^{-1}B - aB^{-1}
  Matrix psi;
  Matrix lambda;  // Casimir action, first module structure
};

Matrix build_R(const TDSystem& sys, const SplitApparatus& app);
Matrix build_Rdd(const TDSystem& sys, const SplitApparatus& app);

/// (q^{j-i} - q^{i-j}) (q^{d-i-j+1} - q^{i+j-d-1}), the scalar by which psi
/// sends tau_{ij}(A)v to tau_{i,j-1}(A)v for v in K_i.
Rational psi_coefficient(const QRacahParams& params, int i, int j);

/// psi assembled from its action on the cell bases.
Matrix build_psi_from_formula(const TDSystem& sys, const SplitApparatus& app);

/// The unique X with XR - RX = (q - q^{-1})(K - K^{-1}) and X K_i = 0.
/// Throws ConsistencyError when the solution set is empty or not a point.
Matrix build_psi_from_solver(const TDSystem& sys, const SplitApparatus& app, const Matrix& r);

/// Dimension of the affine solution set behind build_psi_from_solver
/// (-1 when inconsistent).
long psi_solution_dimension(const TDSystem& sys, const SplitApparatus& app, const Matrix& r);

/// Dimension of {X : XR = RX, X U_i in U_{i-1} for all i}; zero for a valid system.
std::size_t lowering_commutant_dimension(const TDSystem& sys, const SplitApparatus& app, const Matrix& r);

/// (q - q^{-1})^2 ef + q^{-1}k + qk^{-1}, checked against
/// (q - q^{-1})^2 fe + qk + q^{-1}k^{-1}. Throws ConsistencyError("not a
/// U_q(sl2) action") when the two differ.
Matrix casimir_action(const Matrix& e, const Matrix& f, const Matrix& k, const Matrix& k_inv, const Rational& q);

/// R, R^dd, psi from the cell formula (cross-checked against the solver) and
/// the Casimir action of the first module structure.
OperatorSet build_operators(const TDSystem& sys, const SplitApparatus& app);

/// The operator identities relating A, K, B, R, R^dd, psi and the Casimir
/// action. Only selected checks are evaluated. Operators are taken from `app`
/// and `ops` as given, so a perturbed operator shows up as failing entries.
VerificationReport run_identity_suite(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops,
                                      const Selection& selection = Selection::all());

}  // namespace tdlab

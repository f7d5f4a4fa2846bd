#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tdlab/report.hpp"
#include "tdlab/subspace.hpp"
#include "tdlab/td_system.hpp"

namespace tdlab {

enum class SplitFlavor { first, second };

/// One summand tau_{ij}(A) K_i of the refined decomposition.
struct Cell {
  Subspace space;
  /// Column c is tau_{ij}(A) applied to column c of basis(K_i).
  Matrix image;
};

/// Decompositions, highest-weight spaces, cells, and the operators K, B.
struct SplitApparatus {
  std::vector<Subspace> u;         // first split decomposition U_0..U_d
  std::vector<Subspace> udd;       // second split decomposition
  std::vector<Subspace> k_spaces;  // K_0..K_{floor(d/2)}, zero spaces kept
  std::map<std::pair<int, int>, Cell> cells;
  Matrix k, k_inv;
  Matrix b, b_inv;

  [[nodiscard]] const Cell& cell(int i, int j) const { return cells.at({i, j}); }
};

/// U_i = (E*_0V + ... + E*_iV) cap (E_iV + ... + E_dV) for the first flavor;
/// the second uses E_0V + ... + E_{d-i}V. Throws ConsistencyError when the
/// result is not a decomposition of V.
std::vector<Subspace> split_decomposition(const TDSystem& sys, SplitFlavor flavor);

/// The operator with eigenvalue q^{d-2i} on decomposition[i].
Matrix weight_operator(const TDSystem& sys, std::span<const Subspace> decomposition);
Matrix build_K(const TDSystem& sys);
Matrix build_B(const TDSystem& sys);

/// K_i = (E*_0V + ... + E*_iV) cap (E_iV + ... + E_{d-i}V), 0 <= i <= d/2.
/// Checks K_0 = U_0 and K_i = U_i cap U_i^dd against the given decompositions.
std::vector<Subspace> compute_K_spaces(const TDSystem& sys, std::span<const Subspace> u,
                                       std::span<const Subspace> udd);

/// cell(i, j) = tau_{ij}(A) K_i for 0 <= i <= d/2, i <= j <= d-i. Throws
/// ConsistencyError unless each U_j is the direct sum of its cells, V is the
/// direct sum of all cells, and tau_{ij}(A) is injective on K_i.
std::map<std::pair<int, int>, Cell> refined_decomposition(const TDSystem& sys, std::span<const Subspace> u,
                                                          std::span<const Subspace> k_spaces);

/// Full apparatus for a validated system.
SplitApparatus build_apparatus(const TDSystem& sys);

/// M K_i: sum over j of cell(i, j).
Subspace mk_space(const TDSystem& sys, const SplitApparatus& app, int i);

/// tau_{i,d-i+1}(A) kills M K_i while tau_{i,d-i}(A) does not kill K_i.
CheckResult verify_minpoly_on_MKi(const TDSystem& sys, const SplitApparatus& app, int i);

/// Structural checks on the apparatus: dimension ladder, prefix-sum identity,
/// the K/B lowering property on the other split, and the M-module decomposition.
VerificationReport verify_split_structure(const TDSystem& sys, const SplitApparatus& app);

}  // namespace tdlab

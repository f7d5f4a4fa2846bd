#pragma once

#include <span>
#include <string>
#include <vector>

#include "tdlab/operators.hpp"
#include "tdlab/report.hpp"
#include "tdlab/split.hpp"
#include "tdlab/td_system.hpp"

namespace tdlab {

/// Matrices for the Chevalley generators e, f, k^{+-1} at a fixed q.
struct UqAction {
  Matrix e;
  Matrix f;
  Matrix k;
  Matrix k_inv;
  Rational q;
};

/// Entries "uq.kkinv", "uq.kek", "uq.kfk", "uq.ef" for the defining relations
/// and "uq.f2e", "uq.e2f" for the cubic consequences involving the Casimir.
VerificationReport verify_uq_relations(const UqAction& action);

/// [n]_q = (q^n - q^{-n}) / (q - q^{-1})
Rational q_integer(const Rational& q, long n);
/// [n]_q [n-1]_q ... [1]_q
Rational q_factorial(const Rational& q, long n);

struct IrreducibleModel {
  int n = 0;
  int epsilon = 1;
  UqAction action;  // in the basis v_0..v_n
};

/// e v_i = eps [n+1-i]_q v_{i-1}, f v_i = [i+1]_q v_{i+1}, k v_i = eps q^{n-2i} v_i.
/// Throws ParameterError unless eps = +-1, q^2 != 1 and q^{2i} != 1 for 1 <= i <= n.
IrreducibleModel build_L_model(int n, int epsilon, const Rational& q);

struct WeightSpace {
  Rational weight;
  Subspace space;    // eigenspace of k
  Subspace highest;  // kernel of e inside `space`
};

/// One entry per supplied eigenvalue of k, in the given order.
std::vector<WeightSpace> weight_decomposition(const UqAction& action, std::span<const Rational> spectrum);

/// e = psi/(q - q^{-1}), f = R/(q - q^{-1}), k = K.
UqAction first_structure(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops);
/// e = psi/(q - q^{-1}), f = R^dd/(q - q^{-1}), k = B.
UqAction second_structure(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops);

/// The homogeneous component M K_i, isomorphic to dim K_i copies of L(d-2i, 1).
struct Component {
  int i = 0;
  int n = 0;
  std::size_t multiplicity = 0;
  Subspace space;
  /// For each basis vector v of K_i, the columns v_0..v_n of a copy of L(n, 1).
  std::vector<Matrix> bases;
  Rational casimir;

  [[nodiscard]] std::string label() const { return "L(" + std::to_string(n) + ",1)"; }
};

struct ModuleDecomposition {
  std::vector<WeightSpace> weights;
  std::vector<Component> components;
};

/// Builds v_j = gamma_j^{-1} tau_{i,i+j}(A) v with gamma_j = (q - q^{-1})^j [j]_q!
/// for each basis vector v of each nonzero K_i, using the eigenvalue ordering
/// that matches the structure (reversed for the second). Throws
/// ConsistencyError when the action disagrees with L(d-2i, 1) on these
/// vectors, when the Casimir is not the expected scalar on a component, or
/// when the components do not decompose V.
ModuleDecomposition decompose_into_components(const TDSystem& sys, const SplitApparatus& app,
                                              const UqAction& action, SplitFlavor flavor);

/// Relations, weight spaces, highest weight spaces and component structure
/// for both module structures, plus agreement of their component labels.
VerificationReport verify_module_structures(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops,
                                            const Selection& selection = Selection::all());

}  // namespace tdlab

#pragma once

#include "tdlab/operators.hpp"
#include "tdlab/report.hpp"
#include "tdlab/split.hpp"
#include "tdlab/td_system.hpp"

namespace tdlab {

/// Everything the library can check about a validated system, in a fixed
/// order: axioms, eigenvalue ratios, split structure, operator identities and
/// both module structures.
VerificationReport run_all_checks(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops,
                                  const Selection& selection = Selection::all());

/// Builds the apparatus and operators, then runs run_all_checks.
VerificationReport run_all_checks(const TDSystem& sys, const Selection& selection = Selection::all());

}  // namespace tdlab

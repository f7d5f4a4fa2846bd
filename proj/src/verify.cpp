#include "tdlab/verify.hpp"

#include "tdlab/uqsl2.hpp"

namespace tdlab {

namespace {

void append_selected(VerificationReport& out, const VerificationReport& in, const Selection& selection) {
  for (const auto& r : in.entries())
    if (selection.includes(r.id)) out.add(r);
}

}  // namespace

VerificationReport run_all_checks(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops,
                                  const Selection& selection) {
  VerificationReport report;
  append_selected(report, verify_td_axioms(sys.a, sys.a_star, sys.eig, sys.eig_star), selection);
  if (selection.includes("td.ratio")) report.add(check_eigenvalue_ratios(sys.theta(), sys.eig_star.eigenvalues));
  append_selected(report, verify_split_structure(sys, app), selection);
  report.append(run_identity_suite(sys, app, ops, selection));
  report.append(verify_module_structures(sys, app, ops, selection));
  return report;
}

VerificationReport run_all_checks(const TDSystem& sys, const Selection& selection) {
  const SplitApparatus app = build_apparatus(sys);
  return run_all_checks(sys, app, build_operators(sys, app), selection);
}

}  // namespace tdlab

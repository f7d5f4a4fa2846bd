// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tdlab/errors.hpp"
#include "tdlab/forge.hpp"
#include "tdlab/linalg.hpp"
#include "tdlab/operators.hpp"
#include "tdlab/serialize.hpp"
#include "tdlab/split.hpp"
#include "tdlab/uqsl2.hpp"
#include "tdlab/verify.hpp"

namespace {

using namespace tdlab;

const std::vector<std::string> kFixtures{"w1", "d2", "d3", "t121"};

std::string fixture_path(const std::string& name) { return std::string(TDLAB_DATA_DIR) + "/" + name + ".json"; }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << why << "; ";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool all_residuals_zero(const VerificationReport& report) {
  for (const auto& r : report.entries())
    if (r.residual && !r.residual->is_zero()) return false;
  return true;
}

Outcome criterion1() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const QRacahParams params{1, 2, 3, 5};
  const TDSystem sys = validate(build_split_form(SplitFormSpec{params, {1}}), params);
  const SplitApparatus app = build_apparatus(sys);
  const VerificationReport report = run_identity_suite(sys, app, build_operators(sys, app));
  const double elapsed = seconds_since(start);
  out.require(sys.a == ingest(fixture_path("w1")).a, "W1 differs from the frozen fixture");
  out.require(report.size() >= 30, "only " + std::to_string(report.size()) + " checks");
  out.require(report.all_passed(), "failing: " + std::to_string(report.failures().size()));
  out.require(all_residuals_zero(report), "nonzero residual");
  out.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  out.detail << "W1 " << report.size() << " identity checks pass in " << elapsed << " s";
  return out;
}

Outcome criterion2() {
  Outcome out;
  const std::vector<std::string> required{
      "thm.BK.1",          "thm.BK.2",          "thm.BK.3",          "thm.BK.4",          "thm.psiequations.1",
      "thm.psiequations.2", "thm.psiequations.3", "thm.psiequations.4", "thm.KBquad",        "thm.KBinvquad",
      "lem.KBfactor.1",    "lem.KBfactor.2",    "lem.KBfactor.3",    "lem.KBfactor.4",    "lem.KKBB1.1",
      "lem.KKBB1.2",       "lem.KKBB1.3",       "lem.KKBB2.1",       "lem.KKBB2.2",       "lem.KKBB2.3",
      "eq.A2psi",          "eq.psi2A"};
  for (const int d : {2, 3}) {
    const std::string name = "d" + std::to_string(d);
    const auto start = std::chrono::steady_clock::now();
    const TDSystem sys = ingest(fixture_path(name));
    const std::vector<Rational> found = search_phi(sys.params).front();
    std::vector<Rational> frozen;
    for (int i = 0; i < d; ++i) frozen.push_back(sys.a_star(i, i + 1));
    out.require(found == frozen, name + " phi differs from the search result");
    const VerificationReport report = run_all_checks(sys);
    const double elapsed = seconds_since(start);
    for (const auto& id : required) {
      const CheckResult* r = report.find(id);
      out.require(r != nullptr && r->pass, name + " " + id);
    }
    out.require(report.all_passed(), name + " has failing checks");
    out.require(all_residuals_zero(report), name + " nonzero residual");
    out.require(elapsed < 10.0, name + " took " + std::to_string(elapsed) + " s");
    out.detail << name << " " << report.size() << " checks in " << elapsed << " s; ";
  }
  return out;
}

Outcome criterion3() {
  Outcome out;
  for (const auto& name : kFixtures) {
    const TDSystem sys = ingest(fixture_path(name));
    const SplitApparatus app = build_apparatus(sys);
    const Matrix r = build_R(sys, app);
    out.require(build_psi_from_formula(sys, app) == build_psi_from_solver(sys, app, r), name + " formula != solver");
    out.require(psi_solution_dimension(sys, app, r) == 0, name + " solution set is not a point");
    out.require(lowering_commutant_dimension(sys, app, r) == 0, name + " X = 0 fails");
  }
  out.detail << "formula and solver agree with a unique solution on " << kFixtures.size() << " fixtures";
  return out;
}

Matrix casimir_of(const UqAction& act) { return casimir_action(act.e, act.f, act.k, act.k_inv, act.q); }

Outcome criterion4() {
  Outcome out;
  for (const auto& name : kFixtures) {
    const TDSystem sys = ingest(fixture_path(name));
    const SplitApparatus app = build_apparatus(sys);
    const OperatorSet ops = build_operators(sys, app);
    const Matrix first = casimir_of(first_structure(sys, app, ops));
    const Matrix second = casimir_of(second_structure(sys, app, ops));
    out.require(first == second, name + " Casimir actions differ");
    out.require(first == ops.lambda, name + " Casimir differs from psi R + q^{-1}K + qK^{-1}");
    const Rational& q = sys.params.q;
    for (std::size_t i = 0; i < app.k_spaces.size(); ++i) {
      const Subspace mk = mk_space(sys, app, static_cast<int>(i));
      const long n = sys.d() - 2 * static_cast<long>(i);
      const Rational expected = pow(q, n + 1) + pow(q, -n - 1);
      out.require(first * mk.basis() == expected * mk.basis(), name + " wrong scalar on M K_" + std::to_string(i));
    }
    if (name == "w1") out.require(first == Matrix::scalar(2, Rational(17, 4)), "W1 Casimir is not 17/4");
  }
  out.detail << "both structures give the same Casimir; scalars on each M K_i match; W1 gives 17/4";
  return out;
}

Outcome criterion5() {
  Outcome out;
  for (const auto& name : kFixtures) {
    const TDSystem sys = ingest(fixture_path(name));
    const SplitApparatus app = build_apparatus(sys);
    const OperatorSet ops = build_operators(sys, app);
    std::vector<Subspace> mk;
    for (std::size_t i = 0; i < app.k_spaces.size(); ++i) mk.push_back(mk_space(sys, app, static_cast<int>(i)));
    out.require(is_direct_sum(mk, sys.dim()), name + " V is not the direct sum of the M K_i");
    for (const auto flavor : {SplitFlavor::first, SplitFlavor::second}) {
      const bool first = flavor == SplitFlavor::first;
      const UqAction action = first ? first_structure(sys, app, ops) : second_structure(sys, app, ops);
      const std::vector<Subspace>& split = first ? app.u : app.udd;
      try {
        const ModuleDecomposition dec = decompose_into_components(sys, app, action, flavor);
        for (int i = 0; i <= sys.d(); ++i) {
          out.require(dec.weights[i].space == split[i], name + " weight space " + std::to_string(i));
          const Subspace hw = 2 * i <= sys.d() ? app.k_spaces[i] : Subspace::zero(sys.dim());
          out.require(dec.weights[i].highest == hw, name + " highest weight space " + std::to_string(i));
        }
      } catch (const ConsistencyError& e) {
        out.require(false, name + " " + e.what());
      }
    }
  }
  out.detail << "components, L(d-2i,1) actions, weight and highest weight spaces agree for both structures";
  return out;
}

// Perturbs one entry of psi, K or B by +1 and reruns every check.
Outcome criterion6() {
  Outcome out;
  std::size_t trials = 0;
  for (const auto& name : kFixtures) {
    const TDSystem sys = ingest(fixture_path(name));
    const SplitApparatus app = build_apparatus(sys);
    const OperatorSet ops = build_operators(sys, app);
    const std::size_t n = sys.dim();
    const std::vector<std::pair<std::string, std::function<void(SplitApparatus&, OperatorSet&, std::size_t, std::size_t)>>>
        targets{{"psi", [](SplitApparatus&, OperatorSet& o, std::size_t r, std::size_t c) { o.psi(r, c) += 1; }},
                {"K", [](SplitApparatus& a, OperatorSet&, std::size_t r, std::size_t c) { a.k(r, c) += 1; }},
                {"B", [](SplitApparatus& a, OperatorSet&, std::size_t r, std::size_t c) { a.b(r, c) += 1; }}};
    for (const auto& [label, perturb] : targets) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          SplitApparatus bad_app = app;
          OperatorSet bad_ops = ops;
          perturb(bad_app, bad_ops, r, c);
          ++trials;
          bool witnessed = false;
          try {
            const VerificationReport report = run_all_checks(sys, bad_app, bad_ops);
            for (const auto& entry : report.entries())
              witnessed = witnessed || (!entry.pass && entry.residual && !entry.residual->is_zero());
          } catch (const Error& e) {
            out.require(false, name + " " + label + "(" + std::to_string(r) + "," + std::to_string(c) +
                                   ") threw: " + e.what());
            continue;
          }
          out.require(witnessed, name + " " + label + "(" + std::to_string(r) + "," + std::to_string(c) +
                                     ") went undetected");
        }
      }
    }
  }
  out.detail << trials << " single-entry faults each produce a failing check with a nonzero residual";
  return out;
}

// Smallest m <= limit with x^m = 0, or limit + 1.
unsigned nilpotency_index(const Matrix& x, unsigned limit) {
  Matrix power = x;
  for (unsigned m = 1; m <= limit; ++m) {
    if (power.is_zero()) return m;
    power = power * x;
  }
  return limit + 1;
}

Outcome criterion7() {
  Outcome out;
  for (const auto& name : kFixtures) {
    const TDSystem sys = ingest(fixture_path(name));
    const SplitApparatus app = build_apparatus(sys);
    const OperatorSet ops = build_operators(sys, app);
    const auto d = static_cast<unsigned>(sys.d());
    for (int i = 0; i <= sys.d(); ++i) {
      const std::size_t dim = sys.eig.eigenspaces[i].dim();
      out.require(sys.eig_star.eigenspaces[i].dim() == dim && app.u[i].dim() == dim && app.udd[i].dim() == dim,
                  name + " dimension ladder breaks at " + std::to_string(i));
    }
    out.require(ops.psi.pow(d + 1).is_zero(), name + " psi^{d+1} != 0");
    const Matrix id = Matrix::identity(sys.dim());
    const std::vector<std::pair<std::string, Matrix>> lowering{{"I - BK^{-1}", id - app.b * app.k_inv},
                                                              {"I - KB^{-1}", id - app.k * app.b_inv},
                                                              {"I - K^{-1}B", id - app.k_inv * app.b},
                                                              {"I - B^{-1}K", id - app.b_inv * app.k}};
    for (const auto& [label, x] : lowering)
      out.require(nilpotency_index(x, d + 1) <= d + 1, name + " " + label + " is not nilpotent of index <= d+1");
  }
  out.detail << "dim E_iV = dim E*_iV = dim U_i = dim U_i^dd; psi and I - KB-type maps nilpotent of index <= d+1";
  return out;
}

Outcome criterion8() {
  Outcome out;
  const auto dir = std::filesystem::temp_directory_path() / "tdlab_acceptance";
  std::filesystem::create_directories(dir);
  for (const auto& name : kFixtures) {
    const std::string original = read_file(fixture_path(name));
    const TDSystem sys = ingest(fixture_path(name));
    const auto path = dir / (name + ".json");
    write_file(path, format_instance(sys));
    const std::string exported = read_file(path);
    out.require(exported == original, name + " export differs from the fixture bytes");
    out.require(format_instance(ingest(path)) == exported, name + " ingest of the export is not stable");
  }
  std::filesystem::remove_all(dir);
  out.detail << "export then ingest reproduces " << kFixtures.size() << " instances byte for byte";
  return out;
}

}  // namespace

int main() {
  const std::vector<Outcome (*)()> criteria{criterion1, criterion2, criterion3, criterion4,
                                            criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i]();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    all = all && out.pass;
    std::cout << "criterion " << i + 1 << ": " << (out.pass ? "PASS" : "FAIL") << "  " << out.detail.str() << "\n";
  }
  return all ? 0 : 1;
}

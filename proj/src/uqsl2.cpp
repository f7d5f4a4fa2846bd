#include "tdlab/uqsl2.hpp"

#include <optional>

#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"

namespace tdlab {

VerificationReport verify_uq_relations(const UqAction& act) {
  const std::size_t n = act.k.rows();
  for (const Matrix* m : {&act.e, &act.f, &act.k, &act.k_inv})
    if (m->rows() != n || m->cols() != n) throw DimensionError("generators must be square of equal size");
  const Rational& q = act.q;
  const Rational qi = q.inverse();
  const Rational qq = q - qi;
  const Rational q2sum = q * q + qi * qi;
  const Matrix id = Matrix::identity(n);
  const Matrix& e = act.e;
  const Matrix& f = act.f;
  const Matrix casimir = (qq * qq) * (e * f) + qi * act.k + q * act.k_inv;

  VerificationReport report;
  report.add_residual("uq.kkinv", "k k^{-1} = k^{-1} k = I", hcat(act.k * act.k_inv - id, act.k_inv * act.k - id));
  report.add_residual("uq.kek", "k e k^{-1} = q^2 e", act.k * e * act.k_inv - (q * q) * e);
  report.add_residual("uq.kfk", "k f k^{-1} = q^{-2} f", act.k * f * act.k_inv - (qi * qi) * f);
  report.add_residual("uq.ef", "ef - fe = (k - k^{-1})/(q - q^{-1})", e * f - f * e - qq.inverse() * (act.k - act.k_inv));
  report.add_residual("uq.f2e", "f^2 e - (q^2+q^{-2}) f e f + e f^2 = -Lambda f",
                      f * f * e - q2sum * (f * e * f) + e * f * f + casimir * f);
  report.add_residual("uq.e2f", "e^2 f - (q^2+q^{-2}) e f e + f e^2 = -Lambda e",
                      e * e * f - q2sum * (e * f * e) + f * e * e + casimir * e);
  return report;
}

Rational q_integer(const Rational& q, long n) { return (pow(q, n) - pow(q, -n)) / (q - q.inverse()); }

Rational q_factorial(const Rational& q, long n) {
  Rational out(1);
  for (long i = 1; i <= n; ++i) out *= q_integer(q, i);
  return out;
}

IrreducibleModel build_L_model(int n, int epsilon, const Rational& q) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  if (epsilon != 1 && epsilon != -1) throw ParameterError("epsilon must be 1 or -1");
  if (q.is_zero() || q * q == Rational(1)) throw ParameterError("q must be nonzero with q^2 != 1");
  for (int i = 1; i <= n; ++i)
    if (pow(q, 2L * i) == Rational(1))
      throw ParameterError("q^{2i} must differ from 1 for 1 <= i <= n (fails at i=" + std::to_string(i) + ")");
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  const Rational eps(epsilon);
  IrreducibleModel model{n, epsilon, UqAction{Matrix(dim, dim), Matrix(dim, dim), Matrix(dim, dim), Matrix(dim, dim), q}};
  for (int i = 0; i <= n; ++i) {
    if (i > 0) model.action.e(i - 1, i) = eps * q_integer(q, n + 1 - i);
    if (i < n) model.action.f(i + 1, i) = q_integer(q, i + 1);
    model.action.k(i, i) = eps * pow(q, n - 2L * i);
    model.action.k_inv(i, i) = model.action.k(i, i).inverse();
  }
  return model;
}

std::vector<WeightSpace> weight_decomposition(const UqAction& action, std::span<const Rational> spectrum) {
  const std::size_t n = action.k.rows();
  std::vector<WeightSpace> out;
  for (const auto& lambda : spectrum) {
    Subspace space = Subspace::span(kernel(action.k - Matrix::scalar(n, lambda)));
    const Matrix& basis = space.basis();
    Subspace highest = Subspace::span(basis * kernel(action.e * basis));
    out.push_back(WeightSpace{lambda, std::move(space), std::move(highest)});
  }
  return out;
}

UqAction first_structure(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops) {
  const Rational& q = sys.params.q;
  const Rational scale = (q - q.inverse()).inverse();
  return UqAction{scale * ops.psi, scale * ops.r, app.k, app.k_inv, q};
}

UqAction second_structure(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops) {
  const Rational& q = sys.params.q;
  const Rational scale = (q - q.inverse()).inverse();
  return UqAction{scale * ops.psi, scale * ops.r_dd, app.b, app.b_inv, q};
}

ModuleDecomposition decompose_into_components(const TDSystem& sys, const SplitApparatus& app,
                                              const UqAction& action, SplitFlavor flavor) {
  const int d = sys.d();
  const std::size_t dim = sys.dim();
  const Rational& q = sys.params.q;
  const TDSystem ordered = flavor == SplitFlavor::first ? sys : second_inversion(sys);

  ModuleDecomposition out;
  std::vector<Rational> spectrum;
  for (int i = 0; i <= d; ++i) spectrum.push_back(sys.params.weight(i));
  out.weights = weight_decomposition(action, spectrum);

  const Matrix casimir = casimir_action(action.e, action.f, action.k, action.k_inv, q);
  std::vector<Subspace> spaces;
  for (int i = 0; 2 * i <= d; ++i) {
    const Subspace& ki = app.k_spaces.at(i);
    if (ki.is_zero()) continue;
    Component c;
    c.i = i;
    c.n = d - 2 * i;
    c.multiplicity = ki.dim();
    const UqAction model = build_L_model(c.n, 1, q).action;
    std::vector<Rational> gamma_inv;
    for (int j = 0; j <= c.n; ++j) gamma_inv.push_back((pow(q - q.inverse(), j) * q_factorial(q, j)).inverse());
    for (std::size_t col = 0; col < ki.dim(); ++col) {
      const Matrix v = ki.basis().col(col);
      std::vector<Matrix> columns;
      for (int j = 0; j <= c.n; ++j) columns.push_back(gamma_inv[j] * (ordered.tau(i, i + j) * v));
      Matrix basis = hcat(columns, dim);
      if (rank(basis) != basis.cols())
        throw ConsistencyError("vectors v_j are dependent in component " + std::to_string(i));
      if (action.e * basis != basis * model.e || action.f * basis != basis * model.f ||
          action.k * basis != basis * model.k)
        throw ConsistencyError("action on component " + std::to_string(i) + " differs from " + c.label());
      c.bases.push_back(std::move(basis));
    }
    c.space = Subspace::span(hcat(c.bases, dim));
    c.casimir = pow(q, c.n + 1) + pow(q, -c.n - 1);
    if (casimir * c.space.basis() != c.casimir * c.space.basis())
      throw ConsistencyError("Casimir is not " + c.casimir.str() + " on component " + std::to_string(i));
    spaces.push_back(c.space);
    out.components.push_back(std::move(c));
  }
  if (!is_direct_sum(spaces, dim)) throw ConsistencyError("components do not decompose V");
  return out;
}

VerificationReport verify_module_structures(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops,
                                            const Selection& selection) {
  VerificationReport report;
  const int d = sys.d();
  const std::size_t dim = sys.dim();
  std::optional<ModuleDecomposition> decomposition[2];
  std::string failure[2];

  const auto structure = [&](SplitFlavor flavor) {
    return flavor == SplitFlavor::first ? first_structure(sys, app, ops) : second_structure(sys, app, ops);
  };
  const auto decompose = [&](SplitFlavor flavor) -> const std::optional<ModuleDecomposition>& {
    const int slot = flavor == SplitFlavor::first ? 0 : 1;
    if (!decomposition[slot] && failure[slot].empty()) {
      try {
        decomposition[slot] = decompose_into_components(sys, app, structure(flavor), flavor);
      } catch (const ConsistencyError& e) {
        failure[slot] = e.what();
      }
    }
    return decomposition[slot];
  };

  for (const SplitFlavor flavor : {SplitFlavor::first, SplitFlavor::second}) {
    const bool first = flavor == SplitFlavor::first;
    const std::string tag = first ? "U" : "Udd";
    const std::string suffix = first ? "" : ".dd";
    const std::vector<Subspace>& split = first ? app.u : app.udd;
    const int slot = first ? 0 : 1;

    const std::string relations = "lem." + tag + "action";
    const VerificationReport uq = verify_uq_relations(structure(flavor));
    for (const auto& r : uq.entries()) {
      CheckResult named = r;
      named.id = relations + "." + r.id.substr(3);
      named.anchor = (first ? "first structure: " : "second structure: ") + r.anchor;
      if (selection.includes(named.id)) report.add(std::move(named));
    }
    const std::string wt = "lem." + tag + "wtspace";
    if (selection.includes(wt)) {
      bool ok = true;
      if (const auto& dec = decompose(flavor)) {
        for (int i = 0; i <= d; ++i) ok = ok && dec->weights[i].space == split[i];
      } else {
        ok = false;
      }
      report.add(wt, first ? "U_i is the weight space for q^{d-2i}" : "U_i^dd is the weight space for q^{d-2i}", ok,
                 ok ? "" : "weight spaces differ from the split decomposition");
    }
    const std::string hw = "lem.Ki-hw" + suffix;
    if (selection.includes(hw)) {
      bool ok = true;
      if (const auto& dec = decompose(flavor)) {
        for (int i = 0; i <= d; ++i) {
          const Subspace expected = 2 * i <= d ? app.k_spaces[i] : Subspace::zero(dim);
          ok = ok && dec->weights[i].highest == expected;
        }
      } else {
        ok = false;
      }
      report.add(hw, "K_i is the highest weight space for q^{d-2i}", ok,
                 ok ? "" : "highest weight spaces differ from K_i");
    }
    const std::string mv = "lem.Mv-mod" + suffix;
    if (selection.includes(mv)) {
      const bool ok = decompose(flavor).has_value();
      report.add(mv, "M v is isomorphic to L(d-2i,1) via v_j = gamma_j^{-1} tau_{i,i+j}(A) v", ok, failure[slot]);
    }
    const std::string hom = "lem.MKi-hom" + suffix;
    if (selection.includes(hom)) {
      bool ok = true;
      if (const auto& dec = decompose(flavor)) {
        for (const auto& c : dec->components) ok = ok && c.space == mk_space(sys, app, c.i);
      } else {
        ok = false;
      }
      report.add(hom, "M K_i is the homogeneous component for L(d-2i,1)", ok,
                 ok ? "" : "a component differs from M K_i");
    }
    const std::string ss = "lem.semisimple" + suffix;
    if (selection.includes(ss)) {
      bool ok = false;
      if (const auto& dec = decompose(flavor)) {
        std::vector<Subspace> spaces;
        for (const auto& c : dec->components) spaces.push_back(c.space);
        ok = is_direct_sum(spaces, dim);
      }
      report.add(ss, "V is the direct sum of the homogeneous components", ok,
                 ok ? "" : "components do not decompose V");
    }
  }

  if (selection.includes("mod.labels")) {
    const auto& one = decompose(SplitFlavor::first);
    const auto& two = decompose(SplitFlavor::second);
    bool ok = one && two && one->components.size() == two->components.size();
    if (ok) {
      for (std::size_t c = 0; c < one->components.size(); ++c)
        ok = ok && one->components[c].n == two->components[c].n &&
             one->components[c].multiplicity == two->components[c].multiplicity;
    }
    report.add("mod.labels", "both structures have the same components L(d-2i,1) with multiplicity dim K_i", ok);
  }
  return report;
}

}  // namespace tdlab

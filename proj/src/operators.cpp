#include "tdlab/operators.hpp"

#include <string>
#include <utility>
#include <vector>

#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"

namespace tdlab {

namespace {

Matrix cat(const std::vector<Matrix>& parts) {
  return hcat(parts, parts.empty() ? 0 : parts.front().rows());
}

// sum_{i=0}^{d} c^i psi^i
Matrix geometric(const Matrix& psi, const Rational& c, int d) {
  const std::size_t n = psi.rows();
  Matrix term = Matrix::identity(n);
  Matrix sum = term;
  for (int i = 1; i <= d; ++i) {
    term = c * (term * psi);
    sum += term;
  }
  return sum;
}

// Projection onto parts[index] along the other summands.
Matrix projection(std::span<const Subspace> parts, std::size_t index) {
  std::vector<Rational> w(parts.size(), Rational(0));
  w[index] = 1;
  return operator_from_decomposition(parts, w);
}

Subspace prefix(std::span<const Subspace> parts, int last, std::size_t n) {
  if (last < 0) return Subspace::zero(n);
  return subspace_sum(parts.subspan(0, last + 1), n);
}

// True iff op U_i lies in U_{i+shift} for every i (out-of-range targets are 0).
bool shifts(const Matrix& op, std::span<const Subspace> parts, int shift) {
  const int count = static_cast<int>(parts.size());
  const std::size_t n = op.rows();
  for (int i = 0; i < count; ++i) {
    const int t = i + shift;
    const Subspace target = (t >= 0 && t < count) ? parts[t] : Subspace::zero(n);
    if (!target.contains(op * parts[i].basis())) return false;
  }
  return true;
}

MatrixEquationSystem psi_system(const TDSystem& sys, const SplitApparatus& app, const Matrix& r) {
  const Rational& q = sys.params.q;
  MatrixEquationSystem system(sys.dim());
  system.add_commutator(r, (q - q.inverse()) * (app.k - app.k_inv));
  for (const auto& ki : app.k_spaces) system.add_annihilates(ki.basis());
  return system;
}

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const Selection& selection) : selection_(selection) {}

  template <class F>
  void residual(const std::string& id, const std::string& anchor, F&& f) {
    if (selection_.includes(id)) report_.add_residual(id, anchor, f());
  }

  template <class F>
  void truth(const std::string& id, const std::string& anchor, const std::string& on_fail, F&& f) {
    if (!selection_.includes(id)) return;
    const bool ok = f();
    report_.add(id, anchor, ok, ok ? std::string() : on_fail);
  }

  template <class F>
  void custom(const std::string& id, F&& f) {
    if (selection_.includes(id)) report_.add(f());
  }

  VerificationReport take() { return std::move(report_); }

 private:
  const Selection& selection_;
  VerificationReport report_;
};

}  // namespace

Matrix build_R(const TDSystem& sys, const SplitApparatus& app) {
  const Rational& a = sys.params.a;
  return sys.a - a * app.k - a.inverse() * app.k_inv;
}

Matrix build_Rdd(const TDSystem& sys, const SplitApparatus& app) {
  const Rational& a = sys.params.a;
  return sys.a - a.inverse() * app.b - a * app.b_inv;
}

Rational psi_coefficient(const QRacahParams& params, int i, int j) {
  const Rational& q = params.q;
  const int d = params.d;
  return (pow(q, j - i) - pow(q, i - j)) * (pow(q, d - i - j + 1) - pow(q, i + j - d - 1));
}

Matrix build_psi_from_formula(const TDSystem& sys, const SplitApparatus& app) {
  const int d = sys.d();
  const std::size_t n = sys.dim();
  std::vector<Matrix> sources;
  std::vector<Matrix> targets;
  for (int i = 0; 2 * i <= d; ++i) {
    for (int j = i; j <= d - i; ++j) {
      const Matrix& image = app.cell(i, j).image;
      sources.push_back(image);
      targets.push_back(j == i ? Matrix(n, image.cols())
                               : psi_coefficient(sys.params, i, j) * app.cell(i, j - 1).image);
    }
  }
  return hcat(targets, n) * inverse(hcat(sources, n));
}

long psi_solution_dimension(const TDSystem& sys, const SplitApparatus& app, const Matrix& r) {
  const auto sol = psi_system(sys, app, r).solve();
  return sol ? static_cast<long>(sol->dimension()) : -1;
}

Matrix build_psi_from_solver(const TDSystem& sys, const SplitApparatus& app, const Matrix& r) {
  const auto sol = psi_system(sys, app, r).solve();
  if (!sol) throw ConsistencyError("psi system is inconsistent");
  if (sol->dimension() != 0)
    throw ConsistencyError("psi system has a " + std::to_string(sol->dimension()) + "-dimensional solution set");
  return sol->particular;
}

std::size_t lowering_commutant_dimension(const TDSystem& sys, const SplitApparatus& app, const Matrix& r) {
  const std::size_t n = sys.dim();
  MatrixEquationSystem system(n);
  system.add_commutator(r, Matrix(n, n));
  const Matrix id = Matrix::identity(n);
  for (std::size_t i = 0; i < app.u.size(); ++i) {
    const Matrix away = i == 0 ? id : id - projection(app.u, i - 1);
    system.add_projected_annihilates(away, app.u[i].basis());
  }
  const auto sol = system.solve();
  if (!sol) throw ConsistencyError("homogeneous system reported inconsistent");
  return sol->dimension();
}

Matrix casimir_action(const Matrix& e, const Matrix& f, const Matrix& k, const Matrix& k_inv, const Rational& q) {
  const Rational q_inv = q.inverse();
  const Rational s = (q - q_inv) * (q - q_inv);
  Matrix ef = s * (e * f) + q_inv * k + q * k_inv;
  const Matrix fe = s * (f * e) + q * k + q_inv * k_inv;
  if (ef != fe) throw ConsistencyError("not a U_q(sl2) action");
  return ef;
}

OperatorSet build_operators(const TDSystem& sys, const SplitApparatus& app) {
  OperatorSet ops;
  ops.r = build_R(sys, app);
  ops.r_dd = build_Rdd(sys, app);
  ops.psi = build_psi_from_formula(sys, app);
  if (build_psi_from_solver(sys, app, ops.r) != ops.psi)
    throw ConsistencyError("psi from the cell formula differs from the linear-system solution");
  const Rational& q = sys.params.q;
  const Rational scale = (q - q.inverse()).inverse();
  ops.lambda = casimir_action(scale * ops.psi, scale * ops.r, app.k, app.k_inv, q);
  return ops;
}

VerificationReport run_identity_suite(const TDSystem& sys, const SplitApparatus& app, const OperatorSet& ops,
                                      const Selection& selection) {
  SuiteBuilder s(selection);
  const int d = sys.d();
  const std::size_t n = sys.dim();
  const Rational& q = sys.params.q;
  const Rational& a = sys.params.a;
  const Rational qi = q.inverse();
  const Rational ai = a.inverse();
  const Rational qq = q - qi;
  const Rational qq2 = qq * qq;
  const Rational q2sum = q * q + qi * qi;
  const Matrix id = Matrix::identity(n);
  const Matrix& A = sys.a;
  const Matrix& K = app.k;
  const Matrix& Ki = app.k_inv;
  const Matrix& B = app.b;
  const Matrix& Bi = app.b_inv;
  const Matrix& R = ops.r;
  const Matrix& Rd = ops.r_dd;
  const Matrix& P = ops.psi;
  const Matrix& L = ops.lambda;
  const auto& theta = sys.theta();

  // Raising maps.
  s.residual("def.R", "R = A - aK - a^{-1}K^{-1}", [&] { return R - (A - a * K - ai * Ki); });
  s.residual("def.Rdd", "R^dd = A - a^{-1}B - aB^{-1}", [&] { return Rd - (A - ai * B - a * Bi); });
  s.residual("lem.RonU", "R acts on U_i as A - theta_i I", [&] {
    std::vector<Matrix> parts;
    for (int i = 0; i <= d; ++i) parts.push_back((R - A + Matrix::scalar(n, theta[i])) * app.u[i].basis());
    return cat(parts);
  });
  s.truth("lem.RonU.raise", "R U_i in U_{i+1} and R U_d = 0", "R does not raise U", [&] { return shifts(R, app.u, 1); });
  s.residual("lem.RonU.nilpotent", "R^{d+1} = 0", [&] { return R.pow(d + 1); });
  s.residual("lem.RonUdd", "R^dd acts on U_i^dd as A - theta_{d-i} I", [&] {
    std::vector<Matrix> parts;
    for (int i = 0; i <= d; ++i) parts.push_back((Rd - A + Matrix::scalar(n, theta[d - i])) * app.udd[i].basis());
    return cat(parts);
  });
  s.truth("lem.RonUdd.raise", "R^dd U_i^dd in U_{i+1}^dd and R^dd U_d^dd = 0", "R^dd does not raise U^dd",
          [&] { return shifts(Rd, app.udd, 1); });
  s.residual("lem.RonUdd.nilpotent", "(R^dd)^{d+1} = 0", [&] { return Rd.pow(d + 1); });
  s.truth("lem.Rkernel", "R is injective on U_i for 0 <= i < d/2", "R has a kernel on some U_i, i < d/2", [&] {
    for (int i = 0; 2 * i < d; ++i)
      if (rank(R * app.u[i].basis()) != app.u[i].dim()) return false;
    return true;
  });
  s.residual("eq.Rdiff", "R^dd - R = aK + a^{-1}K^{-1} - a^{-1}B - aB^{-1}",
             [&] { return Rd - R - (a * K + ai * Ki - ai * B - a * Bi); });

  // q-Weyl relations.
  s.residual("lem.KRKinv.K", "K R K^{-1} = q^{-2} R", [&] { return K * R * Ki - qi * qi * R; });
  s.residual("lem.KRKinv.B", "B R^dd B^{-1} = q^{-2} R^dd", [&] { return B * Rd * Bi - qi * qi * Rd; });
  s.residual("lem.KpsiKinv.K", "K psi K^{-1} = q^2 psi", [&] { return K * P * Ki - q * q * P; });
  s.residual("lem.KpsiKinv.B", "B psi B^{-1} = q^2 psi", [&] { return B * P * Bi - q * q * P; });
  s.residual("lem.AKqWeyl.K", "(qKA - q^{-1}AK)/(q - q^{-1}) = aK^2 + a^{-1}I",
             [&] { return qq.inverse() * (q * (K * A) - qi * (A * K)) - (a * (K * K) + ai * id); });
  s.residual("lem.AKqWeyl.B", "(qBA - q^{-1}AB)/(q - q^{-1}) = a^{-1}B^2 + aI",
             [&] { return qq.inverse() * (q * (B * A) - qi * (A * B)) - (ai * (B * B) + a * id); });

  // psi.
  s.residual("eq.psiR", "psi R - R psi = (q - q^{-1})(K - K^{-1})", [&] { return P * R - R * P - qq * (K - Ki); });
  s.residual("eq.psiRdd", "psi R^dd - R^dd psi = (q - q^{-1})(B - B^{-1})",
             [&] { return P * Rd - Rd * P - qq * (B - Bi); });
  s.residual("lem.psidef.Ki", "psi K_i = 0", [&] {
    std::vector<Matrix> parts;
    for (const auto& ki : app.k_spaces) parts.push_back(P * ki.basis());
    return cat(parts);
  });
  s.residual("lem.psidef.formula", "psi agrees with its action on the cells tau_ij(A) K_i",
             [&] { return P - build_psi_from_formula(sys, app); });
  s.custom("lem.psidef.solver", [&] {
    CheckResult r{"lem.psidef.solver", "psi is the solution of XR - RX = (q - q^{-1})(K - K^{-1}), X K_i = 0", false,
                  std::nullopt, {}};
    try {
      const Matrix diff = P - build_psi_from_solver(sys, app, R);
      r.pass = diff.is_zero();
      if (!r.pass) r.residual = diff;
    } catch (const ConsistencyError& e) {
      r.detail = e.what();
    }
    return r;
  });
  s.custom("lem.psidef.unique", [&] {
    const long dim = psi_solution_dimension(sys, app, R);
    return CheckResult{"lem.psidef.unique", "the psi linear system has exactly one solution", dim == 0, std::nullopt,
                       dim == 0 ? "" : "solution set dimension " + std::to_string(dim)};
  });
  s.custom("lem.X", [&] {
    const std::size_t dim = lowering_commutant_dimension(sys, app, R);
    return CheckResult{"lem.X", "XR = RX and X U_i in U_{i-1} imply X = 0", dim == 0, std::nullopt,
                       dim == 0 ? "" : "commutant dimension " + std::to_string(dim)};
  });
  s.residual("lem.psiequal", "psi^dd = psi", [&] {
    const TDSystem dd = second_inversion(sys);
    return P - build_psi_from_formula(dd, build_apparatus(dd));
  });
  s.truth("lem.psiU.U", "psi U_i in U_{i-1}", "psi does not lower U", [&] { return shifts(P, app.u, -1); });
  s.truth("lem.psiU.Udd", "psi U_i^dd in U_{i-1}^dd", "psi does not lower U^dd", [&] { return shifts(P, app.udd, -1); });
  s.residual("lem.psiU.nilpotent", "psi^{d+1} = 0", [&] { return P.pow(d + 1); });
  s.truth("lem.psiUkernel", "the kernel of psi on U_i is K_i for 0 <= i <= d/2", "kernel differs from K_i", [&] {
    for (std::size_t i = 0; i < app.k_spaces.size(); ++i) {
      const Matrix& basis = app.u[i].basis();
      if (Subspace::span(basis * kernel(P * basis)) != app.k_spaces[i]) return false;
    }
    return true;
  });
  s.residual("cell.Rpsi", "R psi = (q^{j-i} - q^{i-j})(q^{d-i-j+1} - q^{i+j-d-1}) I on tau_ij(A) K_i", [&] {
    std::vector<Matrix> parts;
    for (const auto& [key, cell] : app.cells)
      parts.push_back(R * P * cell.image - psi_coefficient(sys.params, key.first, key.second) * cell.image);
    return cat(parts);
  });
  s.residual("cell.psiR", "psi R = (q^{j-i+1} - q^{i-j-1})(q^{d-i-j} - q^{i+j-d}) I on tau_ij(A) K_i", [&] {
    std::vector<Matrix> parts;
    for (const auto& [key, cell] : app.cells) {
      const auto [i, j] = key;
      const Rational c = (pow(q, j - i + 1) - pow(q, i - j - 1)) * (pow(q, d - i - j) - pow(q, i + j - d));
      parts.push_back(P * R * cell.image - c * cell.image);
    }
    return cat(parts);
  });

  // Casimir.
  const auto lambda_dd = [&] { return P * Rd + qi * B + q * Bi; };
  s.residual("lem.casimir-act1", "Lambda = psi R + q^{-1}K + qK^{-1} = R psi + qK + q^{-1}K^{-1}", [&] {
    return hcat(L - (P * R + qi * K + q * Ki), L - (R * P + q * K + qi * Ki));
  });
  s.residual("lem.casimir-act2", "psi R^dd + q^{-1}B + qB^{-1} = R^dd psi + qB + q^{-1}B^{-1}",
             [&] { return lambda_dd() - (Rd * P + q * B + qi * Bi); });
  s.residual("lem.4exp", "the Casimir actions of the two module structures coincide", [&] { return L - lambda_dd(); });
  s.residual("casimir.commute", "Lambda commutes with psi, R, R^dd, K, B, A", [&] {
    return cat({commutator(L, P), commutator(L, R), commutator(L, Rd), commutator(L, K), commutator(L, B),
                commutator(L, A)});
  });
  s.residual("lem.R2psi.1", "R^2 psi - (q^2+q^{-2}) R psi R + psi R^2 = -(q-q^{-1})^2 Lambda R",
             [&] { return R * R * P - q2sum * (R * P * R) + P * R * R + qq2 * (L * R); });
  s.residual("lem.R2psi.2", "psi^2 R - (q^2+q^{-2}) psi R psi + R psi^2 = -(q-q^{-1})^2 Lambda psi",
             [&] { return P * P * R - q2sum * (P * R * P) + R * P * P + qq2 * (L * P); });
  s.residual("lem.R2psidd.1", "(R^dd)^2 psi - (q^2+q^{-2}) R^dd psi R^dd + psi (R^dd)^2 = -(q-q^{-1})^2 Lambda R^dd",
             [&] { return Rd * Rd * P - q2sum * (Rd * P * Rd) + P * Rd * Rd + qq2 * (L * Rd); });
  s.residual("lem.R2psidd.2", "psi^2 R^dd - (q^2+q^{-2}) psi R^dd psi + R^dd psi^2 = -(q-q^{-1})^2 Lambda psi",
             [&] { return P * P * Rd - q2sum * (P * Rd * P) + Rd * P * P + qq2 * (L * P); });
  const auto on_components = [&](const Matrix& lambda) {
    std::vector<Matrix> parts;
    for (int i = 0; 2 * i <= d; ++i) {
      if (app.k_spaces[i].is_zero()) continue;
      const Rational c = pow(q, d - 2 * i + 1) + pow(q, 2 * i - d - 1);
      const Matrix basis = mk_space(sys, app, i).basis();
      parts.push_back(lambda * basis - c * basis);
    }
    return cat(parts);
  };
  s.residual("lem.Ucasaction", "Lambda = (q^{d-2i+1} + q^{2i-d-1}) I on M K_i", [&] { return on_components(L); });
  s.residual("lem.Uddcasaction", "the second Casimir action is (q^{d-2i+1} + q^{2i-d-1}) I on M K_i",
             [&] { return on_components(lambda_dd()); });

  // K, B and psi.
  const auto lin = [&](const Rational& c) { return id - c * P; };
  s.residual("prop.coincide.1", "(I-aq psi)K = (I-a^{-1}q psi)B = K(I-aq^{-1} psi) = B(I-a^{-1}q^{-1} psi)", [&] {
    const Matrix x = lin(a * q) * K;
    return cat({x - lin(ai * q) * B, x - K * lin(a * qi), x - B * lin(ai * qi)});
  });
  s.residual("prop.coincide.2",
             "(I-a^{-1}q^{-1} psi)K^{-1} = (I-aq^{-1} psi)B^{-1} = K^{-1}(I-a^{-1}q psi) = B^{-1}(I-aq psi)", [&] {
               const Matrix x = lin(ai * qi) * Ki;
               return cat({x - lin(a * qi) * Bi, x - Ki * lin(ai * q), x - Bi * lin(a * q)});
             });
  const std::pair<const char*, Rational> series[] = {
      {"1", a * q}, {"2", ai * q}, {"3", a * qi}, {"4", ai * qi}};
  for (const auto& entry : series) {
    const Rational c = entry.second;
    s.residual(std::string("lem.invertible2.") + entry.first, "(I - c psi)^{-1} = sum_i c^i psi^i for c = " + c.str(), [&] {
      const Matrix g = geometric(P, c, d);
      return hcat(lin(c) * g - id, g * lin(c) - id);
    });
  }
  const Matrix BKi = B * Ki;
  const Matrix KBi = K * Bi;
  const Matrix KiB = Ki * B;
  const Matrix BiK = Bi * K;
  s.residual("thm.BK.1", "BK^{-1} = (I-aq psi)(I-a^{-1}q psi)^{-1}",
             [&] { return BKi - lin(a * q) * geometric(P, ai * q, d); });
  s.residual("thm.BK.2", "KB^{-1} = (I-a^{-1}q psi)(I-aq psi)^{-1}",
             [&] { return KBi - lin(ai * q) * geometric(P, a * q, d); });
  s.residual("thm.BK.3", "K^{-1}B = (I-aq^{-1} psi)(I-a^{-1}q^{-1} psi)^{-1}",
             [&] { return KiB - lin(a * qi) * geometric(P, ai * qi, d); });
  s.residual("thm.BK.4", "B^{-1}K = (I-a^{-1}q^{-1} psi)(I-aq^{-1} psi)^{-1}",
             [&] { return BiK - lin(ai * qi) * geometric(P, a * qi, d); });
  s.residual("lem.KBcomm", "psi, BK^{-1}, KB^{-1}, K^{-1}B, B^{-1}K mutually commute", [&] {
    const std::vector<Matrix> ms{P, BKi, KBi, KiB, BiK};
    std::vector<Matrix> parts;
    for (std::size_t x = 0; x < ms.size(); ++x)
      for (std::size_t y = x + 1; y < ms.size(); ++y) parts.push_back(commutator(ms[x], ms[y]));
    return cat(parts);
  });
  const std::vector<Matrix> ratios{BKi, KBi, KiB, BiK};
  s.truth("lem.I-KB.lower", "I-BK^{-1}, I-KB^{-1}, I-K^{-1}B, I-B^{-1}K send U_i into U_0 + ... + U_{i-1}",
          "a difference does not lower the U filtration", [&] {
            for (const auto& x : ratios)
              for (int i = 0; i <= d; ++i)
                if (!prefix(app.u, i - 1, n).contains((id - x) * app.u[i].basis())) return false;
            return true;
          });
  s.residual("lem.I-KB.nilpotent", "(I-BK^{-1})^{d+1} = 0 and likewise for the other three", [&] {
    std::vector<Matrix> parts;
    for (const auto& x : ratios) parts.push_back((id - x).pow(d + 1));
    return cat(parts);
  });
  const Matrix den1 = a * id - ai * BKi;
  const Matrix den2 = ai * id - a * KBi;
  const Matrix den3 = a * id - ai * KiB;
  const Matrix den4 = ai * id - a * BiK;
  s.truth("lem.invertible1", "aI-a^{-1}BK^{-1}, a^{-1}I-aKB^{-1}, aI-a^{-1}K^{-1}B, a^{-1}I-aB^{-1}K are invertible",
          "a denominator is singular", [&] {
            for (const Matrix* m : {&den1, &den2, &den3, &den4})
              if (rank(*m) != n) return false;
            return true;
          });
  // psi = N / D is checked as psi D = N = D psi.
  const auto quotient = [&](const Matrix& num, const Matrix& den) { return hcat(P * den - num, den * P - num); };
  s.residual("thm.psiequations.1", "psi = (I-BK^{-1}) / q(aI-a^{-1}BK^{-1})",
             [&] { return quotient(id - BKi, q * den1); });
  s.residual("thm.psiequations.2", "psi = (I-KB^{-1}) / q(a^{-1}I-aKB^{-1})",
             [&] { return quotient(id - KBi, q * den2); });
  s.residual("thm.psiequations.3", "psi = q(I-K^{-1}B) / (aI-a^{-1}K^{-1}B)",
             [&] { return quotient(q * (id - KiB), den3); });
  s.residual("thm.psiequations.4", "psi = q(I-B^{-1}K) / (a^{-1}I-aB^{-1}K)",
             [&] { return quotient(q * (id - BiK), den4); });
  const Rational c1 = (ai * q - a * qi) / qq;
  const Rational c2 = (a * q - ai * qi) / qq;
  s.residual("thm.KBquad", "aK^2 - c1 KB - c2 BK + a^{-1}B^2 = 0",
             [&] { return a * (K * K) - c1 * (K * B) - c2 * (B * K) + ai * (B * B); });
  s.residual("thm.KBinvquad", "aB^{-2} - c1 K^{-1}B^{-1} - c2 B^{-1}K^{-1} + a^{-1}K^{-2} = 0",
             [&] { return a * (Bi * Bi) - c1 * (Ki * Bi) - c2 * (Bi * Ki) + ai * (Ki * Ki); });
  s.residual("lem.KBfactor.1", "q(K-B)(aK-a^{-1}B) = q^{-1}(aK-a^{-1}B)(K-B)", [&] {
    const Matrix x = K - B;
    const Matrix y = a * K - ai * B;
    return q * (x * y) - qi * (y * x);
  });
  s.residual("lem.KBfactor.2", "q(a^{-1}K^{-1}-aB^{-1})(K^{-1}-B^{-1}) = q^{-1}(K^{-1}-B^{-1})(a^{-1}K^{-1}-aB^{-1})",
             [&] {
               const Matrix x = ai * Ki - a * Bi;
               const Matrix y = Ki - Bi;
               return q * (x * y) - qi * (y * x);
             });
  s.residual("lem.KBfactor.3", "q(I-K^{-1}B)(aI-a^{-1}BK^{-1}) = q^{-1}(aI-a^{-1}K^{-1}B)(I-BK^{-1})",
             [&] { return q * ((id - KiB) * den1) - qi * (den3 * (id - BKi)); });
  s.residual("lem.KBfactor.4", "q(a^{-1}I-aKB^{-1})(I-B^{-1}K) = q^{-1}(I-KB^{-1})(a^{-1}I-aB^{-1}K)",
             [&] { return q * (den2 * (id - BiK)) - qi * ((id - KBi) * den4); });
  s.residual("lem.KKBB1.1", "B = a^2 K + (1-a^2) K sum a^{-i}q^{-i} psi^i",
             [&] { return B - (a * a * K + (1 - a * a) * (K * geometric(P, ai * qi, d))); });
  s.residual("lem.KKBB1.2", "B^{-1} = a^{-2} K^{-1} + (1-a^{-2}) K^{-1} sum a^i q^i psi^i",
             [&] { return Bi - (ai * ai * Ki + (1 - ai * ai) * (Ki * geometric(P, a * q, d))); });
  s.residual("lem.KKBB1.3", "R^dd = R + (a-a^{-1}) sum (a^{-i}q^{-i}K - a^i q^i K^{-1}) psi^i", [&] {
    Matrix sum(n, n);
    Matrix power = id;
    for (int i = 0; i <= d; ++i) {
      sum += (pow(ai * qi, i) * K - pow(a * q, i) * Ki) * power;
      power = power * P;
    }
    return Rd - R - (a - ai) * sum;
  });
  s.residual("lem.KKBB2.1", "K = a^{-2} B + (1-a^{-2}) B sum a^i q^{-i} psi^i",
             [&] { return K - (ai * ai * B + (1 - ai * ai) * (B * geometric(P, a * qi, d))); });
  s.residual("lem.KKBB2.2", "K^{-1} = a^2 B^{-1} + (1-a^2) B^{-1} sum a^{-i} q^i psi^i",
             [&] { return Ki - (a * a * Bi + (1 - a * a) * (Bi * geometric(P, ai * q, d))); });
  s.residual("lem.KKBB2.3", "R = R^dd + (a-a^{-1}) sum (a^{-i}q^i B^{-1} - a^i q^{-i} B) psi^i", [&] {
    Matrix sum(n, n);
    Matrix power = id;
    for (int i = 0; i <= d; ++i) {
      sum += (pow(ai * q, i) * Bi - pow(a * qi, i) * B) * power;
      power = power * P;
    }
    return R - Rd - (a - ai) * sum;
  });

  // A and psi.
  s.residual("eq.A2psi",
             "A^2 psi - (q^2+q^{-2}) A psi A + psi A^2 + (q^2-q^{-2})^2 psi = "
             "-(q-q^{-1})^2 Lambda A + (a+a^{-1})(q-q^{-1})^2(q+q^{-1}) I",
             [&] {
               const Rational w = q * q - qi * qi;
               const Matrix lhs = A * A * P - q2sum * (A * P * A) + P * A * A + (w * w) * P;
               const Matrix rhs = -qq2 * (L * A) + ((a + ai) * qq2 * (q + qi)) * id;
               return lhs - rhs;
             });
  s.residual("eq.psi2A", "psi^2 A - (q^2+q^{-2}) psi A psi + A psi^2 = -(q-q^{-1})^2 Lambda psi",
             [&] { return P * P * A - q2sum * (P * A * P) + A * P * P + qq2 * (L * P); });

  return s.take();
}

}  // namespace tdlab

#include "tdlab/split.hpp"

#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"

namespace tdlab {

namespace {

Subspace range_sum(const EigenData& eig, int first, int last, std::size_t n) {
  if (last < first) return Subspace::zero(n);
  return subspace_sum(std::span<const Subspace>(eig.eigenspaces).subspan(first, last - first + 1), n);
}

Subspace prefix_sum(std::span<const Subspace> parts, int last, std::size_t n) {
  if (last < 0) return Subspace::zero(n);
  return subspace_sum(parts.subspan(0, last + 1), n);
}

std::vector<Rational> weights(const QRacahParams& params, bool inverted) {
  std::vector<Rational> w;
  for (int i = 0; i <= params.d; ++i) w.push_back(inverted ? params.weight(i).inverse() : params.weight(i));
  return w;
}

}  // namespace

std::vector<Subspace> split_decomposition(const TDSystem& sys, SplitFlavor flavor) {
  const int d = sys.d();
  const std::size_t n = sys.dim();
  std::vector<Subspace> out;
  for (int i = 0; i <= d; ++i) {
    const Subspace dual_prefix = range_sum(sys.eig_star, 0, i, n);
    const Subspace tail = flavor == SplitFlavor::first ? range_sum(sys.eig, i, d, n) : range_sum(sys.eig, 0, d - i, n);
    out.push_back(subspace_intersect(dual_prefix, tail));
  }
  if (!is_direct_sum(out, n)) throw ConsistencyError("split decomposition is not a direct sum");
  return out;
}

Matrix weight_operator(const TDSystem& sys, std::span<const Subspace> decomposition) {
  return operator_from_decomposition(decomposition, weights(sys.params, false));
}

Matrix build_K(const TDSystem& sys) { return weight_operator(sys, split_decomposition(sys, SplitFlavor::first)); }

Matrix build_B(const TDSystem& sys) { return weight_operator(sys, split_decomposition(sys, SplitFlavor::second)); }

std::vector<Subspace> compute_K_spaces(const TDSystem& sys, std::span<const Subspace> u,
                                       std::span<const Subspace> udd) {
  const int d = sys.d();
  const std::size_t n = sys.dim();
  std::vector<Subspace> out;
  for (int i = 0; 2 * i <= d; ++i) {
    Subspace ki = subspace_intersect(range_sum(sys.eig_star, 0, i, n), range_sum(sys.eig, i, d - i, n));
    if (ki != subspace_intersect(u[i], udd[i])) throw ConsistencyError("K_i differs from U_i cap U_i^dd");
    out.push_back(std::move(ki));
  }
  if (out.front() != u.front() || out.front() != sys.eig_star.eigenspaces.front())
    throw ConsistencyError("K_0 differs from E*_0V = U_0");
  return out;
}

std::map<std::pair<int, int>, Cell> refined_decomposition(const TDSystem& sys, std::span<const Subspace> u,
                                                          std::span<const Subspace> k_spaces) {
  const int d = sys.d();
  const std::size_t n = sys.dim();
  std::map<std::pair<int, int>, Cell> cells;
  std::vector<Subspace> all;
  for (int i = 0; 2 * i <= d; ++i) {
    const Matrix& seed = k_spaces[i].basis();
    for (int j = i; j <= d - i; ++j) {
      Matrix image = sys.tau(i, j) * seed;
      Subspace space = Subspace::span(image);
      if (space.dim() != seed.cols()) throw ConsistencyError("tau_ij(A) is not injective on K_i");
      all.push_back(space);
      cells.emplace(std::make_pair(i, j), Cell{std::move(space), std::move(image)});
    }
  }
  for (int j = 0; j <= d; ++j) {
    std::vector<Subspace> parts;
    for (int i = 0; i <= std::min(j, d - j); ++i) parts.push_back(cells.at({i, j}).space);
    if (!is_independent(parts) || subspace_sum(parts, n) != u[j])
      throw ConsistencyError("U_j is not the direct sum of its cells (j=" + std::to_string(j) + ")");
  }
  if (!is_direct_sum(all, n)) throw ConsistencyError("cells do not decompose V");
  return cells;
}

SplitApparatus build_apparatus(const TDSystem& sys) {
  SplitApparatus app;
  app.u = split_decomposition(sys, SplitFlavor::first);
  app.udd = split_decomposition(sys, SplitFlavor::second);
  app.k_spaces = compute_K_spaces(sys, app.u, app.udd);
  app.cells = refined_decomposition(sys, app.u, app.k_spaces);
  app.k = operator_from_decomposition(app.u, weights(sys.params, false));
  app.k_inv = operator_from_decomposition(app.u, weights(sys.params, true));
  app.b = operator_from_decomposition(app.udd, weights(sys.params, false));
  app.b_inv = operator_from_decomposition(app.udd, weights(sys.params, true));
  return app;
}

Subspace mk_space(const TDSystem& sys, const SplitApparatus& app, int i) {
  std::vector<Subspace> parts;
  for (int j = i; j <= sys.d() - i; ++j) parts.push_back(app.cell(i, j).space);
  return subspace_sum(parts, sys.dim());
}

CheckResult verify_minpoly_on_MKi(const TDSystem& sys, const SplitApparatus& app, int i) {
  const int d = sys.d();
  CheckResult r{"lem.MK." + std::to_string(i), "tau_{i,d-i+1} is the minimal polynomial of A on M K_i", true,
                std::nullopt, {}};
  if (app.k_spaces.at(i).is_zero()) {
    r.detail = "K_i = 0";
    return r;
  }
  const Subspace mk = mk_space(sys, app, i);
  const Matrix killed = sys.tau(i, d - i + 1) * mk.basis();
  const Matrix top = sys.tau(i, d - i) * app.k_spaces[i].basis();
  if (!killed.is_zero()) {
    r.pass = false;
    r.residual = killed;
    r.detail = "tau_{i,d-i+1}(A) does not vanish on M K_i";
  } else if (top.is_zero()) {
    r.pass = false;
    r.detail = "tau_{i,d-i}(A) vanishes on K_i";
  }
  return r;
}

VerificationReport verify_split_structure(const TDSystem& sys, const SplitApparatus& app) {
  VerificationReport report;
  const int d = sys.d();
  const std::size_t n = sys.dim();
  const Matrix id = Matrix::identity(n);

  bool ladder = true;
  for (int i = 0; i <= d; ++i) {
    const std::size_t e = sys.eig.eigenspaces[i].dim();
    ladder = ladder && e == sys.eig_star.eigenspaces[i].dim() && e == app.u[i].dim() && e == app.udd[i].dim();
  }
  report.add("split.dims", "dim E_iV = dim E*_iV = dim U_i = dim U_i^dd", ladder);
  report.add("split.direct", "{U_i} and {U_i^dd} are decompositions of V",
             is_direct_sum(app.u, n) && is_direct_sum(app.udd, n));

  bool prefix = true;
  for (int i = 0; i <= d; ++i) prefix = prefix && prefix_sum(app.u, i, n) == prefix_sum(app.udd, i, n);
  report.add("eq.UUdd", "U_0 + ... + U_i = U_0^dd + ... + U_i^dd", prefix);

  bool a_action = true;
  bool a_dd_action = true;
  for (int i = 0; i <= d; ++i) {
    const Subspace next = i < d ? app.u[i + 1] : Subspace::zero(n);
    const Subspace prev = i > 0 ? app.u[i - 1] : Subspace::zero(n);
    a_action = a_action && next.contains((sys.a - Matrix::scalar(n, sys.theta()[i])) * app.u[i].basis()) &&
               prev.contains((sys.a_star - Matrix::scalar(n, sys.eig_star.eigenvalues[i])) * app.u[i].basis());
    const Subspace next_dd = i < d ? app.udd[i + 1] : Subspace::zero(n);
    const Subspace prev_dd = i > 0 ? app.udd[i - 1] : Subspace::zero(n);
    a_dd_action = a_dd_action &&
                  next_dd.contains((sys.a - Matrix::scalar(n, sys.theta()[d - i])) * app.udd[i].basis()) &&
                  prev_dd.contains((sys.a_star - Matrix::scalar(n, sys.eig_star.eigenvalues[i])) * app.udd[i].basis());
  }
  report.add("split.action", "(A-theta_i)U_i in U_{i+1}, (A*-theta*_i)U_i in U_{i-1}", a_action);
  report.add("split.action.dd", "(A-theta_{d-i})U_i^dd in U_{i+1}^dd, (A*-theta*_i)U_i^dd in U_{i-1}^dd",
             a_dd_action);

  Matrix k_eigen(n, 0);
  Matrix b_eigen(n, 0);
  for (int i = 0; i <= d; ++i) {
    const Matrix shift = Matrix::scalar(n, sys.params.weight(i));
    k_eigen = hcat(k_eigen, (app.k - shift) * app.u[i].basis());
    b_eigen = hcat(b_eigen, (app.b - shift) * app.udd[i].basis());
  }
  report.add_residual("def.K", "(K - q^{d-2i} I) U_i = 0", k_eigen);
  report.add_residual("def.B", "(B - q^{d-2i} I) U_i^dd = 0", b_eigen);
  report.add_residual("def.KB.inverse", "K K^{-1} = I and B B^{-1} = I",
                      hcat(app.k * app.k_inv - id, app.b * app.b_inv - id));

  bool b_on_u = true;
  bool k_on_udd = true;
  for (int i = 0; i <= d; ++i) {
    const Matrix shift = Matrix::scalar(n, sys.params.weight(i));
    b_on_u = b_on_u && prefix_sum(app.u, i - 1, n).contains((app.b - shift) * app.u[i].basis());
    k_on_udd = k_on_udd && prefix_sum(app.udd, i - 1, n).contains((app.k - shift) * app.udd[i].basis());
  }
  report.add("lem.KUdd.B", "(B - q^{d-2i} I) U_i in U_0 + ... + U_{i-1}", b_on_u);
  report.add("lem.KUdd.K", "(K - q^{d-2i} I) U_i^dd in U_0^dd + ... + U_{i-1}^dd", k_on_udd);

  bool k_def = app.k_spaces.front() == app.u.front();
  for (std::size_t i = 0; i < app.k_spaces.size(); ++i)
    k_def = k_def && app.k_spaces[i] == subspace_intersect(app.u[i], app.udd[i]);
  report.add("def.Ki", "K_0 = E*_0V = U_0 and K_i = U_i cap U_i^dd", k_def);

  bool refinement = true;
  std::vector<Subspace> all;
  for (int j = 0; j <= d; ++j) {
    std::vector<Subspace> parts;
    for (int i = 0; i <= std::min(j, d - j); ++i) parts.push_back(app.cell(i, j).space);
    refinement = refinement && is_independent(parts) && subspace_sum(parts, n) == app.u[j];
    all.insert(all.end(), parts.begin(), parts.end());
  }
  report.add("lem.refinement", "U_j is the direct sum of tau_ij(A) K_i", refinement);
  report.add("cor.Urefine", "V is the direct sum of all tau_ij(A) K_i", is_direct_sum(all, n));

  std::vector<Subspace> mk;
  bool invariant = true;
  for (int i = 0; 2 * i <= d; ++i) {
    mk.push_back(mk_space(sys, app, i));
    invariant = invariant && mk.back().contains(sys.a * mk.back().basis());
    if (!app.k_spaces[i].is_zero()) report.add(verify_minpoly_on_MKi(sys, app, i));
  }
  report.add("prop.VMKi", "V is the direct sum of the A-invariant M K_i", invariant && is_direct_sum(mk, n));
  return report;
}

}  // namespace tdlab

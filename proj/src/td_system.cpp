#include "tdlab/td_system.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"

namespace tdlab {

namespace {

// zero[j][i] is true iff E_j M E_i = 0.
using ZeroPattern = std::vector<std::vector<bool>>;

ZeroPattern sandwich_zero_pattern(const EigenData& eig, const Matrix& m) {
  const std::size_t count = eig.size();
  ZeroPattern zero(count, std::vector<bool>(count, true));
  for (std::size_t i = 0; i < count; ++i) {
    const Matrix right = m * eig.idempotents[i];
    for (std::size_t j = 0; j < count; ++j) zero[j][i] = (eig.idempotents[j] * right).is_zero();
  }
  return zero;
}

// Offending (i, j) pairs with |pos(i) - pos(j)| > 1 under `order`.
std::vector<std::pair<std::size_t, std::size_t>> tridiagonal_violations(const ZeroPattern& zero,
                                                                      std::span<const std::size_t> order) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const std::size_t count = order.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap > 1 && !zero[order[j]][order[i]]) bad.emplace_back(i, j);
    }
  return bad;
}

std::string describe_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::ostringstream os;
  os << "nonzero E_j M E_i at (i,j) =";
  for (const auto& [i, j] : pairs) os << " (" << i << "," << j << ")";
  return os.str();
}

std::vector<std::size_t> identity_order(std::size_t count) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

CheckResult tridiagonal_check(std::string id, std::string anchor, const EigenData& eig, const Matrix& m) {
  const auto bad = tridiagonal_violations(sandwich_zero_pattern(eig, m), identity_order(eig.size()));
  CheckResult r{std::move(id), std::move(anchor), bad.empty(), std::nullopt, {}};
  if (!bad.empty()) r.detail = describe_pairs(bad);
  return r;
}

// True iff no permutation other than the identity and its reversal is standard.
bool only_identity_and_reversal(const ZeroPattern& zero, std::size_t count) {
  std::vector<std::size_t> order = identity_order(count);
  std::vector<std::size_t> reversed(order.rbegin(), order.rend());
  do {
    if (tridiagonal_violations(zero, order).empty() && order != identity_order(count) && order != reversed)
      return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

}  // namespace

void QRacahParams::validate() const {
  if (d < 1) throw ParameterError("diameter d must be at least 1");
  if (q.is_zero()) throw ParameterError("q must be nonzero");
  if (a.is_zero()) throw ParameterError("a must be nonzero");
  if (b.is_zero()) throw ParameterError("b must be nonzero");
  if (tdlab::pow(q, 4) == Rational(1)) throw ParameterError("q^4 must differ from 1");
  for (int i = 1; i <= d; ++i) {
    if (tdlab::pow(q, 2L * i) == Rational(1))
      throw ParameterError("q^{2i} must differ from 1 for 1 <= i <= d (fails at i=" + std::to_string(i) + ")");
  }
  const Rational a2 = a * a;
  const Rational b2 = b * b;
  for (int e = 2 * d - 2; e >= 2 - 2 * d; e -= 2) {
    const Rational qe = tdlab::pow(q, e);
    if (a2 == qe) throw ParameterError("a^2 must not equal q^" + std::to_string(e) + " (a^2 among q^{2d-2},...,q^{2-2d})");
    if (b2 == qe) throw ParameterError("b^2 must not equal q^" + std::to_string(e) + " (b^2 among q^{2d-2},...,q^{2-2d})");
  }
}

Rational QRacahParams::weight(int i) const { return tdlab::pow(q, d - 2L * i); }

EigenSequences qracah_eigenvalues(const QRacahParams& params) {
  params.validate();
  EigenSequences out;
  const Rational a_inv = params.a.inverse();
  const Rational b_inv = params.b.inverse();
  for (int i = 0; i <= params.d; ++i) {
    const Rational up = tdlab::pow(params.q, params.d - 2L * i);
    const Rational down = tdlab::pow(params.q, 2L * i - params.d);
    out.theta.push_back(params.a * up + a_inv * down);
    out.theta_star.push_back(params.b * up + b_inv * down);
  }
  return out;
}

EigenData EigenData::reversed() const {
  EigenData r;
  r.eigenvalues.assign(eigenvalues.rbegin(), eigenvalues.rend());
  r.eigenspaces.assign(eigenspaces.rbegin(), eigenspaces.rend());
  r.idempotents.assign(idempotents.rbegin(), idempotents.rend());
  return r;
}

EigenData build_eigendata(const Matrix& m, std::span<const Rational> eigenvalues) {
  if (!m.is_square()) throw DimensionError("eigendata of a non-square matrix");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (eigenvalues[i] == eigenvalues[j]) throw ParameterError("eigenvalues must be mutually distinct");

  EigenData out;
  out.eigenvalues.assign(eigenvalues.begin(), eigenvalues.end());
  std::size_t total = 0;
  for (const auto& theta : eigenvalues) {
    out.eigenspaces.push_back(Subspace::span(kernel(m - Matrix::scalar(n, theta))));
    total += out.eigenspaces.back().dim();
  }
  bool all_present = std::all_of(out.eigenspaces.begin(), out.eigenspaces.end(),
                                 [](const Subspace& s) { return !s.is_zero(); });
  if (total != n || !all_present) {
    VerificationReport report;
    report.add("axiom.i", "diagonalizable with the given spectrum", false,
               "eigenspace dimensions sum to " + std::to_string(total) + ", ambient " + std::to_string(n));
    throw ValidationError("not diagonalizable with the given spectrum", report);
  }

  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    Matrix e = Matrix::identity(n);
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
      if (j == i) continue;
      e = e * (m - Matrix::scalar(n, eigenvalues[j])) * (eigenvalues[i] - eigenvalues[j]).inverse();
    }
    out.idempotents.push_back(std::move(e));
  }

  Matrix sum(n, n);
  for (std::size_t i = 0; i < out.size(); ++i) {
    sum += out.idempotents[i];
    if (!(m * out.idempotents[i] - out.eigenvalues[i] * out.idempotents[i]).is_zero())
      throw ConsistencyError("A E_i != theta_i E_i");
    for (std::size_t j = 0; j < out.size(); ++j) {
      const Matrix prod = out.idempotents[i] * out.idempotents[j];
      if (prod != (i == j ? out.idempotents[i] : Matrix(n, n))) throw ConsistencyError("E_i E_j != delta_ij E_i");
    }
    if (Subspace::span(out.idempotents[i]) != out.eigenspaces[i])
      throw ConsistencyError("E_i V differs from the eigenspace");
  }
  if (sum != Matrix::identity(n)) throw ConsistencyError("idempotents do not sum to I");
  return out;
}

std::size_t word_algebra_dimension(const Matrix& a, const Matrix& a_star) {
  const std::size_t n = a.rows();
  const std::size_t target = n * n;
  // Semi-echelon rows: each stored row has a 1 at its pivot, and later rows
  // were reduced against earlier ones before insertion.
  std::vector<std::pair<std::size_t, Matrix>> echelon;
  auto insert = [&](Matrix w) -> bool {
    for (const auto& [pivot, row] : echelon) {
      const Rational coef = w.entries()[pivot];
      if (!coef.is_zero()) w -= coef * row;
    }
    const long p = w.first_nonzero();
    if (p < 0) return false;
    const std::size_t pivot = static_cast<std::size_t>(p);
    w *= w.entries()[pivot].inverse();
    echelon.emplace_back(pivot, std::move(w));
    return true;
  };

  std::vector<Matrix> frontier{Matrix::identity(n)};
  insert(Matrix::identity(n));
  while (!frontier.empty() && echelon.size() < target) {
    std::vector<Matrix> next;
    for (const auto& word : frontier) {
      for (const Matrix* g : {&a, &a_star}) {
        Matrix w = *g * word;
        if (insert(w)) next.push_back(std::move(w));
        if (echelon.size() == target) return target;
      }
    }
    frontier = std::move(next);
  }
  return echelon.size();
}

VerificationReport verify_td_axioms(const Matrix& a, const Matrix& a_star, const EigenData& eig,
                                    const EigenData& eig_star) {
  if (!a.is_square() || a.rows() != a_star.rows() || !a_star.is_square())
    throw DimensionError("A and A* must be square of equal size");
  VerificationReport report;
  const std::size_t n = a.rows();
  auto dims = [](const EigenData& e) {
    std::size_t total = 0;
    for (const auto& s : e.eigenspaces) total += s.dim();
    return total;
  };
  const bool diag = dims(eig) == n && dims(eig_star) == n && eig.size() == eig_star.size();
  report.add("axiom.i", "each of A, A* is diagonalizable", diag,
             diag ? "" : "eigenspace dimensions do not sum to the ambient dimension");
  report.add(tridiagonal_check("axiom.ii", "A* V_i in V_{i-1} + V_i + V_{i+1}", eig, a_star));
  report.add(tridiagonal_check("axiom.iii", "A V*_i in V*_{i-1} + V*_i + V*_{i+1}", eig_star, a));
  const std::size_t closure = word_algebra_dimension(a, a_star);
  report.add("axiom.iv", "no proper nonzero subspace invariant under A and A*", closure == n * n,
             closure == n * n ? "" : "word closure dimension " + std::to_string(closure) + " < " + std::to_string(n * n));
  return report;
}

VerificationReport verify_td_axioms(const Matrix& a, const Matrix& a_star, std::span<const Rational> theta,
                                    std::span<const Rational> theta_star) {
  std::optional<EigenData> eig;
  std::optional<EigenData> eig_star;
  std::string why;
  try {
    eig = build_eigendata(a, theta);
    eig_star = build_eigendata(a_star, theta_star);
  } catch (const ValidationError& e) {
    why = e.what();
  }
  if (!eig || !eig_star) {
    VerificationReport report;
    report.add("axiom.i", "each of A, A* is diagonalizable", false, why);
    return report;
  }
  return verify_td_axioms(a, a_star, *eig, *eig_star);
}

CheckResult check_eigenvalue_ratios(std::span<const Rational> theta, std::span<const Rational> theta_star) {
  CheckResult r{"td.ratio", "(theta_{i-2}-theta_{i+1})/(theta_{i-1}-theta_i) constant and equal to the dual ratio",
                true, std::nullopt, {}};
  const int d = static_cast<int>(theta.size()) - 1;
  std::optional<Rational> common;
  for (int i = 2; i <= d - 1; ++i) {
    for (auto seq : {theta, theta_star}) {
      const Rational ratio = (seq[i - 2] - seq[i + 1]) / (seq[i - 1] - seq[i]);
      if (!common) {
        common = ratio;
      } else if (*common != ratio) {
        r.pass = false;
        r.detail = "ratio " + ratio.str() + " at i=" + std::to_string(i) + " differs from " + common->str();
        return r;
      }
    }
  }
  return r;
}

StandardOrderings find_standard_orderings(const Matrix& a, const Matrix& a_star, const QRacahParams& params) {
  const EigenSequences seq = qracah_eigenvalues(params);
  const EigenData eig = build_eigendata(a, seq.theta);
  const EigenData eig_star = build_eigendata(a_star, seq.theta_star);
  const std::size_t count = eig.size();

  const ZeroPattern zero = sandwich_zero_pattern(eig, a_star);
  const ZeroPattern zero_star = sandwich_zero_pattern(eig_star, a);
  VerificationReport report;
  const auto bad = tridiagonal_violations(zero, identity_order(count));
  const auto bad_star = tridiagonal_violations(zero_star, identity_order(count));
  report.add("axiom.ii", "A* V_i in V_{i-1} + V_i + V_{i+1}", bad.empty(), bad.empty() ? "" : describe_pairs(bad));
  report.add("axiom.iii", "A V*_i in V*_{i-1} + V*_i + V*_{i+1}", bad_star.empty(),
             bad_star.empty() ? "" : describe_pairs(bad_star));
  const std::size_t n = a.rows();
  const std::size_t closure = word_algebra_dimension(a, a_star);
  report.add("axiom.iv", "no proper nonzero subspace invariant under A and A*", closure == n * n,
             closure == n * n ? "" : "word algebra has dimension " + std::to_string(closure));
  if (count <= 6) {
    const bool unique = only_identity_and_reversal(zero, count);
    const bool unique_star = only_identity_and_reversal(zero_star, count);
    report.add("ordering.unique", "only the ordering and its reversal are standard", unique && unique_star,
               unique && unique_star ? "" : "a non-reversal permutation is also standard");
  }
  if (!report.all_passed()) throw ValidationError("not a TD system for these parameters", report);
  return StandardOrderings{seq.theta, seq.theta_star};
}

Matrix TDSystem::tau(int i, int j) const {
  if (j < i) return Matrix(dim(), dim());
  return eval_factored_poly(a, std::span<const Rational>(eig.eigenvalues).subspan(i, j - i));
}

TDSystem second_inversion(const TDSystem& sys) {
  TDSystem out = sys;
  out.params.a = sys.params.a.inverse();
  out.eig = sys.eig.reversed();
  return out;
}

}  // namespace tdlab

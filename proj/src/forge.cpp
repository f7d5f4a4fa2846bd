#include "tdlab/forge.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "tdlab/errors.hpp"
#include "tdlab/linalg.hpp"
#include "tdlab/serialize.hpp"

namespace tdlab {

namespace {

void check_shape(const Candidate& c, const QRacahParams& params) {
  const std::size_t n = c.a.rows();
  if (!c.a.is_square() || !c.a_star.is_square() || c.a_star.rows() != n)
    throw DimensionError("A and A* must be square matrices of equal size");
  const std::size_t steps = static_cast<std::size_t>(params.d) + 1;
  // Eigenspace dimensions are symmetric about the middle, so odd d forces even n.
  if (n < steps || (params.d % 2 == 1 && n % 2 == 1))
    throw DimensionError("matrix size " + std::to_string(n) + " is incompatible with diameter " +
                         std::to_string(params.d));
}

// Index tuples of the given width over [0, count), in order of their largest entry,
// lexicographic within a level.
template <class Visit>
bool for_each_tuple(std::size_t width, std::size_t count, Visit&& visit) {
  if (width == 0) return visit(std::vector<std::size_t>{});
  std::vector<std::size_t> idx(width);
  for (std::size_t level = 0; level < count; ++level) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      if (std::find(idx.begin(), idx.end(), level) != idx.end() && !visit(idx)) return false;
      bool exhausted = true;
      for (std::size_t pos = width; pos-- > 0;) {
        if (idx[pos] < level) {
          ++idx[pos];
          std::fill(idx.begin() + static_cast<long>(pos) + 1, idx.end(), 0);
          exhausted = false;
          break;
        }
      }
      if (exhausted) break;
    }
  }
  return true;
}

// Affine family of phi for which A* is block tridiagonal on the eigenspaces of
// the split-form A. nullopt when no phi works.
std::optional<AffineSolution> tridiagonal_phi_family(const QRacahParams& params) {
  const int d = params.d;
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  SplitFormSpec zero_spec{params, std::vector<Rational>(d, Rational(0))};
  const Candidate base = build_split_form(zero_spec);
  const EigenData eig = build_eigendata(base.a, qracah_eigenvalues(params).theta);

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((i > j ? i - j : j - i) <= 1) continue;
      const Matrix constant = eig.idempotents[j] * base.a_star * eig.idempotents[i];
      std::vector<Matrix> linear;
      for (int k = 1; k <= d; ++k) {
        Matrix unit(n, n);
        unit(k - 1, k) = 1;
        linear.push_back(eig.idempotents[j] * unit * eig.idempotents[i]);
      }
      for (std::size_t e = 0; e < n * n; ++e) {
        std::vector<Rational> row;
        for (const auto& m : linear) row.push_back(m.entries()[e]);
        rows.push_back(std::move(row));
        rhs.push_back(-constant.entries()[e]);
      }
    }
  }
  Matrix coeffs(rows.size(), static_cast<std::size_t>(d));
  Matrix b(rows.size(), 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int k = 0; k < d; ++k) coeffs(r, k) = rows[r][k];
    b(r, 0) = rhs[r];
  }
  return solve_affine(coeffs, b);
}

bool accepts(const SplitFormSpec& spec) {
  if (std::any_of(spec.phi.begin(), spec.phi.end(), [](const Rational& x) { return x.is_zero(); })) return false;
  try {
    validate(build_split_form(spec), spec.params);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace

void SplitFormSpec::validate() const {
  if (phi.size() != static_cast<std::size_t>(params.d))
    throw ParameterError("phi must have exactly d = " + std::to_string(params.d) + " entries");
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi[i].is_zero()) throw ParameterError("phi_" + std::to_string(i + 1) + " must be nonzero");
}

Candidate build_split_form(const SplitFormSpec& spec) {
  if (spec.phi.size() != static_cast<std::size_t>(spec.params.d))
    throw ParameterError("phi must have exactly d = " + std::to_string(spec.params.d) + " entries");
  const EigenSequences seq = qracah_eigenvalues(spec.params);
  const std::size_t n = seq.theta.size();
  Candidate c{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    c.a(i, i) = seq.theta[i];
    c.a_star(i, i) = seq.theta_star[i];
    if (i > 0) {
      c.a(i, i - 1) = 1;
      c.a_star(i - 1, i) = spec.phi[i - 1];
    }
  }
  return c;
}

TDSystem validate(const Candidate& candidate, const QRacahParams& params) {
  params.validate();
  check_shape(candidate, params);
  const StandardOrderings orderings = find_standard_orderings(candidate.a, candidate.a_star, params);
  TDSystem sys{params, candidate.a, candidate.a_star, build_eigendata(candidate.a, orderings.theta),
               build_eigendata(candidate.a_star, orderings.theta_star)};
  const VerificationReport axioms = verify_td_axioms(sys.a, sys.a_star, sys.eig, sys.eig_star);
  if (!axioms.all_passed()) throw ValidationError("not a tridiagonal pair", axioms);
  return sys;
}

std::vector<Rational> small_rationals(long max_numerator, long max_denominator, bool with_zero) {
  std::vector<std::tuple<long, long, long, long>> keyed;  // height, den, |num|, sign flag
  for (long den = 1; den <= max_denominator; ++den)
    for (long num = 1; num <= max_numerator; ++num)
      if (std::gcd(num, den) == 1) {
        keyed.emplace_back(std::max(num, den), den, num, 0);
        keyed.emplace_back(std::max(num, den), den, num, 1);
      }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Rational> out;
  if (with_zero) out.emplace_back(0);
  for (const auto& [h, den, num, neg] : keyed) out.emplace_back(neg ? -num : num, den);
  return out;
}

std::vector<std::vector<Rational>> search_phi(const QRacahParams& params, const SearchSpace& space) {
  params.validate();
  const int d = params.d;
  std::vector<std::vector<Rational>> found;
  auto consider = [&](std::vector<Rational> phi) {
    SplitFormSpec spec{params, std::move(phi)};
    if (accepts(spec)) found.push_back(std::move(spec.phi));
    return found.size() < space.limit;
  };

  if (space.mode == SearchMode::grid) {
    const auto values = small_rationals(space.max_numerator, space.max_denominator, false);
    for_each_tuple(static_cast<std::size_t>(d), values.size(), [&](const std::vector<std::size_t>& idx) {
      std::vector<Rational> phi;
      for (std::size_t k : idx) phi.push_back(values[k]);
      return consider(std::move(phi));
    });
  } else if (const auto family = tridiagonal_phi_family(params)) {
    const auto values = small_rationals(space.max_numerator, space.max_denominator, true);
    for_each_tuple(family->dimension(), values.size(), [&](const std::vector<std::size_t>& idx) {
      Matrix point = family->particular;
      for (std::size_t k = 0; k < idx.size(); ++k) point += values[idx[k]] * family->directions.col(k);
      std::vector<Rational> phi(point.entries().begin(), point.entries().end());
      return consider(std::move(phi));
    });
  }
  if (found.empty()) {
    VerificationReport report;
    report.add("search.phi", "some phi in the search space yields a tridiagonal pair", false);
    throw ValidationError("no instance found in search space", report);
  }
  return found;
}

TDSystem ingest(const std::filesystem::path& path) {
  const InstanceData data = parse_instance(read_file(path));
  return validate(Candidate{data.a, data.a_star}, data.params);
}

}  // namespace tdlab

#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "tdlab/td_system.hpp"

namespace tdlab {

/// Split-form data: q-Racah parameters and the superdiagonal phi_1..phi_d of A*.
struct SplitFormSpec {
  QRacahParams params;
  std::vector<Rational> phi;

  /// Throws ParameterError unless there are d nonzero entries in phi.
  void validate() const;
};

/// A matrix pair that has not been checked against the axioms yet.
struct Candidate {
  Matrix a;
  Matrix a_star;
};

/// A lower bidiagonal with diagonal theta and subdiagonal 1; A* upper
/// bidiagonal with diagonal theta* and superdiagonal phi.
Candidate build_split_form(const SplitFormSpec& spec);

/// Runs the eigenvalue, ordering and axiom checks. Throws ParameterError for
/// degenerate parameters, DimensionError for shapes that cannot carry a
/// tridiagonal pair of diameter d, and ValidationError with the failing
/// entries otherwise.
TDSystem validate(const Candidate& candidate, const QRacahParams& params);

enum class SearchMode {
  /// Solve the (linear in phi) tridiagonality of A* on the eigenspaces of A,
  /// then enumerate the free coordinates of that affine family.
  family,
  /// Enumerate phi directly.
  grid,
};

struct SearchSpace {
  long max_numerator = 4;
  long max_denominator = 2;
  std::size_t limit = 1;  // stop after this many hits
  SearchMode mode = SearchMode::family;
};

/// Rationals p/r with |p| <= max_numerator, 1 <= r <= max_denominator in
/// lowest terms, ordered 1, -1, 2, -2, 1/2, -1/2, ... by height, then
/// denominator, then |p|, positive first. Zero leads when requested.
std::vector<Rational> small_rationals(long max_numerator, long max_denominator, bool with_zero);

/// Validated phi sequences in enumeration order. Throws ParameterError for
/// degenerate params and ValidationError("no instance found in search space")
/// when nothing validates.
std::vector<std::vector<Rational>> search_phi(const QRacahParams& params, const SearchSpace& space = {});

/// Reads and validates an instance file.
TDSystem ingest(const std::filesystem::path& path);

}  // namespace tdlab

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdlab/matrix.hpp"

namespace tdlab {

struct CheckResult {
  std::string id;      // stable, e.g. "thm.BK.1"
  std::string anchor;  // the statement being checked
  bool pass = false;
  std::optional<Matrix> residual;  // left side minus right side, on failure
  std::string detail;              // free-form witness on failure
};

class VerificationReport {
 public:
  void add(CheckResult r) { entries_.push_back(std::move(r)); }
  void add(std::string id, std::string anchor, bool pass, std::string detail = {});
  /// Passes iff residual is zero; the residual is kept as witness otherwise.
  void add_residual(std::string id, std::string anchor, const Matrix& residual);
  void append(const VerificationReport& other);

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const std::vector<CheckResult>& entries() const { return entries_; }
  [[nodiscard]] const CheckResult* find(const std::string& id) const;
  [[nodiscard]] std::vector<std::string> failures() const;

 private:
  std::vector<CheckResult> entries_;
};

/// Which checks to run: everything, nothing, or a list of names where a name
/// matches its own id and every id it prefixes up to a dot ("thm.BK" selects
/// "thm.BK.1" but not "thm.BKx").
class Selection {
 public:
  static Selection all() { return Selection(true, {}); }
  static Selection none() { return Selection(false, {}); }
  static Selection of(std::vector<std::string> names);
  /// Comma-separated names; "all" anywhere selects everything, "" selects nothing.
  static Selection parse(std::string_view csv);

  [[nodiscard]] bool includes(std::string_view id) const;
  [[nodiscard]] bool is_all() const { return all_; }

 private:
  Selection(bool all, std::vector<std::string> names) : all_(all), names_(std::move(names)) {}
  bool all_;
  std::vector<std::string> names_;
};

}  // namespace tdlab

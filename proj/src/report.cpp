#include "tdlab/report.hpp"

#include <algorithm>

namespace tdlab {

void VerificationReport::add(std::string id, std::string anchor, bool pass, std::string detail) {
  entries_.push_back(CheckResult{std::move(id), std::move(anchor), pass, std::nullopt, std::move(detail)});
}

void VerificationReport::add_residual(std::string id, std::string anchor, const Matrix& residual) {
  CheckResult r{std::move(id), std::move(anchor), residual.is_zero(), std::nullopt, {}};
  if (!r.pass) r.residual = residual;
  entries_.push_back(std::move(r));
}

void VerificationReport::append(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool VerificationReport::all_passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CheckResult& r) { return r.pass; });
}

const CheckResult* VerificationReport::find(const std::string& id) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const CheckResult& r) { return r.id == id; });
  return it == entries_.end() ? nullptr : &*it;
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& r : entries_)
    if (!r.pass) out.push_back(r.id);
  return out;
}

Selection Selection::of(std::vector<std::string> names) {
  if (std::find(names.begin(), names.end(), "all") != names.end()) return all();
  return Selection(false, std::move(names));
}

Selection Selection::parse(std::string_view csv) {
  std::vector<std::string> names;
  while (!csv.empty()) {
    const auto comma = csv.find(',');
    std::string_view name = csv.substr(0, comma);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) names.emplace_back(name);
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return of(std::move(names));
}

bool Selection::includes(std::string_view id) const {
  if (all_) return true;
  return std::any_of(names_.begin(), names_.end(), [&](const std::string& name) {
    return id == name || (id.size() > name.size() && id.starts_with(name) && id[name.size()] == '.');
  });
}

}  // namespace tdlab

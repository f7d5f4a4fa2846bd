#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tdlab/operators.hpp"
#include "tdlab/report.hpp"
#include "tdlab/split.hpp"
#include "tdlab/td_system.hpp"

namespace tdlab {

using Json = nlohmann::ordered_json;

/// Two-space indented JSON with each array of scalars on one line, plus a
/// trailing newline.
std::string pretty(const Json& j);

Json to_json(const Matrix& m);
/// Row-major array of rational strings. Throws ParseError on anything else.
Matrix matrix_from_json(const Json& j);

/// A subspace as its canonical basis (columns are basis vectors).
Json to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, std::size_t ambient_dim);

/// Parameters and matrices as stored in an instance file, before validation.
struct InstanceData {
  QRacahParams params;
  Matrix a;
  Matrix a_star;
};

/// Throws ParseError on malformed JSON, missing fields or bad rationals.
InstanceData parse_instance(std::string_view text);
/// Canonical formatting: fixed key order, two-space indent, trailing newline.
std::string format_instance(const InstanceData& data);
std::string format_instance(const TDSystem& sys);

Json apparatus_json(const SplitApparatus& app);
Json operators_json(const SplitApparatus& app, const OperatorSet& ops);

Json to_json(const CheckResult& r);
/// One JSON record per line, in report order.
std::string format_report(const VerificationReport& report);

/// Throws IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace tdlab

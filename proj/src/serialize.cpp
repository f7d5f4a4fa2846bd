#include "tdlab/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tdlab/errors.hpp"

namespace tdlab {

namespace {

Rational rational_from_json(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a rational string");
  return Rational::parse(j.get<std::string>());
}

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

void pretty_into(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      pretty_into(value, indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty() &&
             std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      pretty_into(j[i], indent + 2, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i > 0 ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty(const Json& j) {
  std::string out;
  pretty_into(j, 0, out);
  return out + "\n";
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c], "matrix entry");
  }
  return m;
}

Json to_json(const Subspace& s) { return to_json(s.basis()); }

Subspace subspace_from_json(const Json& j, std::size_t ambient_dim) {
  const Matrix basis = matrix_from_json(j);
  if (basis.rows() == 0) return Subspace::zero(ambient_dim);
  if (basis.rows() != ambient_dim) throw DimensionError("basis length differs from ambient dimension");
  return Subspace::span(basis);
}

InstanceData parse_instance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  InstanceData data;
  const Json& d = field(j, "d");
  if (d.is_number_integer()) {
    data.params.d = d.get<int>();
  } else if (d.is_string()) {
    const Rational r = Rational::parse(d.get<std::string>());
    if (r.raw().get_den() != 1 || !r.raw().get_num().fits_sint_p()) throw ParseError("d must be an integer");
    data.params.d = static_cast<int>(r.raw().get_num().get_si());
  } else {
    throw ParseError("d must be an integer");
  }
  data.params.q = rational_from_json(field(j, "q"), "q");
  data.params.a = rational_from_json(field(j, "a"), "a");
  data.params.b = rational_from_json(field(j, "b"), "b");
  data.a = matrix_from_json(field(j, "A"));
  data.a_star = matrix_from_json(field(j, "Astar"));
  return data;
}

std::string format_instance(const InstanceData& data) {
  Json j;
  j["d"] = data.params.d;
  j["q"] = data.params.q.str();
  j["a"] = data.params.a.str();
  j["b"] = data.params.b.str();
  j["A"] = to_json(data.a);
  j["Astar"] = to_json(data.a_star);
  return pretty(j);
}

std::string format_instance(const TDSystem& sys) { return format_instance(InstanceData{sys.params, sys.a, sys.a_star}); }

Json apparatus_json(const SplitApparatus& app) {
  Json j;
  auto list = [](const std::vector<Subspace>& parts) {
    Json arr = Json::array();
    for (const auto& p : parts) arr.push_back(to_json(p));
    return arr;
  };
  j["U"] = list(app.u);
  j["Udd"] = list(app.udd);
  j["Kspaces"] = list(app.k_spaces);
  Json cells = Json::array();
  for (const auto& [key, cell] : app.cells) {
    Json c;
    c["i"] = key.first;
    c["j"] = key.second;
    c["basis"] = to_json(cell.space);
    c["image"] = to_json(cell.image);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  j["K"] = to_json(app.k);
  j["B"] = to_json(app.b);
  return j;
}

Json operators_json(const SplitApparatus& app, const OperatorSet& ops) {
  Json j;
  j["K"] = to_json(app.k);
  j["B"] = to_json(app.b);
  j["R"] = to_json(ops.r);
  j["Rdd"] = to_json(ops.r_dd);
  j["psi"] = to_json(ops.psi);
  j["Lambda"] = to_json(ops.lambda);
  return j;
}

Json to_json(const CheckResult& r) {
  Json j;
  j["check_id"] = r.id;
  j["anchor"] = r.anchor;
  j["pass"] = r.pass;
  if (r.residual) j["residual"] = to_json(*r.residual);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

std::string format_report(const VerificationReport& report) {
  std::string out;
  for (const auto& r : report.entries()) out += to_json(r).dump() + "\n";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace tdlab

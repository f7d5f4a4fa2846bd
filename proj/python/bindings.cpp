#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "tdlab/errors.hpp"
#include "tdlab/forge.hpp"
#include "tdlab/operators.hpp"
#include "tdlab/serialize.hpp"
#include "tdlab/split.hpp"
#include "tdlab/uqsl2.hpp"
#include "tdlab/verify.hpp"

namespace py = pybind11;
using namespace tdlab;

namespace {

TDSystem load(const std::string& text) {
  const InstanceData data = parse_instance(text);
  return validate(Candidate{data.a, data.a_star}, data.params);
}

QRacahParams params_of(int d, const std::string& q, const std::string& a, const std::string& b) {
  QRacahParams params{d, Rational::parse(q), Rational::parse(a), Rational::parse(b)};
  params.validate();
  return params;
}

std::string generate(int d, const std::string& q, const std::string& a, const std::string& b,
                     const std::optional<std::vector<std::string>>& phi) {
  const QRacahParams params = params_of(d, q, a, b);
  std::vector<Rational> values;
  if (phi) {
    for (const auto& p : *phi) values.push_back(Rational::parse(p));
  } else if (d == 1) {
    values = {Rational(1)};
  } else {
    values = search_phi(params).front();
  }
  const SplitFormSpec spec{params, values};
  spec.validate();
  return format_instance(validate(build_split_form(spec), params));
}

std::vector<std::vector<std::string>> search(int d, const std::string& q, const std::string& a, const std::string& b,
                                             std::size_t limit) {
  SearchSpace space;
  space.limit = limit;
  std::vector<std::vector<std::string>> out;
  for (const auto& phi : search_phi(params_of(d, q, a, b), space)) {
    std::vector<std::string> row;
    for (const auto& p : phi) row.push_back(p.str());
    out.push_back(std::move(row));
  }
  return out;
}

std::string verify(const std::string& text, const std::string& suite) {
  return format_report(run_all_checks(load(text), Selection::parse(suite)));
}

std::string decompose(const std::string& text) {
  const TDSystem sys = load(text);
  const SplitApparatus app = build_apparatus(sys);
  const OperatorSet ops = build_operators(sys, app);
  Json out = Json::array();
  for (const auto& c : decompose_into_components(sys, app, first_structure(sys, app, ops), SplitFlavor::first).components) {
    Json j;
    j["i"] = c.i;
    j["dim_K"] = app.k_spaces[c.i].dim();
    j["label"] = c.label();
    j["multiplicity"] = c.multiplicity;
    j["casimir"] = c.casimir.str();
    out.push_back(std::move(j));
  }
  return out.dump();
}

std::string export_json(const std::string& text, const std::string& what) {
  const TDSystem sys = load(text);
  const SplitApparatus app = build_apparatus(sys);
  if (what == "apparatus") return apparatus_json(app).dump();
  if (what == "operators") return operators_json(app, build_operators(sys, app)).dump();
  throw ParameterError("what must be 'operators' or 'apparatus'");
}

std::string canonical(const std::string& text) { return format_instance(load(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact tridiagonal systems of q-Racah type";

  static py::exception<Error> error(m, "Error");
  static py::exception<ParameterError> parameter_error(m, "ParameterError", error.ptr());
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<DimensionError> dimension_error(m, "DimensionError", error.ptr());
  static py::exception<ConsistencyError> consistency_error(m, "ConsistencyError", error.ptr());
  static py::exception<ValidationError> validation_error(m, "ValidationError", error.ptr());
  static py::exception<IoError> io_error(m, "IoError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      py::set_error(parameter_error, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const DimensionError& e) {
      py::set_error(dimension_error, e.what());
    } catch (const ConsistencyError& e) {
      py::set_error(consistency_error, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const IoError& e) {
      py::set_error(io_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("generate", &generate, py::arg("d") = 1, py::arg("q") = "2", py::arg("a") = "3", py::arg("b") = "5",
        py::arg("phi") = std::nullopt, "Canonical instance text for a validated split-form system.");
  m.def("search_phi", &search, py::arg("d"), py::arg("q") = "2", py::arg("a") = "3", py::arg("b") = "5",
        py::arg("limit") = 1, "Validated phi sequences as rational strings.");
  m.def("verify", &verify, py::arg("instance"), py::arg("suite") = "all", "Report as JSON lines.");
  m.def("decompose", &decompose, py::arg("instance"), "Homogeneous components as a JSON array.");
  m.def("export", &export_json, py::arg("instance"), py::arg("what") = "operators",
        "Operators or the split apparatus as a JSON object.");
  m.def("canonical", &canonical, py::arg("instance"), "Validates and reformats instance text.");
}

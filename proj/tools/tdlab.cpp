// Command-line front end: generate, verify, decompose, export.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input or parameters,
// 3 I/O error.

#include <CLI11.hpp>

#include <iostream>
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

namespace {

using namespace tdlab;

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

void emit(const std::optional<std::string>& out, const std::string& content) {
  if (out) {
    write_file(*out, content);
  } else {
    std::cout << content << std::flush;
  }
}

std::vector<Rational> parse_list(const std::string& csv) {
  std::vector<Rational> values;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) values.push_back(Rational::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

struct GenerateArgs {
  int d = 1;
  std::string q = "2";
  std::string a = "3";
  std::string b = "5";
  std::optional<std::string> phi;
  std::optional<std::string> out;
};

int run_generate(const GenerateArgs& args) {
  QRacahParams params{args.d, Rational::parse(args.q), Rational::parse(args.a), Rational::parse(args.b)};
  params.validate();
  std::vector<Rational> phi;
  if (args.phi) {
    phi = parse_list(*args.phi);
  } else if (params.d == 1) {
    phi = {Rational(1)};
  } else {
    phi = search_phi(params).front();
  }
  const SplitFormSpec spec{params, phi};
  spec.validate();
  const TDSystem sys = validate(build_split_form(spec), params);
  emit(args.out, format_instance(sys));
  return 0;
}

int run_verify(const std::string& instance, const std::string& suite, const std::optional<std::string>& out) {
  const TDSystem sys = ingest(instance);
  const VerificationReport report = run_all_checks(sys, Selection::parse(suite));
  emit(out, format_report(report));
  return report.all_passed() ? 0 : kExitCheckFailed;
}

int run_decompose(const std::string& instance, const std::optional<std::string>& out) {
  const TDSystem sys = ingest(instance);
  const SplitApparatus app = build_apparatus(sys);
  const OperatorSet ops = build_operators(sys, app);
  const ModuleDecomposition dec =
      decompose_into_components(sys, app, first_structure(sys, app, ops), SplitFlavor::first);
  std::string text;
  for (const auto& c : dec.components) {
    Json j;
    j["i"] = c.i;
    j["dim_K"] = app.k_spaces[c.i].dim();
    j["label"] = c.label();
    j["multiplicity"] = c.multiplicity;
    j["casimir"] = c.casimir.str();
    text += j.dump() + "\n";
  }
  emit(out, text);
  return 0;
}

int run_export(const std::string& instance, const std::string& what, const std::optional<std::string>& out) {
  const TDSystem sys = ingest(instance);
  const SplitApparatus app = build_apparatus(sys);
  const Json j = what == "apparatus" ? apparatus_json(app) : operators_json(app, build_operators(sys, app));
  emit(out, pretty(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tridiagonal systems of q-Racah type: generate, verify, decompose, export"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a validated split-form instance");
  generate->add_option("--d", gen.d, "diameter")->capture_default_str();
  generate->add_option("--q", gen.q, "q (rational)")->capture_default_str();
  generate->add_option("--a", gen.a, "a (rational)")->capture_default_str();
  generate->add_option("--b", gen.b, "b (rational)")->capture_default_str();
  generate->add_option("--phi", gen.phi, "phi_1,...,phi_d (rationals); searched when omitted for d >= 2");
  generate->add_option("--out", gen.out, "output path (stdout when omitted)");

  std::string instance;
  std::string suite = "all";
  std::string what = "operators";
  std::optional<std::string> out;

  auto* verify = app.add_subcommand("verify", "run checks, one JSON record per line");
  verify->add_option("--instance", instance, "instance file")->required();
  verify->add_option("--suite", suite, "check ids or groups, comma separated, or 'all'")->capture_default_str();
  verify->add_option("--out", out, "report path (stdout when omitted)");

  auto* decompose = app.add_subcommand("decompose", "list the homogeneous components");
  decompose->add_option("--instance", instance, "instance file")->required();
  decompose->add_option("--out", out, "report path (stdout when omitted)");

  auto* exporter = app.add_subcommand("export", "write operators or the split apparatus");
  exporter->add_option("--instance", instance, "instance file")->required();
  exporter->add_option("--what", what, "operators or apparatus")
      ->check(CLI::IsMember({"operators", "apparatus"}))
      ->capture_default_str();
  exporter->add_option("--out", out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*verify) return run_verify(instance, suite, out);
    if (*decompose) return run_decompose(instance, out);
    return run_export(instance, what, out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& r : e.report().entries())
      if (!r.pass) std::cerr << "  " << r.id << ": " << r.anchor << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
    return kExitInvalid;
  } catch (const ConsistencyError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

#pragma once

#include <string>

#include "tdlab/forge.hpp"
#include "tdlab/rational.hpp"

namespace tdlab::testing {

inline std::string data_path(const std::string& name) { return std::string(TDLAB_DATA_DIR) + "/" + name; }

inline TDSystem load(const std::string& name) { return ingest(data_path(name + ".json")); }

inline Rational r(const char* text) { return Rational::parse(text); }

inline TDSystem w1() {
  const QRacahParams params{1, 2, 3, 5};
  return validate(build_split_form(SplitFormSpec{params, {1}}), params);
}

}  // namespace tdlab::testing

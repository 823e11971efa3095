// Copyright 2026 The geomeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geomeas/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "geomeas/errors.hpp"
#include "geomeas/families.hpp"

namespace geomeas::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token) {
  token = trim(token);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw InputError("bad number '" + std::string(token) + "'");
  }
  return value;
}

json qubit_json(const SingleQubitState& q) {
  return json::array({json::array({q.a0.real(), q.a0.imag()}), json::array({q.a1.real(), q.a1.imag()})});
}

PureState3 checked_norm(const PureState3& s, bool strict) {
  if (strict) {
    require_normalized(s);
    return s;
  }
  return normalize(s);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

PureState3 parse_state_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("amps") || !doc["amps"].is_array() || doc["amps"].size() != 8) {
    throw InputError("state file must be {\"amps\": [[re, im] x 8]}");
  }
  PureState3 s;
  for (std::size_t i = 0; i < 8; ++i) {
    const json& a = doc["amps"][i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw InputError("amplitude " + std::to_string(i) + " must be [re, im]");
    }
    s.amp[i] = cplx{a[0].get<double>(), a[1].get<double>()};
  }
  return s;
}

std::string state_to_json(const PureState3& state) {
  json amps = json::array();
  for (const auto& a : state.amp) amps.push_back(json::array({a.real(), a.imag()}));
  return json{{"amps", amps}}.dump();
}

bool looks_like_family_literal(std::string_view text) noexcept {
  text = trim(text);
  if (text == "W" || text == "GHZ" || text == "Wtilde") return true;
  for (std::string_view name : {"wtype(", "symmetric(", "ww("}) {
    if (text.starts_with(name)) return true;
  }
  return false;
}

PureState3 parse_family_literal(std::string_view literal, bool strict) {
  literal = trim(literal);
  if (literal == "W") return w_state();
  if (literal == "GHZ") return ghz_state();
  if (literal == "Wtilde") return wtilde_state();

  const auto open = literal.find('(');
  if (open == std::string_view::npos || literal.back() != ')') {
    throw InputError("unrecognized family literal '" + std::string(literal) + "'");
  }
  const Family family = family_from_string(literal.substr(0, open));
  std::string_view body = literal.substr(open + 1, literal.size() - open - 2);
  std::vector<double> params;
  while (true) {
    const auto comma = body.find(',');
    params.push_back(parse_number(body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (params.size() != family_param_names(family).size()) {
    throw InputError(std::string(to_string(family)) + " takes " +
                     std::to_string(family_param_names(family).size()) + " arguments");
  }
  if (family == Family::ww) return ww_state(params[0]);

  PureState3 raw;
  if (family == Family::wtype) {
    if (params[0] < 0.0 || params[1] < 0.0 || params[2] < 0.0) {
      throw InputError("wtype coefficients must be non-negative");
    }
    raw.amp[PureState3::index(1, 0, 0)] = params[0];
    raw.amp[PureState3::index(0, 1, 0)] = params[1];
    raw.amp[PureState3::index(0, 0, 1)] = params[2];
  } else {
    raw.amp[PureState3::index(0, 0, 0)] = params[0];
    raw.amp[PureState3::index(1, 1, 1)] = params[1];
    raw.amp[PureState3::index(0, 0, 1)] = params[2];
    raw.amp[PureState3::index(1, 1, 0)] = params[3];
  }
  return checked_norm(raw, strict);
}

PureState3 load_state(std::string_view input, bool strict) {
  if (looks_like_family_literal(input)) return parse_family_literal(input, strict);
  std::ifstream file{std::string(input)};
  if (!file) throw InputError("cannot open '" + std::string(input) + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  return checked_norm(parse_state_json(buf.str()), strict);
}

std::string measure_result_json(const MeasureResult& r, int indent) {
  json nearest = json::array();
  for (const auto& p : r.nearest) {
    nearest.push_back({{"q1", qubit_json(p.q1)}, {"q2", qubit_json(p.q2)}, {"q3", qubit_json(p.q3)}});
  }
  json family = nullptr;
  if (r.family_param) {
    const auto& f = *r.family_param;
    family = {{"axis", {f.axis.x(), f.axis.y(), f.axis.z()}},
              {"azimuth_start", f.azimuth_start},
              {"azimuth_stop", f.azimuth_stop},
              {"samples", f.samples}};
  }
  const json doc = {{"lambda_sq", r.lambda_sq},
                    {"e_g", r.e_g},
                    {"method", to_string(r.method)},
                    {"degenerate", r.degenerate},
                    {"disagreement", r.disagreement},
                    {"fallback", r.fallback},
                    {"family_param", family},
                    {"nearest", nearest}};
  return doc.dump(indent);
}

}  // namespace geomeas::io

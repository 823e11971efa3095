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

#include "geomeas/families.hpp"

#include <array>
#include <cmath>
#include <string>

#include "geomeas/errors.hpp"

namespace geomeas {

PureState3 w_state() { return wtype_state(1.0, 1.0, 1.0); }

PureState3 wtilde_state() {
  PureState3 s;
  const double v = 1.0 / std::sqrt(3.0);
  s.amp[PureState3::index(0, 1, 1)] = v;
  s.amp[PureState3::index(1, 0, 1)] = v;
  s.amp[PureState3::index(1, 1, 0)] = v;
  return s;
}

PureState3 ghz_state() { return symmetric_state(1.0, 1.0, 0.0, 0.0); }

PureState3 wtype_state(double a, double b, double c) {
  PureState3 s;
  s.amp[PureState3::index(1, 0, 0)] = a;
  s.amp[PureState3::index(0, 1, 0)] = b;
  s.amp[PureState3::index(0, 0, 1)] = c;
  return normalize(s);
}

PureState3 symmetric_state(double a, double b, double c, double d) {
  PureState3 s;
  s.amp[PureState3::index(0, 0, 0)] = a;
  s.amp[PureState3::index(1, 1, 1)] = b;
  s.amp[PureState3::index(0, 0, 1)] = c;
  s.amp[PureState3::index(1, 1, 0)] = d;
  return normalize(s);
}

PureState3 ww_state(double theta) {
  const double w = std::cos(theta) / std::sqrt(3.0);
  const double wt = std::sin(theta) / std::sqrt(3.0);
  PureState3 s;
  s.amp[PureState3::index(1, 0, 0)] = w;
  s.amp[PureState3::index(0, 1, 0)] = w;
  s.amp[PureState3::index(0, 0, 1)] = w;
  s.amp[PureState3::index(0, 1, 1)] = wt;
  s.amp[PureState3::index(1, 0, 1)] = wt;
  s.amp[PureState3::index(1, 1, 0)] = wt;
  return s;
}

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::wtype: return "wtype";
    case Family::symmetric: return "symmetric";
    case Family::ww: return "ww";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  if (name == "wtype") return Family::wtype;
  if (name == "symmetric") return Family::symmetric;
  if (name == "ww") return Family::ww;
  throw InputError("unknown family '" + std::string(name) + "'");
}

std::span<const std::string_view> family_param_names(Family family) noexcept {
  static constexpr std::array<std::string_view, 3> wtype{"a", "b", "c"};
  static constexpr std::array<std::string_view, 4> symmetric{"a", "b", "c", "d"};
  static constexpr std::array<std::string_view, 1> ww{"theta"};
  switch (family) {
    case Family::wtype: return wtype;
    case Family::symmetric: return symmetric;
    case Family::ww: return ww;
  }
  return {};
}

PureState3 make_family_state(Family family, std::span<const double> params) {
  if (params.size() != family_param_names(family).size()) {
    throw InputError(std::string(to_string(family)) + " expects " +
                     std::to_string(family_param_names(family).size()) + " parameters");
  }
  switch (family) {
    case Family::wtype:
      if (params[0] < 0.0 || params[1] < 0.0 || params[2] < 0.0) {
        throw InputError("wtype coefficients must be non-negative");
      }
      return wtype_state(params[0], params[1], params[2]);
    case Family::symmetric:
      return symmetric_state(params[0], params[1], params[2], params[3]);
    case Family::ww:
      return ww_state(params[0]);
  }
  throw InputError("unknown family");
}

}  // namespace geomeas

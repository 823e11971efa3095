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

#pragma once

#include <string>
#include <string_view>

#include "geomeas/nearest.hpp"
#include "geomeas/state.hpp"

namespace geomeas::io {

/// Shortest representation that round-trips, '.' decimal separator.
std::string format_double(double x);

/// {"amps": [[re, im] x 8]}, index 4*q1 + 2*q2 + q3. Throws InputError when malformed.
PureState3 parse_state_json(std::string_view text);
std::string state_to_json(const PureState3& state);

/// W, GHZ, Wtilde, wtype(a,b,c), symmetric(a,b,c,d), ww(theta). Coefficients are
/// normalized unless `strict`, in which case a norm off by more than 1e-12 raises
/// StateError. Throws InputError on a malformed literal.
PureState3 parse_family_literal(std::string_view literal, bool strict);
bool looks_like_family_literal(std::string_view text) noexcept;

/// A family literal, or else the path of a state JSON file.
PureState3 load_state(std::string_view input, bool strict);

/// Serialized MeasureResult; see schema/measure_result.schema.json.
std::string measure_result_json(const MeasureResult& r, int indent = 2);

}  // namespace geomeas::io

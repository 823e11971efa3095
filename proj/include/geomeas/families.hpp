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

#include <span>
#include <string_view>
#include <vector>

#include "geomeas/state.hpp"

namespace geomeas {

/// (|100> + |010> + |001>) / sqrt(3)
PureState3 w_state();
/// (|011> + |101> + |110>) / sqrt(3)
PureState3 wtilde_state();
/// (|000> + |111>) / sqrt(2)
PureState3 ghz_state();

// The constructors below normalize their coefficients; an all-zero input throws StateError.

/// a|100> + b|010> + c|001>
PureState3 wtype_state(double a, double b, double c);
/// a|000> + b|111> + c|001> + d|110>
PureState3 symmetric_state(double a, double b, double c, double d);
/// cos(theta)|W> + sin(theta)|Wtilde>
PureState3 ww_state(double theta);

/// Parameterized families that admit closed-form answers.
enum class Family { wtype, symmetric, ww };

const char* to_string(Family family) noexcept;
/// Throws InputError on an unknown name.
Family family_from_string(std::string_view name);
/// Parameter names in constructor order: {a,b,c}, {a,b,c,d} or {theta}.
std::span<const std::string_view> family_param_names(Family family) noexcept;

/// Builds the family member for `params` (size must match family_param_names).
PureState3 make_family_state(Family family, std::span<const double> params);

}  // namespace geomeas

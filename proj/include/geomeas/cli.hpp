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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geomeas/families.hpp"
#include "geomeas/nearest.hpp"

namespace geomeas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitState = 3;
inline constexpr int kExitValidation = 4;

enum class Format { json, csv, table };

Format format_from_string(std::string_view name);

struct Options {
  Policy policy = Policy::automatic;
  Format format = Format::json;
  std::string out;             // empty: write to the given stream
  std::uint64_t seed = 0x5EED; // oracle restarts and random sweep draws
  int samples = 0;             // sweep: random draws instead of the grid when > 0
  int family_samples = 12;     // azimuth samples of a degenerate nearest-state family
  bool strict = false;
  double check_tol = kMethodAgreeTol;
};

/// One sweep axis: "name=value", "name=start:stop:steps" (steps >= 2), or "name=rest"
/// (sqrt(1 - sum of squares of the other coefficients)).
struct ParamSpec {
  enum class Kind { fixed, range, rest };
  std::string name;
  Kind kind = Kind::fixed;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

ParamSpec parse_param_spec(std::string_view text);

struct SweepSpec {
  Family family = Family::ww;
  std::vector<ParamSpec> params;
};

/// Normalized parameter vectors in output order (grid, first axis outermost, or seeded
/// random draws). Throws InputError on invalid ranges.
std::vector<std::vector<double>> sweep_samples(const SweepSpec& spec, const Options& opts);

int cmd_compute(const std::string& input, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepSpec& spec, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& input, const Options& opts, std::ostream& out, std::ostream& err);

/// Full command line: `compute`, `sweep`, `check`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geomeas::cli

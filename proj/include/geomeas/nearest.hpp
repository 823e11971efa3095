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

#include <optional>
#include <string_view>
#include <vector>

#include "geomeas/oracle.hpp"
#include "geomeas/state.hpp"

namespace geomeas {

enum class Method { analytic_wtype, analytic_symmetric, analytic_ww, stationary, oracle };
enum class Policy { automatic, analytic_only, stationary, oracle };

const char* to_string(Method m) noexcept;
const char* to_string(Policy p) noexcept;
/// Accepts auto, analytic, stationary, oracle. Throws InputError otherwise.
Policy policy_from_string(std::string_view name);

/// One-parameter set of nearest product states: Bloch vectors of qubits A and B rotate
/// about `axis` by the azimuth, which is sampled uniformly over [azimuth_start, azimuth_stop).
struct FamilyParam {
  Vec3 axis = Vec3::UnitZ();
  double azimuth_start = 0.0;
  double azimuth_stop = 0.0;
  int samples = 0;
};

struct MeasureResult {
  double lambda_sq = 0.0;
  double e_g = 1.0;
  std::vector<ProductState> nearest;
  std::optional<FamilyParam> family_param;
  Method method = Method::oracle;
  bool degenerate = false;
  /// Stationary and oracle values differed by more than 1e-6; the oracle value was kept.
  bool disagreement = false;
  /// The stationarity solver failed and the oracle answered instead.
  bool fallback = false;
};

struct MeasureOptions {
  int family_samples = 12;
  int stationary_starts = 8;
  OracleConfig oracle;
};

inline constexpr double kMethodAgreeTol = 1e-6;

/// Normalized contraction <q1 q2|psi>, phase fixed by its Bloch vector. Throws
/// OrthogonalPair when the contraction norm is below 1e-14.
SingleQubitState third_qubit(const PureState3& state, const SingleQubitState& q1,
                             const SingleQubitState& q2);

/// Product state from Bloch vectors of qubits A and B plus the optimal third factor.
ProductState assemble_nearest(const PureState3& state, const BlochVector& s1, const BlochVector& s2);

/// Entanglement eigenvalue, geometric measure and nearest product state(s). The state
/// must be normalized (StateError otherwise). `analytic_only` throws InputError for
/// states outside the solved families.
MeasureResult measure(const PureState3& state, Policy policy, const MeasureOptions& opts = {});

}  // namespace geomeas

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
#include <span>
#include <vector>

#include "geomeas/families.hpp"
#include "geomeas/state.hpp"

namespace geomeas {

struct OracleConfig {
  int coarse_grid = 24;        // points per angle on each of the two Bloch spheres
  int refine_iters = 200;      // alternating sweeps per refined start
  int restarts = 32;           // random product-state starts
  double tol = 1e-12;          // stop when a sweep improves the overlap by less than this
  std::uint64_t seed = 0x5EED;
  int refine_cells = 4;        // best grid cells handed to the alternating refinement
  int polish_iters = 100000;   // sweep cap when finishing the best refined start

  void validate() const;
};

struct OracleResult {
  double lambda_sq = 0.0;
  ProductState prod;
  /// Some refined start ended more than 1e-9 below the best value.
  bool multimodal = false;
};

/// max over q3 of |<q1 q2 q3|psi>|^2, i.e. the nonzero eigenvalue of the projected
/// third-qubit matrix; equal to |<q1 q2|psi>|^2.
double eliminate_third(const PureState3& state, const SingleQubitState& q1,
                       const SingleQubitState& q2) noexcept;

/// Cyclic A -> B -> C single-qubit updates, each replacing one factor by the normalized
/// contraction of the state with the other two. Returns the refined product state;
/// `history`, when given, receives the overlap after every update. Throws InternalError
/// if an update lowers the overlap by more than 1e-13.
ProductState refine_alternating(const PureState3& state, ProductState start,
                                const OracleConfig& cfg, std::vector<double>* history = nullptr);

/// Coarse grid over the first two Bloch spheres with the third qubit eliminated exactly,
/// then alternating refinement of the best cells and of seeded random restarts.
OracleResult oracle_maximize(const PureState3& state, const OracleConfig& cfg = {});

struct FamilySample {
  std::vector<double> params;
  double lambda_sq = 0.0;
};

/// Oracle value for each parameter vector of `family`, in input order.
std::vector<FamilySample> oracle_scan_family(Family family,
                                             std::span<const std::vector<double>> params,
                                             const OracleConfig& cfg = {});

}  // namespace geomeas

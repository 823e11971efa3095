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

#include <vector>

#include "geomeas/state.hpp"

namespace geomeas {

/// Multipliers enforcing |s1| = |s2| = 1 in
///   r1 + g s2 = lambda1 s1,   r2 + g^T s1 = lambda2 s2.
struct LagrangePair {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct StationaryPoint {
  BlochVector s1 = BlochVector::UnitZ();
  BlochVector s2 = BlochVector::UnitZ();
  LagrangePair lagrange;
  double value = 0.0;
  bool degenerate = false;
};

/// Candidate vectors from the closed-form solution for given multipliers. They are
/// unit only at a root of the norm equations. `degenerate` is set (and the vectors
/// left zero) when lambda1*lambda2*I - g g^T is singular.
struct ClosedFormCandidates {
  Vec3 s1 = Vec3::Zero();
  Vec3 s2 = Vec3::Zero();
  bool degenerate = false;
};

ClosedFormCandidates closed_form_s(const PairReduction& red, const LagrangePair& lag);

/// |det(lambda1*lambda2*I - g g^T)| < 1e-9 * max(1, |g|_F^2).
bool detect_degenerate(const PairReduction& red, const LagrangePair& lag);

/// Multipliers implied by a pair of unit vectors: lambda1 = s1.(r1 + g s2), lambda2 = s2.(r2 + g^T s1).
LagrangePair multipliers_at(const PairReduction& red, const Vec3& s1, const Vec3& s2);

/// |r1 + g s2 - lambda1 s1| + |r2 + g^T s1 - lambda2 s2|
double stationarity_residual(const PairReduction& red, const StationaryPoint& p);

inline constexpr double kStationaryResidualTol = 1e-10;
inline constexpr double kDedupTol = 1e-7;
inline constexpr double kStartsAgreeTol = 1e-8;

struct StationarySolve {
  /// Distinct stationary points, value descending.
  std::vector<StationaryPoint> points;
  /// Best value reached from the multiplier grid differs from the overall best by more
  /// than kStartsAgreeTol; the other seed families found a better root.
  bool starts_disagree = false;
  /// Side of the multiplier grid that produced the result (the default or the expanded one).
  int grid_used = 0;

  const StationaryPoint& best() const { return points.front(); }
};

/// Multi-start root search over (lambda1, lambda2) on (|s1|^2 - 1, |s2|^2 - 1), plus the
/// singular branch lambda1*lambda2 = sigma_k^2 where the closed form does not apply.
/// `starts` is the side of the initial multiplier grid over [-2, 2]^2; it doubles once
/// if nothing converges. Throws NoStationaryPoint when both attempts fail.
StationarySolve solve_stationary(const PairReduction& red, int starts = 8);

}  // namespace geomeas

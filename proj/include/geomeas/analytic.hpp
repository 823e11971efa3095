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
#include <variant>
#include <vector>

#include "geomeas/stationarity.hpp"
#include "geomeas/state.hpp"

namespace geomeas {

/// a|100> + b|010> + c|001> with a, b, c >= 0 and a^2 + b^2 + c^2 = 1.
struct WTypeParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Scales (a, b, c) to unit norm; throws InputError on negative or all-zero input.
  static WTypeParams normalized(double a, double b, double c);
  /// Throws InputError unless the invariants hold within 1e-12.
  void validate() const;
};

/// a|000> + b|111> + c|001> + d|110> with unit norm.
struct SymmetricParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  static SymmetricParams normalized(double a, double b, double c, double d);
  void validate() const;
  /// a^2 + c^2 - b^2 - d^2
  double r() const noexcept { return a * a + c * c - b * b - d * d; }
};

enum class TriangleShape { acute_or_right, obtuse_or_flat };

struct TriangleClass {
  TriangleShape shape = TriangleShape::acute_or_right;
  /// Index (0 = a, 1 = b, 2 = c) of the largest coefficient for obtuse_or_flat, else -1.
  int dominant = -1;
};

/// obtuse_or_flat when max(a^2, b^2, c^2) > 1/2 or a coefficient vanishes.
TriangleClass classify(const WTypeParams& p);

struct WTypeLambda {
  double lambda_sq = 0.0;
  TriangleClass cls;
};

WTypeLambda lambda_wtype(const WTypeParams& p);
/// 4R^2 for the triangle with sides a, b, c, R its circumradius. Meaningful for acute
/// and right triangles; defined for any triangle with positive area.
double lambda_wtype_circumradius(const WTypeParams& p);
/// max(a^2, b^2, c^2)
double lambda_wtype_dominant(const WTypeParams& p) noexcept;

/// Pair-AB reduction of a W-type state in closed form.
PairReduction wtype_reduction(const WTypeParams& p);

struct WTypeBloch {
  BlochVector s1;
  BlochVector s2;
  LagrangePair lagrange;
};

/// Optimal Bloch vectors for qubits A, B. Acute/right: s = cos(angle) z + sin(angle) m(azimuth),
/// with m(azimuth) = (cos azimuth, sin azimuth, 0); any azimuth is optimal. Obtuse/flat:
/// the basis state of the dominant coefficient, azimuth ignored.
WTypeBloch wtype_bloch(const WTypeParams& p, double azimuth);

/// (1 + |r|) / 2
double lambda_symmetric(const SymmetricParams& p);
/// Optimal common Bloch vector s1 = s2: sign(r) z, both signs when r == 0.
std::vector<BlochVector> symmetric_bloch(const SymmetricParams& p);
PairReduction symmetric_reduction(const SymmetricParams& p);

/// Real roots of a t^3 + b t^2 + c t + d, ascending. Falls back to the quadratic (or
/// linear) equation when the leading coefficients vanish.
std::vector<double> cubic_real_roots(double a, double b, double c, double d);

struct WWLambda {
  double lambda_sq = 0.0;
  /// tan(phi) of the optimal s = sin(2 phi) x + cos(2 phi) z; +infinity when phi = pi/2.
  double t = 0.0;
  BlochVector s;
};

/// Pair-AB reduction of cos(theta)|W> + sin(theta)|Wtilde> in closed form.
PairReduction ww_reduction(double theta);
/// Closed-form maximum for cos(theta)|W> + sin(theta)|Wtilde>, theta in [0, pi/2].
WWLambda lambda_ww(double theta);

/// Family membership of a state, decided after removing the global phase.
struct WTypeMatch { WTypeParams params; };
struct SymmetricMatch { SymmetricParams params; };
struct WWMatch {
  double theta = 0.0;          // reduced to [0, pi/2]
  bool mirrored = false;       // coefficients of W and Wtilde have opposite signs
};
using FamilyMatch = std::variant<WTypeMatch, SymmetricMatch, WWMatch>;

/// Checks W-type, then symmetric, then W/Wtilde. Off-pattern amplitudes must be below 1e-12.
std::optional<FamilyMatch> detect_family(const PureState3& state);

/// The state multiplied by the phase that makes its largest amplitude real positive.
PureState3 remove_global_phase(const PureState3& state);

}  // namespace geomeas

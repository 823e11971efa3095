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

#include "geomeas/nearest.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geomeas/analytic.hpp"
#include "geomeas/errors.hpp"
#include "geomeas/stationarity.hpp"

namespace geomeas {

namespace {

MeasureResult finish(MeasureResult r) {
  r.e_g = 1.0 - r.lambda_sq;
  return r;
}

MeasureResult from_wtype(const PureState3& state, const WTypeParams& p, const MeasureOptions& opts) {
  MeasureResult r;
  r.method = Method::analytic_wtype;
  const WTypeLambda lam = lambda_wtype(p);
  r.lambda_sq = lam.lambda_sq;
  if (lam.cls.shape == TriangleShape::obtuse_or_flat) {
    const WTypeBloch b = wtype_bloch(p, 0.0);
    r.nearest.push_back(assemble_nearest(state, b.s1, b.s2));
    return finish(r);
  }
  const WTypeBloch probe = wtype_bloch(p, 0.0);
  const bool collapsed = std::abs(std::abs(probe.s1.z()) - 1.0) < 1e-12 &&
                         std::abs(std::abs(probe.s2.z()) - 1.0) < 1e-12;
  if (collapsed) {
    // Right triangle: the in-plane component vanishes and the family is a single point.
    r.nearest.push_back(assemble_nearest(state, probe.s1, probe.s2));
    return finish(r);
  }
  const int n = std::max(1, opts.family_samples);
  r.degenerate = true;
  r.family_param = FamilyParam{Vec3::UnitZ(), 0.0, 2.0 * std::numbers::pi, n};
  for (int k = 0; k < n; ++k) {
    const WTypeBloch b = wtype_bloch(p, 2.0 * std::numbers::pi * k / n);
    r.nearest.push_back(assemble_nearest(state, b.s1, b.s2));
  }
  return finish(r);
}

MeasureResult from_symmetric(const PureState3& state, const SymmetricParams& p) {
  MeasureResult r;
  r.method = Method::analytic_symmetric;
  r.lambda_sq = lambda_symmetric(p);
  for (const auto& s : symmetric_bloch(p)) r.nearest.push_back(assemble_nearest(state, s, s));
  return finish(r);
}

MeasureResult from_ww(const PureState3& state, const WWMatch& m) {
  MeasureResult r;
  r.method = Method::analytic_ww;
  const WWLambda w = lambda_ww(m.theta);
  r.lambda_sq = w.lambda_sq;
  Vec3 s = w.s;
  // Z x Z x Z maps the mirrored superposition onto the reduced one (up to sign).
  if (m.mirrored) s.x() = -s.x();
  r.nearest.push_back(assemble_nearest(state, s, s));
  return finish(r);
}

MeasureResult from_oracle(const PureState3& state, const MeasureOptions& opts) {
  const OracleResult o = oracle_maximize(state, opts.oracle);
  MeasureResult r;
  r.method = Method::oracle;
  r.lambda_sq = o.lambda_sq;
  r.nearest.push_back(o.prod);
  return finish(r);
}

MeasureResult from_stationary(const PureState3& state, const MeasureOptions& opts) {
  const PairReduction red = pair_reduction(state, Pair::AB);
  StationarySolve solve;
  try {
    solve = solve_stationary(red, opts.stationary_starts);
  } catch (const NoStationaryPoint&) {
    MeasureResult r = from_oracle(state, opts);
    r.fallback = true;
    return r;
  }
  const StationaryPoint& best = solve.best();
  MeasureResult r;
  r.method = Method::stationary;
  r.lambda_sq = best.value;
  r.degenerate = best.degenerate;
  r.nearest.push_back(assemble_nearest(state, best.s1, best.s2));

  const OracleResult o = oracle_maximize(state, opts.oracle);
  if (std::abs(o.lambda_sq - best.value) > kMethodAgreeTol) {
    r.disagreement = true;
    r.method = Method::oracle;
    r.lambda_sq = o.lambda_sq;
    r.degenerate = false;
    r.nearest = {o.prod};
  }
  return finish(r);
}

std::optional<MeasureResult> from_family(const PureState3& state, const MeasureOptions& opts) {
  const auto match = detect_family(state);
  if (!match) return std::nullopt;
  if (const auto* w = std::get_if<WTypeMatch>(&*match)) return from_wtype(state, w->params, opts);
  if (const auto* s = std::get_if<SymmetricMatch>(&*match)) return from_symmetric(state, s->params);
  return from_ww(state, std::get<WWMatch>(*match));
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::analytic_wtype: return "analytic_wtype";
    case Method::analytic_symmetric: return "analytic_symmetric";
    case Method::analytic_ww: return "analytic_ww";
    case Method::stationary: return "stationary";
    case Method::oracle: return "oracle";
  }
  return "?";
}

const char* to_string(Policy p) noexcept {
  switch (p) {
    case Policy::automatic: return "auto";
    case Policy::analytic_only: return "analytic";
    case Policy::stationary: return "stationary";
    case Policy::oracle: return "oracle";
  }
  return "?";
}

Policy policy_from_string(std::string_view name) {
  if (name == "auto") return Policy::automatic;
  if (name == "analytic" || name == "analytic_only") return Policy::analytic_only;
  if (name == "stationary") return Policy::stationary;
  if (name == "oracle") return Policy::oracle;
  throw InputError("unknown policy '" + std::string(name) + "'");
}

SingleQubitState third_qubit(const PureState3& state, const SingleQubitState& q1,
                             const SingleQubitState& q2) {
  const auto c = contract_except(state, Qubit::C, q1, q2);
  const double n = std::sqrt(std::norm(c[0]) + std::norm(c[1]));
  if (n < 1e-14) throw OrthogonalPair();
  return bloch_to_state(state_to_bloch({c[0] / n, c[1] / n}));
}

ProductState assemble_nearest(const PureState3& state, const BlochVector& s1, const BlochVector& s2) {
  ProductState p;
  p.q1 = bloch_to_state(s1);
  p.q2 = bloch_to_state(s2);
  p.q3 = third_qubit(state, p.q1, p.q2);
  return p;
}

MeasureResult measure(const PureState3& state, Policy policy, const MeasureOptions& opts) {
  require_normalized(state);
  switch (policy) {
    case Policy::automatic:
      if (auto r = from_family(state, opts)) return *r;
      return from_stationary(state, opts);
    case Policy::analytic_only:
      if (auto r = from_family(state, opts)) return *r;
      throw InputError("state is not in a family with a closed-form solution");
    case Policy::stationary:
      return from_stationary(state, opts);
    case Policy::oracle:
      return from_oracle(state, opts);
  }
  throw InputError("unknown policy");
}

}  // namespace geomeas

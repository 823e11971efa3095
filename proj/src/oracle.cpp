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

#include "geomeas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "geomeas/errors.hpp"
#include "geomeas/kernels.hpp"

namespace geomeas {

namespace {

constexpr double kMonotoneSlack = 1e-13;
constexpr double kRestartAgreeTol = 1e-9;
// Sweep gains below this are rounding noise.
constexpr double kGainFloor = 1e-15;

SingleQubitState from_angles(double polar, double azimuth) {
  return {cplx{std::cos(0.5 * polar), 0.0},
          std::sin(0.5 * polar) * cplx{std::cos(azimuth), std::sin(azimuth)}};
}

std::vector<SingleQubitState> sphere_grid(int n) {
  std::vector<SingleQubitState> g;
  g.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const double polar = std::numbers::pi * (i + 0.5) / n;
    for (int j = 0; j < n; ++j) g.push_back(from_angles(polar, 2.0 * std::numbers::pi * j / n));
  }
  return g;
}

SingleQubitState unit_or(const std::array<cplx, 2>& v, const SingleQubitState& fallback) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  if (!(n > 0.0)) return fallback;
  return {v[0] / n, v[1] / n};
}

SingleQubitState random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    const SingleQubitState q{cplx{gauss(rng), gauss(rng)}, cplx{gauss(rng), gauss(rng)}};
    if (std::norm(q.a0) + std::norm(q.a1) > 1e-12) return normalize(q);
  }
}

struct Cell {
  double value;
  std::size_t first;
  std::size_t second;
};

}  // namespace

void OracleConfig::validate() const {
  if (coarse_grid < 1 || refine_iters < 1 || restarts < 1 || refine_cells < 1 || polish_iters < 1) {
    throw InputError("oracle counts must be >= 1");
  }
  if (!(tol > 0.0)) throw InputError("oracle tolerance must be positive");
}

double eliminate_third(const PureState3& state, const SingleQubitState& q1,
                       const SingleQubitState& q2) noexcept {
  const auto c = contract_except(state, Qubit::C, q1, q2);
  return std::norm(c[0]) + std::norm(c[1]);
}

ProductState refine_alternating(const PureState3& state, ProductState prod,
                                const OracleConfig& cfg, std::vector<double>* history) {
  double value = overlap_sq(state, prod);
  if (history) history->push_back(value);
  auto update = [&](Qubit q) {
    const ProductState& p = prod;
    std::array<cplx, 2> v;
    switch (q) {
      case Qubit::A: v = contract_except(state, q, p.q2, p.q3); break;
      case Qubit::B: v = contract_except(state, q, p.q1, p.q3); break;
      case Qubit::C: v = contract_except(state, q, p.q1, p.q2); break;
    }
    prod[q] = unit_or(v, prod[q]);
    const double next = overlap_sq(state, prod);
    if (next < value - kMonotoneSlack) {
      throw InternalError("alternating refinement decreased the overlap");
    }
    value = next;
    if (history) history->push_back(value);
  };
  // Near degenerate optima the sweeps converge linearly with a rate close to one, so the
  // stopping test uses the geometric-series estimate of the remaining gain.
  double prev_gain = 0.0;
  for (int it = 0; it < cfg.refine_iters; ++it) {
    const double before = value;
    update(Qubit::A);
    update(Qubit::B);
    update(Qubit::C);
    const double gain = value - before;
    if (gain < kGainFloor) break;
    if (it > 0 && gain < prev_gain) {
      const double rate = gain / prev_gain;
      if (gain * rate / (1.0 - rate) < cfg.tol) break;
    }
    prev_gain = gain;
  }
  return prod;
}

OracleResult oracle_maximize(const PureState3& state, const OracleConfig& cfg) {
  cfg.validate();
  require_normalized(state);

  const std::vector<SingleQubitState> grid = sphere_grid(cfg.coarse_grid);
  kernels::QubitBatch batch;
  for (const auto& q : grid) batch.push_back(q);

  // Top cells over the two-sphere grid; ties go to the lowest (first, second) index.
  const std::size_t keep = static_cast<std::size_t>(cfg.refine_cells);
  std::vector<Cell> top;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    kernels::contract_norms(kernels::contract_first(state, grid[i]), batch, values);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (top.size() == keep && values[j] <= top.back().value) continue;
      const Cell cell{values[j], i, j};
      auto pos = std::upper_bound(top.begin(), top.end(), cell,
                                  [](const Cell& a, const Cell& b) { return a.value > b.value; });
      top.insert(pos, cell);
      if (top.size() > keep) top.pop_back();
    }
  }

  std::vector<ProductState> starts;
  for (const auto& cell : top) {
    ProductState p{grid[cell.first], grid[cell.second], {}};
    p.q3 = unit_or(contract_except(state, Qubit::C, p.q1, p.q2), SingleQubitState{});
    starts.push_back(p);
  }
  std::mt19937_64 rng(cfg.seed);
  for (int r = 0; r < cfg.restarts; ++r) {
    starts.push_back({random_qubit(rng), random_qubit(rng), random_qubit(rng)});
  }

  OracleResult best;
  best.lambda_sq = -1.0;
  std::vector<double> finals;
  for (const auto& s : starts) {
    const ProductState refined = refine_alternating(state, s, cfg);
    const double v = overlap_sq(state, refined);
    finals.push_back(v);
    if (v > best.lambda_sq) {
      best.lambda_sq = v;
      best.prod = refined;
    }
  }
  best.multimodal = std::any_of(finals.begin(), finals.end(), [&](double v) {
    return best.lambda_sq - v > kRestartAgreeTol;
  });

  OracleConfig polish = cfg;
  polish.refine_iters = cfg.polish_iters;
  best.prod = refine_alternating(state, best.prod, polish);

  // Canonical phases: every factor goes through its Bloch vector.
  for (Qubit q : {Qubit::A, Qubit::B, Qubit::C}) {
    best.prod[q] = bloch_to_state(state_to_bloch(best.prod[q]));
  }
  best.lambda_sq = overlap_sq(state, best.prod);
  return best;
}

std::vector<FamilySample> oracle_scan_family(Family family,
                                             std::span<const std::vector<double>> params,
                                             const OracleConfig& cfg) {
  std::vector<FamilySample> out;
  out.reserve(params.size());
  for (const auto& p : params) {
    const PureState3 s = make_family_state(family, p);
    out.push_back({p, oracle_maximize(s, cfg).lambda_sq});
  }
  return out;
}

}  // namespace geomeas

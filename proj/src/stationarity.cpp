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

#include "geomeas/stationarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "geomeas/errors.hpp"
#include "geomeas/kernels.hpp"

namespace geomeas {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kLambdaBound = 4.0;
constexpr int kMaxNewton = 100;
constexpr double kSigmaZero = 1e-10;
constexpr double kSigmaGroupTol = 1e-8;
constexpr double kProjectionZero = 1e-9;

using Residual = std::optional<Eigen::Vector2d>;

Residual norm_residual(const PairReduction& red, double l1, double l2) {
  const ClosedFormCandidates c = closed_form_s(red, {l1, l2});
  if (c.degenerate) return std::nullopt;
  return Eigen::Vector2d(c.s1.squaredNorm() - 1.0, c.s2.squaredNorm() - 1.0);
}

// Damped Newton on the norm residual with a central-difference Jacobian.
std::optional<LagrangePair> newton(const PairReduction& red, LagrangePair start) {
  Eigen::Vector2d x(start.lambda1, start.lambda2);
  Residual f = norm_residual(red, x(0), x(1));
  if (!f) return std::nullopt;
  for (int it = 0; it < kMaxNewton; ++it) {
    if (f->lpNorm<Eigen::Infinity>() < 1e-15) break;
    Eigen::Matrix2d jac;
    for (int d = 0; d < 2; ++d) {
      Eigen::Vector2d xp = x, xm = x;
      xp(d) += kFdStep;
      xm(d) -= kFdStep;
      const Residual fp = norm_residual(red, xp(0), xp(1));
      const Residual fm = norm_residual(red, xm(0), xm(1));
      if (!fp || !fm) return std::nullopt;
      jac.col(d) = (*fp - *fm) / (2.0 * kFdStep);
    }
    if (!std::isfinite(jac.determinant()) || std::abs(jac.determinant()) < 1e-300) {
      return std::nullopt;
    }
    const Eigen::Vector2d step = -jac.partialPivLu().solve(*f);
    const double f_norm = f->norm();
    bool accepted = false;
    double alpha = 1.0;
    for (int halvings = 0; halvings < 40; ++halvings, alpha *= 0.5) {
      const Eigen::Vector2d xn = x + alpha * step;
      if (xn.lpNorm<Eigen::Infinity>() > kLambdaBound) continue;
      const Residual fn = norm_residual(red, xn(0), xn(1));
      if (!fn || !fn->allFinite()) continue;
      if (fn->norm() < f_norm) {
        x = xn;
        f = fn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if ((alpha * step).norm() < 1e-16 * (1.0 + x.norm())) break;
  }
  if (f->lpNorm<Eigen::Infinity>() > 1e-11) return std::nullopt;
  return LagrangePair{x(0), x(1)};
}

std::optional<StationaryPoint> make_point(const PairReduction& red, Vec3 s1, Vec3 s2,
                                          LagrangePair lag, bool degenerate) {
  const double n1 = s1.norm();
  const double n2 = s2.norm();
  if (std::abs(n1 - 1.0) > kBlochTol || std::abs(n2 - 1.0) > kBlochTol) return std::nullopt;
  StationaryPoint p;
  p.s1 = s1 / n1;
  p.s2 = s2 / n2;
  p.lagrange = lag;
  if (stationarity_residual(red, p) >= kStationaryResidualTol) return std::nullopt;
  p.value = overlap_form(red, p.s1, p.s2);
  p.degenerate = degenerate || detect_degenerate(red, lag);
  return p;
}

void add_unique(std::vector<StationaryPoint>& points, const StationaryPoint& p) {
  for (auto& q : points) {
    if ((q.s1 - p.s1).lpNorm<Eigen::Infinity>() < kDedupTol &&
        (q.s2 - p.s2).lpNorm<Eigen::Infinity>() < kDedupTol) {
      q.degenerate = q.degenerate || p.degenerate;
      return;
    }
  }
  points.push_back(p);
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.emplace_back(rho * std::cos(golden * i), rho * std::sin(golden * i), z);
  }
  return pts;
}

// Seeds from block-coordinate ascent on the Bloch form: for fixed s2 the form is linear
// in s1 and maximized by s1 = (r1 + g s2)/|r1 + g s2|, and symmetrically for s2.
std::vector<LagrangePair> ascent_seeds(const PairReduction& red) {
  static const std::vector<Vec3> sphere = fibonacci_sphere(32);
  kernels::BlochBatch b1, b2;
  for (const auto& u : sphere)
    for (const auto& v : sphere) {
      b1.push_back(u);
      b2.push_back(v);
    }
  std::vector<double> vals(b1.size());
  kernels::overlap_form_batch(red, b1, b2, vals);

  constexpr std::size_t kTop = 6;
  std::vector<std::size_t> order(vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + kTop, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return vals[a] > vals[b] || (vals[a] == vals[b] && a < b);
                    });

  std::vector<LagrangePair> seeds;
  for (std::size_t t = 0; t < kTop; ++t) {
    const std::size_t i = order[t];
    Vec3 s1(b1.x[i], b1.y[i], b1.z[i]);
    Vec3 s2(b2.x[i], b2.y[i], b2.z[i]);
    for (int it = 0; it < 200; ++it) {
      const Vec3 d1 = red.r1 + red.g * s2;
      if (d1.norm() > 1e-300) s1 = d1.normalized();
      const Vec3 d2 = red.r2 + red.g.transpose() * s1;
      if (d2.norm() > 1e-300) s2 = d2.normalized();
    }
    seeds.push_back(multipliers_at(red, s1, s2));
  }
  return seeds;
}

struct SvdFrame {
  Mat3 u;
  Mat3 v;
  Vec3 sigma;
  Vec3 p;  // U^T r1
  Vec3 q;  // V^T r2
};

SvdFrame svd_frame(const PairReduction& red) {
  Eigen::JacobiSVD<Mat3> svd(red.g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFrame f;
  f.u = svd.matrixU();
  f.v = svd.matrixV();
  f.sigma = svd.singularValues();
  f.p = f.u.transpose() * red.r1;
  f.q = f.v.transpose() * red.r2;
  return f;
}

// Stationary points with lambda1*lambda2 = sigma^2 for a singular value sigma of g.
// In the singular frame the system decouples into 2x2 blocks per index; the block(s) of
// `sigma` are singular and their components are fixed by the norm constraints instead.
// Only the structured cases are handled: projections of r1, r2 onto the singular block
// vanish (sigma > 0), or one multiplier vanishes (sigma = 0). A generic state has no
// stationary point on this branch.
void singular_branch(const PairReduction& red, std::vector<StationaryPoint>& out) {
  const SvdFrame f = svd_frame(red);
  std::array<bool, 3> used{false, false, false};
  for (int k = 0; k < 3; ++k) {
    if (used[static_cast<std::size_t>(k)]) continue;
    const double sigma = f.sigma(k);
    std::vector<int> block, rest;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(f.sigma(i) - sigma) <= kSigmaGroupTol * std::max(1.0, sigma)) {
        block.push_back(i);
        used[static_cast<std::size_t>(i)] = true;
      } else {
        rest.push_back(i);
      }
    }
    double p_block = 0.0, q_block = 0.0;
    for (int i : block) {
      p_block += f.p(i) * f.p(i);
      q_block += f.q(i) * f.q(i);
    }
    p_block = std::sqrt(p_block);
    q_block = std::sqrt(q_block);
    const int lead = block.front();

    auto emit = [&](const Vec3& a, const Vec3& b, LagrangePair lag) {
      if (auto p = make_point(red, f.u * a, f.v * b, lag, true)) add_unique(out, *p);
    };

    if (sigma > kSigmaZero) {
      if (p_block > kProjectionZero || q_block > kProjectionZero) continue;
      // lambda1^2 (|a_rest|^2 - 1) + sigma^2 (1 - |b_rest|^2) = 0 is quadratic in lambda1
      // with no linear term once lambda2 = sigma^2 / lambda1 is substituted.
      const double s2 = sigma * sigma;
      double c2 = -1.0, c0 = s2;
      for (int i : rest) {
        const double det = s2 - f.sigma(i) * f.sigma(i);
        const double pi = f.p(i) / det, qi = f.q(i) / det;
        c2 += f.sigma(i) * f.sigma(i) * qi * qi - s2 * qi * qi;
        c0 += s2 * s2 * pi * pi - s2 * f.sigma(i) * f.sigma(i) * pi * pi;
      }
      if (std::abs(c2) < 1e-14) continue;
      const double root_sq = -c0 / c2;
      if (!(root_sq > 0.0)) continue;
      for (double l1 : {std::sqrt(root_sq), -std::sqrt(root_sq)}) {
        const double l2 = s2 / l1;
        Vec3 a = Vec3::Zero(), b = Vec3::Zero();
        double b_rest = 0.0;
        for (int i : rest) {
          const double det = l1 * l2 - f.sigma(i) * f.sigma(i);
          a(i) = (l2 * f.p(i) + f.sigma(i) * f.q(i)) / det;
          b(i) = (l1 * f.q(i) + f.sigma(i) * f.p(i)) / det;
          b_rest += b(i) * b(i);
        }
        if (b_rest > 1.0 + 1e-12) continue;
        const double mag = std::sqrt(std::max(0.0, 1.0 - b_rest));
        const int signs = block.size() == 1 ? 2 : 1;
        for (int sgn = 0; sgn < signs; ++sgn) {
          Vec3 bb = b, aa = a;
          bb(lead) = sgn == 0 ? mag : -mag;
          aa(lead) = sigma * bb(lead) / l1;
          emit(aa, bb, {l1, l2});
        }
      }
      continue;
    }

    // sigma = 0: lambda1 * lambda2 = 0. With lambda1 = 0 the s1-block is free and
    // lambda2 b_block = q_block; the lambda2 = 0 case mirrors it.
    for (int side = 0; side < 2; ++side) {
      const Vec3& pp = side == 0 ? f.p : f.q;
      const Vec3& qq = side == 0 ? f.q : f.p;
      const double pb = side == 0 ? p_block : q_block;
      const double qb = side == 0 ? q_block : p_block;
      if (pb > kProjectionZero || qb <= kProjectionZero) continue;
      Vec3 fixed = Vec3::Zero();  // the fully determined vector (b for side 0)
      double fixed_rest = 0.0;
      for (int i : rest) {
        fixed(i) = -pp(i) / f.sigma(i);
        fixed_rest += fixed(i) * fixed(i);
      }
      if (fixed_rest >= 1.0) continue;
      for (double sign : {1.0, -1.0}) {
        const double lam = sign * qb / std::sqrt(1.0 - fixed_rest);
        Vec3 det_vec = fixed, free_vec = Vec3::Zero();
        for (int i : block) det_vec(i) = qq(i) / lam;
        double free_rest = 0.0;
        for (int i : rest) {
          free_vec(i) = (lam * det_vec(i) - qq(i)) / f.sigma(i);
          free_rest += free_vec(i) * free_vec(i);
        }
        if (free_rest > 1.0 + 1e-12) continue;
        const double mag = std::sqrt(std::max(0.0, 1.0 - free_rest));
        const int signs = block.size() == 1 ? 2 : 1;
        for (int sgn = 0; sgn < signs; ++sgn) {
          Vec3 fv = free_vec;
          fv(lead) = sgn == 0 ? mag : -mag;
          if (side == 0) {
            emit(fv, det_vec, {0.0, lam});
          } else {
            emit(det_vec, fv, {lam, 0.0});
          }
        }
      }
    }
  }
}

double best_value(const std::vector<StationaryPoint>& pts) {
  double best = -1.0;
  for (const auto& p : pts) best = std::max(best, p.value);
  return best;
}

StationarySolve solve_once(const PairReduction& red, int grid) {
  std::vector<StationaryPoint> from_grid;
  std::vector<StationaryPoint> all;

  auto run = [&](LagrangePair seed, std::vector<StationaryPoint>* also) {
    const auto lag = newton(red, seed);
    if (!lag) return;
    const ClosedFormCandidates c = closed_form_s(red, *lag);
    if (c.degenerate) return;
    if (auto p = make_point(red, c.s1, c.s2, *lag, false)) {
      add_unique(all, *p);
      if (also) add_unique(*also, *p);
    }
  };

  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double l1 = -2.0 + 4.0 * i / (grid - 1);
      const double l2 = -2.0 + 4.0 * j / (grid - 1);
      run({l1, l2}, &from_grid);
    }
  }

  const Eigen::JacobiSVD<Mat3> svd(red.g);
  for (int k = 0; k < 3; ++k) {
    const double s = svd.singularValues()(k);
    for (double rel : {1e-3, 5e-2, 3e-1}) {
      const double l = s * (1.0 + rel) + rel;
      run({l, l}, nullptr);
      run({-l, -l}, nullptr);
    }
  }

  for (const auto& seed : ascent_seeds(red)) {
    run(seed, nullptr);
    run({seed.lambda1 * (1.0 + 1e-4) + 1e-6, seed.lambda2 * (1.0 + 1e-4) + 1e-6}, nullptr);
  }

  singular_branch(red, all);

  std::stable_sort(all.begin(), all.end(),
                   [](const StationaryPoint& a, const StationaryPoint& b) { return a.value > b.value; });
  StationarySolve out;
  out.grid_used = grid;
  if (!all.empty() && !from_grid.empty()) {
    out.starts_disagree = std::abs(best_value(from_grid) - all.front().value) > kStartsAgreeTol;
  } else if (!all.empty()) {
    out.starts_disagree = true;
  }
  out.points = std::move(all);
  return out;
}

}  // namespace

ClosedFormCandidates closed_form_s(const PairReduction& red, const LagrangePair& lag) {
  ClosedFormCandidates out;
  if (detect_degenerate(red, lag)) {
    out.degenerate = true;
    return out;
  }
  const double prod = lag.lambda1 * lag.lambda2;
  const Mat3 m1 = prod * Mat3::Identity() - red.g * red.g.transpose();
  const Mat3 m2 = prod * Mat3::Identity() - red.g.transpose() * red.g;
  out.s1 = m1.inverse() * (lag.lambda2 * red.r1 + red.g * red.r2);
  out.s2 = m2.inverse() * (lag.lambda1 * red.r2 + red.g.transpose() * red.r1);
  return out;
}

bool detect_degenerate(const PairReduction& red, const LagrangePair& lag) {
  const Mat3 m = lag.lambda1 * lag.lambda2 * Mat3::Identity() - red.g * red.g.transpose();
  return std::abs(m.determinant()) < 1e-9 * std::max(1.0, red.g.squaredNorm());
}

LagrangePair multipliers_at(const PairReduction& red, const Vec3& s1, const Vec3& s2) {
  return {s1.dot(red.r1 + red.g * s2), s2.dot(red.r2 + red.g.transpose() * s1)};
}

double stationarity_residual(const PairReduction& red, const StationaryPoint& p) {
  const Vec3 e1 = red.r1 + red.g * p.s2 - p.lagrange.lambda1 * p.s1;
  const Vec3 e2 = red.r2 + red.g.transpose() * p.s1 - p.lagrange.lambda2 * p.s2;
  return e1.norm() + e2.norm();
}

StationarySolve solve_stationary(const PairReduction& red, int starts) {
  if (starts < 2) throw InputError("solve_stationary needs at least a 2x2 start grid");
  StationarySolve first = solve_once(red, starts);
  if (!first.points.empty()) return first;
  StationarySolve second = solve_once(red, 2 * starts);
  if (!second.points.empty()) return second;
  throw NoStationaryPoint();
}

}  // namespace geomeas

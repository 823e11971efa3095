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

#include "geomeas/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "geomeas/errors.hpp"

namespace geomeas {

namespace {

constexpr double kParamTol = 1e-12;
constexpr double kFlatTol = 1e-12;
constexpr double kPatternTol = 1e-12;
constexpr double kIrrelevantRootTol = 1e-9;

double sq(double x) noexcept { return x * x; }

// 16 S^2 by Heron, in the factored form that avoids cancellation.
double heron16(double a, double b, double c) noexcept {
  return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
}

double poly3(double a, double b, double c, double d, double t) noexcept {
  return ((a * t + b) * t + c) * t + d;
}

double polish_root(double a, double b, double c, double d, double t) noexcept {
  for (int it = 0; it < 6; ++it) {
    const double f = poly3(a, b, c, d, t);
    const double df = (3.0 * a * t + 2.0 * b) * t + c;
    if (df == 0.0 || f == 0.0) break;
    const double next = t - f / df;
    if (!std::isfinite(next) || std::abs(poly3(a, b, c, d, next)) >= std::abs(f)) break;
    t = next;
  }
  return t;
}

std::vector<double> quadratic_real_roots(double a, double b, double c) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return {};
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double root = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(root, b));
  std::vector<double> out;
  if (q != 0.0) {
    out = {q / a, c / q};
  } else {
    out = {-b / (2.0 * a)};
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

WTypeParams WTypeParams::normalized(double a, double b, double c) {
  if (a < 0.0 || b < 0.0 || c < 0.0) throw InputError("wtype coefficients must be non-negative");
  const double n = std::sqrt(a * a + b * b + c * c);
  if (!(n > 0.0)) throw InputError("wtype coefficients are all zero");
  return {a / n, b / n, c / n};
}

void WTypeParams::validate() const {
  if (a < 0.0 || b < 0.0 || c < 0.0) throw InputError("wtype coefficients must be non-negative");
  if (std::abs(a * a + b * b + c * c - 1.0) > kParamTol) {
    throw InputError("wtype coefficients must satisfy a^2 + b^2 + c^2 = 1");
  }
}

SymmetricParams SymmetricParams::normalized(double a, double b, double c, double d) {
  const double n = std::sqrt(a * a + b * b + c * c + d * d);
  if (!(n > 0.0)) throw InputError("symmetric coefficients are all zero");
  return {a / n, b / n, c / n, d / n};
}

void SymmetricParams::validate() const {
  if (std::abs(a * a + b * b + c * c + d * d - 1.0) > kParamTol) {
    throw InputError("symmetric coefficients must satisfy a^2 + b^2 + c^2 + d^2 = 1");
  }
}

TriangleClass classify(const WTypeParams& p) {
  const double sides[3] = {p.a, p.b, p.c};
  int dominant = 0;
  for (int i = 1; i < 3; ++i)
    if (sides[i] > sides[dominant]) dominant = i;
  const double smallest = std::min({p.a, p.b, p.c});
  if (sq(sides[dominant]) > 0.5 || smallest <= kFlatTol) {
    return {TriangleShape::obtuse_or_flat, dominant};
  }
  return {TriangleShape::acute_or_right, -1};
}

double lambda_wtype_dominant(const WTypeParams& p) noexcept {
  return std::max({sq(p.a), sq(p.b), sq(p.c)});
}

double lambda_wtype_circumradius(const WTypeParams& p) {
  const double h = heron16(p.a, p.b, p.c);
  if (!(h > 0.0)) throw InputError("circumradius undefined for a flat triangle");
  // R = abc / (4S)  =>  4R^2 = 4 a^2 b^2 c^2 / (16 S^2)
  return 4.0 * sq(p.a * p.b * p.c) / h;
}

WTypeLambda lambda_wtype(const WTypeParams& p) {
  p.validate();
  const TriangleClass cls = classify(p);
  if (cls.shape == TriangleShape::obtuse_or_flat) return {lambda_wtype_dominant(p), cls};
  return {lambda_wtype_circumradius(p), cls};
}

PairReduction wtype_reduction(const WTypeParams& p) {
  const double a2 = sq(p.a), b2 = sq(p.b), c2 = sq(p.c);
  PairReduction red;
  red.pair = Pair::AB;
  red.r1 = Vec3(0.0, 0.0, b2 + c2 - a2);
  red.r2 = Vec3(0.0, 0.0, a2 + c2 - b2);
  const double omega = 2.0 * p.a * p.b;
  red.g.diagonal() << omega, omega, -(a2 + b2 - c2);
  return red;
}

WTypeBloch wtype_bloch(const WTypeParams& p, double azimuth) {
  p.validate();
  const PairReduction red = wtype_reduction(p);
  const TriangleClass cls = classify(p);
  const Vec3 n = Vec3::UnitZ();
  if (cls.shape == TriangleShape::obtuse_or_flat) {
    // Basis state of the dominant coefficient: |100>, |010> or |001>.
    const Vec3 s1 = cls.dominant == 0 ? Vec3(-n) : n;
    const Vec3 s2 = cls.dominant == 1 ? Vec3(-n) : n;
    return {s1, s2, multipliers_at(red, s1, s2)};
  }
  const double a2 = sq(p.a), b2 = sq(p.b), c2 = sq(p.c);
  const double r1 = b2 + c2 - a2;
  const double r2 = a2 + c2 - b2;
  const double r3 = a2 + b2 - c2;
  const double omega = 2.0 * p.a * p.b;
  const double area16 = heron16(p.a, p.b, p.c);  // omega^2 - r3^2
  const double num1 = sq(omega) + sq(r1) - sq(r3);
  const double num2 = sq(omega) + sq(r2) - sq(r3);
  const double l1 = omega * std::sqrt(num1 / num2);
  const double l2 = omega * std::sqrt(num2 / num1);
  double cos_a = (l2 * r1 - r2 * r3) / area16;
  double cos_b = (l1 * r2 - r1 * r3) / area16;
  if (std::abs(cos_a) > 1.0 + 1e-10 || std::abs(cos_b) > 1.0 + 1e-10) {
    throw InputError("inconsistent W-type parameters: |cos| > 1 on the acute branch");
  }
  cos_a = std::clamp(cos_a, -1.0, 1.0);
  cos_b = std::clamp(cos_b, -1.0, 1.0);
  const double sin_a = std::sqrt(1.0 - sq(cos_a));
  const double sin_b = std::sqrt(1.0 - sq(cos_b));
  const Vec3 m(std::cos(azimuth), std::sin(azimuth), 0.0);
  return {cos_a * n + sin_a * m, cos_b * n + sin_b * m, {l1, l2}};
}

double lambda_symmetric(const SymmetricParams& p) {
  p.validate();
  return 0.5 * (1.0 + std::abs(p.r()));
}

std::vector<BlochVector> symmetric_bloch(const SymmetricParams& p) {
  p.validate();
  const double r = p.r();
  if (std::abs(r) <= kParamTol) return {Vec3::UnitZ(), -Vec3::UnitZ()};
  return {r > 0.0 ? Vec3(Vec3::UnitZ()) : Vec3(-Vec3::UnitZ())};
}

PairReduction symmetric_reduction(const SymmetricParams& p) {
  const double r = p.r();
  const double omega = 2.0 * p.a * p.d + 2.0 * p.b * p.c;
  PairReduction red;
  red.pair = Pair::AB;
  red.r1 = Vec3(0.0, 0.0, r);
  red.r2 = red.r1;
  red.g.diagonal() << omega, -omega, 1.0;
  return red;
}

std::vector<double> cubic_real_roots(double a, double b, double c, double d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) return {};
  if (std::abs(a) <= 1e-14 * scale) return quadratic_real_roots(b, c, d);

  // Depressed cubic x^3 + p x + q with t = x - B/3.
  const double B = b / a, C = c / a, D = d / a;
  const double shift = B / 3.0;
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  std::vector<double> roots;
  const double disc = sq(q / 2.0) + p * p * p / 27.0;
  if (p < 0.0 && disc < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
  } else {
    const double sd = std::sqrt(std::max(disc, 0.0));
    const double u = std::cbrt(-q / 2.0 + sd);
    const double v = std::cbrt(-q / 2.0 - sd);
    roots.push_back(u + v - shift);
    if (disc <= 0.0) {
      // Repeated root: -(u + v)/2 is the double root.
      roots.push_back(-(u + v) / 2.0 - shift);
    }
  }
  for (double& t : roots) t = polish_root(a, b, c, d, t);
  std::sort(roots.begin(), roots.end());
  return roots;
}

PairReduction ww_reduction(double theta) {
  PairReduction red;
  red.pair = Pair::AB;
  red.r1 = Vec3(2.0 * std::sin(2.0 * theta), 0.0, std::cos(2.0 * theta)) / 3.0;
  red.r2 = red.r1;
  red.g.diagonal() << 2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0;
  return red;
}

WWLambda lambda_ww(double theta) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (theta < -1e-12 || theta > kHalfPi + 1e-12) {
    throw InputError("lambda_ww expects theta in [0, pi/2]");
  }
  const double st = std::sin(theta), ct = std::cos(theta);
  const PairReduction red = ww_reduction(theta);

  std::vector<double> candidates;
  for (double t : cubic_real_roots(st, 2.0 * ct, -2.0 * st, -ct)) {
    if (ct != 0.0 && std::abs(t + st / ct) < kIrrelevantRootTol) continue;
    candidates.push_back(t);
  }
  // A vanishing leading coefficient sends one root to infinity (phi = pi/2).
  if (std::abs(st) <= 1e-14) candidates.push_back(std::numeric_limits<double>::infinity());

  WWLambda best;
  best.lambda_sq = -1.0;
  for (double t : candidates) {
    Vec3 s;
    if (std::isinf(t)) {
      s = -Vec3::UnitZ();
    } else {
      const double den = 1.0 + t * t;
      s = Vec3(2.0 * t / den, 0.0, (1.0 - t * t) / den);
    }
    const double v = overlap_form_unchecked(red, s, s);
    if (v > best.lambda_sq + 1e-12 || (std::abs(v - best.lambda_sq) <= 1e-12 && t > best.t)) {
      best = {v, t, s};
    }
  }
  return best;
}

PureState3 remove_global_phase(const PureState3& state) {
  std::size_t lead = 0;
  for (std::size_t i = 1; i < 8; ++i)
    if (std::abs(state.amp[i]) > std::abs(state.amp[lead]) + 1e-15) lead = i;
  const double mag = std::abs(state.amp[lead]);
  if (mag == 0.0) return state;
  const cplx phase = std::conj(state.amp[lead]) / mag;
  PureState3 out;
  for (std::size_t i = 0; i < 8; ++i) out.amp[i] = state.amp[i] * phase;
  return out;
}

std::optional<FamilyMatch> detect_family(const PureState3& state) {
  const PureState3 s = remove_global_phase(state);
  auto off_pattern_zero = [&](std::initializer_list<std::size_t> support) {
    for (std::size_t i = 0; i < 8; ++i) {
      if (std::find(support.begin(), support.end(), i) != support.end()) continue;
      if (std::abs(s.amp[i]) >= kPatternTol) return false;
    }
    for (std::size_t i : support)
      if (std::abs(s.amp[i].imag()) >= kPatternTol) return false;
    return true;
  };
  auto re = [&](int q1, int q2, int q3) { return s.amp[PureState3::index(q1, q2, q3)].real(); };

  if (off_pattern_zero({4, 2, 1})) {
    const double a = re(1, 0, 0), b = re(0, 1, 0), c = re(0, 0, 1);
    if (a > -kPatternTol && b > -kPatternTol && c > -kPatternTol) {
      return WTypeMatch{WTypeParams::normalized(std::max(a, 0.0), std::max(b, 0.0), std::max(c, 0.0))};
    }
  }
  if (off_pattern_zero({0, 7, 1, 6})) {
    return SymmetricMatch{SymmetricParams::normalized(re(0, 0, 0), re(1, 1, 1), re(0, 0, 1), re(1, 1, 0))};
  }
  if (off_pattern_zero({4, 2, 1, 3, 5, 6})) {
    const double x = re(1, 0, 0), y = re(0, 1, 1);
    const bool equal_w = std::abs(re(0, 1, 0) - x) < kPatternTol && std::abs(re(0, 0, 1) - x) < kPatternTol;
    const bool equal_wt = std::abs(re(1, 0, 1) - y) < kPatternTol && std::abs(re(1, 1, 0) - y) < kPatternTol;
    if (equal_w && equal_wt) {
      return WWMatch{std::atan2(std::abs(y), std::abs(x)), x * y < 0.0};
    }
  }
  return std::nullopt;
}

}  // namespace geomeas

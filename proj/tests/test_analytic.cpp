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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "geomeas/analytic.hpp"
#include "geomeas/errors.hpp"
#include "geomeas/families.hpp"
#include "test_util.hpp"

namespace geomeas {
namespace {

using testing::random_triangle;

TEST(WType, Examples) {
  const double a = 1 / std::sqrt(3.0);
  EXPECT_NEAR(lambda_wtype({a, a, a}).lambda_sq, 4.0 / 9, 1e-15);
  EXPECT_NEAR(lambda_wtype({0.5, 0.5, std::sqrt(0.5)}).lambda_sq, 0.5, 1e-15);
  const WTypeLambda obtuse = lambda_wtype({std::sqrt(0.18), std::sqrt(0.18), 0.8});
  EXPECT_NEAR(obtuse.lambda_sq, 0.64, 1e-15);
  EXPECT_EQ(obtuse.cls.shape, TriangleShape::obtuse_or_flat);
  EXPECT_EQ(obtuse.cls.dominant, 2);
  const WTypeLambda flat = lambda_wtype({0.6, 0.8, 0.0});
  EXPECT_NEAR(flat.lambda_sq, 0.64, 1e-15);
  EXPECT_EQ(flat.cls.shape, TriangleShape::obtuse_or_flat);
}

TEST(WType, ValidationRejectsBadInput) {
  EXPECT_THROW(WTypeParams::normalized(-0.1, 0.5, 0.5), InputError);
  EXPECT_THROW(WTypeParams::normalized(0, 0, 0), InputError);
  EXPECT_THROW((WTypeParams{0.5, 0.5, 0.5}.validate()), InputError);
  EXPECT_NO_THROW(WTypeParams::normalized(1, 2, 3).validate());
}

TEST(WType, BranchContinuityNearRightTriangle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    // Largest square within 1e-6 of 1/2, split the rest at random.
    const double c2 = 0.5 + (u(rng) - 0.5) * 2e-6;
    const double share = 0.05 + 0.9 * u(rng);
    const WTypeParams p{std::sqrt((1 - c2) * share), std::sqrt((1 - c2) * (1 - share)), std::sqrt(c2)};
    if (std::max(p.a, p.b) > p.c) continue;
    ASSERT_NEAR(lambda_wtype_circumradius(p), lambda_wtype_dominant(p), 1e-8);
  }
}

TEST(WType, MinimalAtRegularTriangle) {
  std::mt19937_64 rng(42);
  const double w = 1 / std::sqrt(3.0);
  for (int i = 0; i < 10000; ++i) {
    const WTypeParams p = random_triangle(rng, i % 2 == 0);
    const double v = lambda_wtype(p).lambda_sq;
    ASSERT_GE(v, 4.0 / 9 - 1e-12);
    if (v < 4.0 / 9 + 1e-12) {
      EXPECT_LT(std::max({std::abs(p.a - w), std::abs(p.b - w), std::abs(p.c - w)}), 1e-6);
    }
  }
}

TEST(WType, PermutationSymmetry) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 1000; ++i) {
    const WTypeParams p = random_triangle(rng, i % 2 == 0);
    std::array<double, 3> v{p.a, p.b, p.c};
    std::sort(v.begin(), v.end());
    const double ref = lambda_wtype(p).lambda_sq;
    do {
      ASSERT_NEAR(lambda_wtype({v[0], v[1], v[2]}).lambda_sq, ref, 1e-12);
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST(WType, CircumradiusThrowsWhenFlat) {
  EXPECT_THROW(lambda_wtype_circumradius({0.6, 0.8, 0.0}), InputError);
}

TEST(WTypeBloch, RegularTriangle) {
  const double a = 1 / std::sqrt(3.0);
  for (double phi : {0.0, 1.0, 2.5}) {
    const WTypeBloch b = wtype_bloch({a, a, a}, phi);
    EXPECT_NEAR(b.s1.z(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(b.s2.z(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(b.lagrange.lambda1, 2.0 / 3, 1e-14);
    EXPECT_NEAR(b.lagrange.lambda2, 2.0 / 3, 1e-14);
  }
}

TEST(WTypeBloch, ObtuseAlignedWithZ) {
  const WTypeBloch b = wtype_bloch({std::sqrt(0.18), std::sqrt(0.18), 0.8}, 0.0);
  EXPECT_NEAR((b.s1 - Vec3::UnitZ()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((b.s2 - Vec3::UnitZ()).norm(), 0.0, 1e-15);
}

TEST(WTypeBloch, ReproducesLambdaOnAzimuthGrid) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 1000; ++i) {
    const WTypeParams p = random_triangle(rng, true);
    const PairReduction red = wtype_reduction(p);
    const double lw = lambda_wtype(p).lambda_sq;
    for (int k = 0; k < 12; ++k) {
      const WTypeBloch b = wtype_bloch(p, 2 * std::numbers::pi * k / 12);
      ASSERT_NEAR(overlap_form(red, b.s1, b.s2), lw, 1e-10);
    }
  }
}

TEST(WTypeBloch, FamilyIsFlatOver36Azimuths) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 200; ++i) {
    const WTypeParams p = random_triangle(rng, true);
    const PairReduction red = wtype_reduction(p);
    double lo = 2, hi = -1;
    for (int k = 0; k < 36; ++k) {
      const WTypeBloch b = wtype_bloch(p, 2 * std::numbers::pi * k / 36);
      const double v = overlap_form(red, b.s1, b.s2);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ASSERT_LT(hi - lo, 1e-10);
  }
}

TEST(WType, ReductionMatchesState) {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 100; ++i) {
    const WTypeParams p = random_triangle(rng, i % 2 == 0);
    const PairReduction a = wtype_reduction(p);
    const PairReduction b = pair_reduction(wtype_state(p.a, p.b, p.c), Pair::AB);
    ASSERT_NEAR((a.r1 - b.r1).norm() + (a.r2 - b.r2).norm() + (a.g - b.g).norm(), 0.0, 1e-14);
  }
}

TEST(Symmetric, Examples) {
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(lambda_symmetric({h, h, 0, 0}), 0.5, 1e-15);
  EXPECT_NEAR(lambda_symmetric({0.6, 0.8, 0, 0}), 0.64, 1e-15);
  EXPECT_NEAR(lambda_symmetric({0.8, 0.6, 0, 0}), 0.64, 1e-15);
  EXPECT_DOUBLE_EQ(lambda_symmetric({1, 0, 0, 0}), 1.0);
}

TEST(Symmetric, MatchesLargerPairWeight) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 10000; ++i) {
    const SymmetricParams p = testing::random_symmetric(rng);
    ASSERT_NEAR(lambda_symmetric(p), std::max(p.a * p.a + p.c * p.c, p.b * p.b + p.d * p.d), 1e-12);
  }
}

TEST(Symmetric, BlochVectors) {
  EXPECT_EQ(symmetric_bloch({std::sqrt(0.5), std::sqrt(0.5), 0, 0}).size(), 2u);
  const auto one = symmetric_bloch(SymmetricParams::normalized(0.2, 0.9, 0.1, 0.3));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR((one[0] + Vec3::UnitZ()).norm(), 0.0, 1e-15);
}

TEST(Cubic, KnownRoots) {
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto three = sorted(cubic_real_roots(1, -6, 11, -6));
  ASSERT_EQ(three.size(), 3u);
  EXPECT_NEAR(three[0], 1, 1e-13);
  EXPECT_NEAR(three[1], 2, 1e-13);
  EXPECT_NEAR(three[2], 3, 1e-13);
  const auto single = cubic_real_roots(1, 0, 1, -2);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_NEAR(single[0], 1, 1e-13);
  const auto quad = sorted(cubic_real_roots(0, 2, 0, -1));
  ASSERT_EQ(quad.size(), 2u);
  EXPECT_NEAR(quad[1], std::sqrt(0.5), 1e-15);
}

TEST(Cubic, RandomCoefficientsAreRoots) {
  std::mt19937_64 rng(48);
  std::normal_distribution<double> n;
  for (int i = 0; i < 1000; ++i) {
    const double a = n(rng), b = n(rng), c = n(rng), d = n(rng);
    for (double t : cubic_real_roots(a, b, c, d)) {
      const double scale = std::abs(a * t * t * t) + std::abs(b * t * t) + std::abs(c * t) + std::abs(d);
      ASSERT_LT(std::abs(((a * t + b) * t + c) * t + d), 1e-12 * scale);
    }
  }
}

TEST(WW, Endpoints) {
  const WWLambda w = lambda_ww(0.0);
  EXPECT_NEAR(w.lambda_sq, 4.0 / 9, 1e-14);
  EXPECT_NEAR(w.t, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(lambda_ww(std::numbers::pi / 2).lambda_sq, 4.0 / 9, 1e-14);
}

TEST(WW, OptimalVectorAttainsValue) {
  for (int i = 0; i <= 40; ++i) {
    const double theta = std::numbers::pi / 2 * i / 40;
    const WWLambda w = lambda_ww(theta);
    EXPECT_NEAR(overlap_form(ww_reduction(theta), w.s, w.s), w.lambda_sq, 1e-13);
    const PairReduction red = pair_reduction(ww_state(theta), Pair::AB);
    EXPECT_NEAR((red.g - ww_reduction(theta).g).norm() + (red.r1 - ww_reduction(theta).r1).norm(), 0, 1e-14);
  }
}

TEST(WW, RejectsOutOfRange) { EXPECT_THROW(lambda_ww(2.0), InputError); }

TEST(DetectFamily, RecognizesEachFamily) {
  const auto w = detect_family(wtype_state(0.2, 0.5, 0.7));
  ASSERT_TRUE(w);
  EXPECT_TRUE(std::holds_alternative<WTypeMatch>(*w));
  const auto s = detect_family(symmetric_state(0.2, 0.5, 0.7, 0.1));
  ASSERT_TRUE(s);
  EXPECT_TRUE(std::holds_alternative<SymmetricMatch>(*s));
  const auto x = detect_family(ww_state(0.4));
  ASSERT_TRUE(x);
  ASSERT_TRUE(std::holds_alternative<WWMatch>(*x));
  EXPECT_NEAR(std::get<WWMatch>(*x).theta, 0.4, 1e-12);
  std::mt19937_64 rng(49);
  EXPECT_FALSE(detect_family(testing::random_state(rng)));
}

TEST(DetectFamily, IgnoresGlobalPhase) {
  PureState3 s = wtype_state(0.3, 0.4, 0.5);
  for (auto& a : s.amp) a *= std::polar(1.0, 1.1);
  const auto m = detect_family(s);
  ASSERT_TRUE(m);
  ASSERT_TRUE(std::holds_alternative<WTypeMatch>(*m));
  EXPECT_NEAR(std::get<WTypeMatch>(*m).params.a, 0.3 / std::sqrt(0.5), 1e-12);
}

}  // namespace
}  // namespace geomeas

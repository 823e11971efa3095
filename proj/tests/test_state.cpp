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

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "geomeas/errors.hpp"
#include "geomeas/families.hpp"
#include "geomeas/state.hpp"
#include "test_util.hpp"

namespace geomeas {
namespace {

using testing::random_qubit;
using testing::random_state;
using testing::random_unit;

PureState3 basis(int i) {
  PureState3 s;
  s.amp[static_cast<std::size_t>(i)] = 1.0;
  return s;
}

const SingleQubitState kZero{1.0, 0.0};
const SingleQubitState kOne{0.0, 1.0};

TEST(Normalize, ScalesSingleAmplitude) {
  PureState3 s;
  s.amp[0] = 2.0;
  const PureState3 n = normalize(s);
  EXPECT_DOUBLE_EQ(n.amp[0].real(), 1.0);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(n.amp[i], cplx(0.0));
}

TEST(Normalize, UnitStateUnchanged) {
  std::mt19937_64 rng(1);
  const PureState3 s = random_state(rng);
  const PureState3 n = normalize(s);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(n.amp[i] - s.amp[i]), 0.0, 1e-15);
}

TEST(Normalize, TwoTerms) {
  PureState3 s;
  s.amp[0] = 1.0;
  s.amp[1] = 1.0;
  const PureState3 n = normalize(s);
  EXPECT_NEAR(n.amp[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(n.amp[1].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(norm_sq(n), 1.0, 1e-12);
}

TEST(Normalize, NullStateThrows) {
  EXPECT_THROW(normalize(PureState3{}), StateError);
  PureState3 doubled = basis(0);
  doubled.amp[0] = 2.0;
  EXPECT_THROW(require_normalized(doubled), StateError);
}

TEST(Overlap, Examples) {
  EXPECT_DOUBLE_EQ(overlap_sq(basis(0), {kZero, kZero, kZero}), 1.0);
  EXPECT_DOUBLE_EQ(overlap_sq(w_state(), {kZero, kZero, kZero}), 0.0);
  const SingleQubitState opt{std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0)};
  EXPECT_NEAR(overlap_sq(w_state(), {opt, opt, opt}), 4.0 / 9.0, 1e-15);
}

TEST(Overlap, InUnitInterval) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = overlap_sq(random_state(rng), {random_qubit(rng), random_qubit(rng), random_qubit(rng)});
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-15);
  }
}

TEST(PairReduction, WState) {
  const PairReduction red = pair_reduction(w_state(), Pair::AB);
  EXPECT_NEAR((red.r1 - Vec3(0, 0, 1.0 / 3)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((red.r2 - Vec3(0, 0, 1.0 / 3)).norm(), 0.0, 1e-15);
  Mat3 g = Mat3::Zero();
  g.diagonal() << 2.0 / 3, 2.0 / 3, -1.0 / 3;
  EXPECT_NEAR((red.g - g).norm(), 0.0, 1e-15);
}

TEST(PairReduction, WType) {
  const double a = 0.3, b = 0.5, c = std::sqrt(1 - 0.09 - 0.25);
  const PairReduction red = pair_reduction(wtype_state(a, b, c), Pair::AB);
  EXPECT_NEAR((red.r1 - Vec3(0, 0, b * b + c * c - a * a)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((red.r2 - Vec3(0, 0, a * a + c * c - b * b)).norm(), 0.0, 1e-14);
  Mat3 g = Mat3::Zero();
  g.diagonal() << 2 * a * b, 2 * a * b, -(a * a + b * b - c * c);
  EXPECT_NEAR((red.g - g).norm(), 0.0, 1e-14);
}

TEST(PairReduction, Symmetric) {
  const double a = 0.5, b = 0.1, c = 0.7, d = std::sqrt(1 - 0.25 - 0.01 - 0.49);
  const PairReduction red = pair_reduction(symmetric_state(a, b, c, d), Pair::AB);
  const double r = a * a + c * c - b * b - d * d;
  const double w = 2 * a * d + 2 * b * c;
  EXPECT_NEAR((red.r1 - Vec3(0, 0, r)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((red.r2 - Vec3(0, 0, r)).norm(), 0.0, 1e-14);
  Mat3 g = Mat3::Zero();
  g.diagonal() << w, -w, 1.0;
  EXPECT_NEAR((red.g - g).norm(), 0.0, 1e-14);
}

TEST(PairReduction, RandomStatesAreRealAndBounded) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const PureState3 s = random_state(rng);
    for (Pair p : {Pair::AB, Pair::AC, Pair::BC}) {
      const PairReduction red = pair_reduction(s, p);  // throws if an imaginary residue exceeds 1e-12
      ASSERT_LE(red.r1.norm(), 1.0 + 1e-12);
      ASSERT_LE(red.r2.norm(), 1.0 + 1e-12);
      const Eigen::JacobiSVD<Mat3> svd(red.g);
      ASSERT_LE(svd.singularValues()[0], 1.0 + 1e-12);
    }
  }
}

TEST(OverlapForm, Examples) {
  const Vec3 s(2 * std::sqrt(2.0) / 3, 0, 1.0 / 3);
  EXPECT_NEAR(overlap_form(pair_reduction(w_state(), Pair::AB), s, s), 4.0 / 9, 1e-15);
  EXPECT_NEAR(overlap_form(pair_reduction(ghz_state(), Pair::AB), Vec3::UnitZ(), Vec3::UnitZ()), 0.5, 1e-15);
  PairReduction mixed;
  mixed.r1 = mixed.r2 = Vec3::Zero();
  mixed.g = Mat3::Zero();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    EXPECT_DOUBLE_EQ(overlap_form(mixed, random_unit(rng), random_unit(rng)), 0.25);
  }
}

TEST(OverlapForm, RejectsNonUnitVectors) {
  const PairReduction red = pair_reduction(w_state(), Pair::AB);
  EXPECT_THROW(overlap_form(red, Vec3(0, 0, 2), Vec3::UnitZ()), InputError);
}

TEST(OverlapForm, MatchesOptimalThirdFactor) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const PureState3 s = random_state(rng);
    const SingleQubitState q1 = random_qubit(rng), q2 = random_qubit(rng);
    const auto c = contract_except(s, Qubit::C, q1, q2);
    const double n = std::sqrt(std::norm(c[0]) + std::norm(c[1]));
    const SingleQubitState q3{c[0] / n, c[1] / n};
    const double direct = overlap_sq(s, {q1, q2, q3});
    const double form = overlap_form(pair_reduction(s, Pair::AB), state_to_bloch(q1), state_to_bloch(q2));
    ASSERT_NEAR(direct, form, 1e-10);
  }
}

TEST(OverlapForm, UpperBound) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const PairReduction red = pair_reduction(random_state(rng), Pair::AB);
    const Eigen::JacobiSVD<Mat3> svd(red.g);
    const double bound = 0.25 * (1 + red.r1.norm() + red.r2.norm() + svd.singularValues()[0]);
    for (int k = 0; k < 50; ++k) {
      ASSERT_LE(overlap_form(red, random_unit(rng), random_unit(rng)), bound + 1e-15);
    }
  }
}

TEST(Bloch, PolesAndAxis) {
  const SingleQubitState n = bloch_to_state(Vec3::UnitZ());
  EXPECT_NEAR(std::abs(n.a0 - cplx(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(n.a1), 0.0, 1e-15);
  const SingleQubitState s = bloch_to_state(-Vec3::UnitZ());
  EXPECT_NEAR(std::abs(s.a0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.a1 - cplx(1.0)), 0.0, 1e-15);
  const SingleQubitState x = bloch_to_state(Vec3::UnitX());
  EXPECT_NEAR(std::abs(x.a0 - cplx(std::sqrt(0.5))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.a1 - cplx(std::sqrt(0.5))), 0.0, 1e-15);
  EXPECT_THROW(bloch_to_state(Vec3(0.5, 0, 0)), InputError);
}

TEST(Bloch, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 s = random_unit(rng);
    const SingleQubitState q = bloch_to_state(s);
    ASSERT_NEAR((state_to_bloch(q) - s).norm(), 0.0, 1e-14);
    ASSERT_GE(q.a0.real(), 0.0);
    ASSERT_EQ(q.a0.imag(), 0.0);
  }
}

TEST(ProjectedThird, SmallerEigenvalueVanishes) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    const Mat2c m = projected_third_matrix(random_state(rng), random_qubit(rng), random_qubit(rng));
    const Eigen::SelfAdjointEigenSolver<Mat2c> es(m, Eigen::EigenvaluesOnly);
    ASSERT_LT(std::abs(es.eigenvalues()[0]), 1e-12);
    const auto ev = hermitian_eigenvalues(m);
    ASSERT_NEAR(ev[1], es.eigenvalues()[1], 1e-14);
    ASSERT_LT(std::abs(ev[0]), 1e-12);
  }
}

TEST(ProjectedThird, LargerEigenvalueIsEliminatedOverlap) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const PureState3 s = random_state(rng);
    const SingleQubitState q1 = random_qubit(rng), q2 = random_qubit(rng);
    const auto c = contract_except(s, Qubit::C, q1, q2);
    EXPECT_NEAR(hermitian_eigenvalues(projected_third_matrix(s, q1, q2))[1],
                std::norm(c[0]) + std::norm(c[1]), 1e-14);
  }
}

TEST(ApplyLocal, PreservesOverlapUnderMatchingRotation) {
  std::mt19937_64 rng(10);
  const PureState3 s = random_state(rng);
  const Mat2c ua = testing::random_unitary(rng), ub = testing::random_unitary(rng),
              uc = testing::random_unitary(rng);
  const PureState3 t = apply_local(s, ua, ub, uc);
  EXPECT_NEAR(norm_sq(t), 1.0, 1e-14);
  auto rotate = [](const Mat2c& u, const SingleQubitState& q) {
    return SingleQubitState{u(0, 0) * q.a0 + u(0, 1) * q.a1, u(1, 0) * q.a0 + u(1, 1) * q.a1};
  };
  const ProductState p{random_qubit(rng), random_qubit(rng), random_qubit(rng)};
  EXPECT_NEAR(overlap_sq(s, p), overlap_sq(t, {rotate(ua, p.q1), rotate(ub, p.q2), rotate(uc, p.q3)}), 1e-14);
}

}  // namespace
}  // namespace geomeas

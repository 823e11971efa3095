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

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace geomeas {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

/// Real Bloch vector s of a single-qubit density matrix (1 + s.sigma)/2.
using BlochVector = Vec3;

enum class Qubit { A = 0, B = 1, C = 2 };
enum class Pair { AB, AC, BC };

const char* to_string(Pair pair) noexcept;

/// Three-qubit pure state. Basis ket |q1 q2 q3> lives at index 4*q1 + 2*q2 + q3,
/// so qubit A is the most significant bit.
struct PureState3 {
  std::array<cplx, 8> amp{};

  static constexpr std::size_t index(int q1, int q2, int q3) noexcept {
    return static_cast<std::size_t>(4 * q1 + 2 * q2 + q3);
  }
  cplx& operator[](std::size_t i) { return amp[i]; }
  const cplx& operator[](std::size_t i) const { return amp[i]; }
};

struct SingleQubitState {
  cplx a0{1.0};
  cplx a1{0.0};

  cplx operator[](int i) const noexcept { return i == 0 ? a0 : a1; }
};

struct ProductState {
  SingleQubitState q1;
  SingleQubitState q2;
  SingleQubitState q3;

  const SingleQubitState& operator[](Qubit q) const noexcept {
    return q == Qubit::A ? q1 : (q == Qubit::B ? q2 : q3);
  }
  SingleQubitState& operator[](Qubit q) noexcept {
    return q == Qubit::A ? q1 : (q == Qubit::B ? q2 : q3);
  }
};

/// Bloch data of a two-qubit reduced density matrix: r1 = tr(rho_1 sigma),
/// r2 = tr(rho_2 sigma), g_ij = tr(rho sigma_i x sigma_j). Rows of g belong to
/// the first kept qubit.
struct PairReduction {
  Vec3 r1 = Vec3::Zero();
  Vec3 r2 = Vec3::Zero();
  Mat3 g = Mat3::Zero();
  Pair pair = Pair::AB;
};

inline constexpr double kNormTol = 1e-12;
inline constexpr double kBlochTol = 1e-10;
inline constexpr double kRealTol = 1e-12;

double norm_sq(const PureState3& state) noexcept;
bool is_normalized(const PureState3& state, double tol = kNormTol) noexcept;

/// Scales by a positive real factor; throws StateError("null state") on the zero vector.
PureState3 normalize(const PureState3& state);
/// Throws StateError unless |psi|^2 = 1 within kNormTol.
void require_normalized(const PureState3& state);

SingleQubitState normalize(const SingleQubitState& q);
PureState3 product_state(const ProductState& prod);

/// <q1 q2 q3|psi>
cplx overlap(const PureState3& state, const ProductState& prod) noexcept;
/// |<q1 q2 q3|psi>|^2
double overlap_sq(const PureState3& state, const ProductState& prod) noexcept;

/// Partial contraction of the state with single-qubit bras on every qubit except
/// `free`. `first` and `second` act on the remaining qubits in A, B, C order. The
/// returned (unnormalized) ket lives on `free`.
std::array<cplx, 2> contract_except(const PureState3& state, Qubit free,
                                    const SingleQubitState& first,
                                    const SingleQubitState& second) noexcept;

/// tr_AB(rho (q1q1^+ x q2q2^+ x 1)), built from the density matrix of the state.
Mat2c projected_third_matrix(const PureState3& state, const SingleQubitState& q1,
                             const SingleQubitState& q2);

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat2c& m);

/// Reduced density matrix of a qubit pair, basis index 2*i + j for |i j>.
Eigen::Matrix4cd reduced_density(const PureState3& state, Pair pair);

PairReduction pair_reduction(const PureState3& state, Pair pair);

/// (1 + s1.r1 + s2.r2 + s1^T g s2) / 4. Throws InputError on non-unit vectors.
double overlap_form(const PairReduction& red, const BlochVector& s1, const BlochVector& s2);
/// Same quantity without the unit-norm check.
double overlap_form_unchecked(const PairReduction& red, const BlochVector& s1,
                              const BlochVector& s2) noexcept;

/// Pure state with Bloch vector s. Phase convention: |0> amplitude real and
/// non-negative; the south pole maps to exactly |1>.
SingleQubitState bloch_to_state(const BlochVector& s);
BlochVector state_to_bloch(const SingleQubitState& q) noexcept;

/// Applies u_A x u_B x u_C.
PureState3 apply_local(const PureState3& state, const Mat2c& ua, const Mat2c& ub,
                       const Mat2c& uc);

}  // namespace geomeas

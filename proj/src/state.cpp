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

#include "geomeas/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geomeas/errors.hpp"

namespace geomeas {

namespace {

const std::array<Mat2c, 3>& pauli() {
  static const std::array<Mat2c, 3> sigma = [] {
    const cplx i{0.0, 1.0};
    std::array<Mat2c, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << 0.0, -i, i, 0.0;
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma;
}

struct PairLayout {
  int first;
  int second;
  int traced;
};

// Bit positions: qubit A is bit 2, B is bit 1, C is bit 0.
PairLayout layout(Pair pair) noexcept {
  switch (pair) {
    case Pair::AB: return {0, 1, 2};
    case Pair::AC: return {0, 2, 1};
    case Pair::BC: return {1, 2, 0};
  }
  return {0, 1, 2};
}

std::size_t full_index(const PairLayout& l, int b_first, int b_second, int b_traced) noexcept {
  int bits[3] = {0, 0, 0};
  bits[l.first] = b_first;
  bits[l.second] = b_second;
  bits[l.traced] = b_traced;
  return PureState3::index(bits[0], bits[1], bits[2]);
}

Eigen::Matrix4cd kron(const Mat2c& a, const Mat2c& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double checked_real(cplx z, const char* what) {
  if (std::abs(z.imag()) >= kRealTol) {
    throw InternalError(std::string("imaginary residue in ") + what + ": " +
                        std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace

const char* to_string(Pair pair) noexcept {
  switch (pair) {
    case Pair::AB: return "AB";
    case Pair::AC: return "AC";
    case Pair::BC: return "BC";
  }
  return "?";
}

double norm_sq(const PureState3& state) noexcept {
  double n = 0.0;
  for (const auto& a : state.amp) n += std::norm(a);
  return n;
}

bool is_normalized(const PureState3& state, double tol) noexcept {
  return std::abs(norm_sq(state) - 1.0) <= tol;
}

PureState3 normalize(const PureState3& state) {
  const double n = norm_sq(state);
  if (!(n > 0.0) || !std::isfinite(n)) throw StateError("null state");
  const double scale = 1.0 / std::sqrt(n);
  PureState3 out;
  for (std::size_t i = 0; i < 8; ++i) out.amp[i] = state.amp[i] * scale;
  return out;
}

void require_normalized(const PureState3& state) {
  if (!is_normalized(state)) {
    throw StateError("state is not normalized (|psi|^2 = " + std::to_string(norm_sq(state)) + ")");
  }
}

SingleQubitState normalize(const SingleQubitState& q) {
  const double n = std::sqrt(std::norm(q.a0) + std::norm(q.a1));
  if (!(n > 0.0)) throw StateError("null single-qubit state");
  return {q.a0 / n, q.a1 / n};
}

PureState3 product_state(const ProductState& prod) {
  PureState3 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out.amp[PureState3::index(i, j, k)] = prod.q1[i] * prod.q2[j] * prod.q3[k];
  return out;
}

cplx overlap(const PureState3& state, const ProductState& prod) noexcept {
  cplx acc{0.0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        acc += std::conj(prod.q1[i] * prod.q2[j] * prod.q3[k]) *
               state.amp[PureState3::index(i, j, k)];
  return acc;
}

double overlap_sq(const PureState3& state, const ProductState& prod) noexcept {
  return std::norm(overlap(state, prod));
}

std::array<cplx, 2> contract_except(const PureState3& state, Qubit free,
                                    const SingleQubitState& first,
                                    const SingleQubitState& second) noexcept {
  std::array<cplx, 2> out{};
  for (int f = 0; f < 2; ++f) {
    cplx acc{0.0};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        std::size_t idx = 0;
        switch (free) {
          case Qubit::A: idx = PureState3::index(f, x, y); break;
          case Qubit::B: idx = PureState3::index(x, f, y); break;
          case Qubit::C: idx = PureState3::index(x, y, f); break;
        }
        acc += std::conj(first[x] * second[y]) * state.amp[idx];
      }
    }
    out[f] = acc;
  }
  return out;
}

Mat2c projected_third_matrix(const PureState3& state, const SingleQubitState& q1,
                             const SingleQubitState& q2) {
  // M_{k k'} = sum <i j k|rho|i' j' k'> <i'|p1|i> <j'|p2|j>
  Mat2c m = Mat2c::Zero();
  for (int k = 0; k < 2; ++k)
    for (int kp = 0; kp < 2; ++kp)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int ip = 0; ip < 2; ++ip)
            for (int jp = 0; jp < 2; ++jp) {
              const cplx rho = state.amp[PureState3::index(i, j, k)] *
                               std::conj(state.amp[PureState3::index(ip, jp, kp)]);
              const cplx p1 = q1[ip] * std::conj(q1[i]);
              const cplx p2 = q2[jp] * std::conj(q2[j]);
              m(k, kp) += rho * p1 * p2;
            }
  return m;
}

std::array<double, 2> hermitian_eigenvalues(const Mat2c& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_tr = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double rad = std::sqrt(half_diff * half_diff + std::norm(m(0, 1)));
  const double hi = half_tr + rad;
  // det / hi avoids cancellation in half_tr - rad for a near-zero eigenvalue.
  const double det = a * d - std::norm(m(0, 1));
  const double lo = hi != 0.0 ? det / hi : half_tr - rad;
  return {lo, hi};
}

Eigen::Matrix4cd reduced_density(const PureState3& state, Pair pair) {
  const PairLayout l = layout(pair);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
          cplx acc{0.0};
          for (int t = 0; t < 2; ++t)
            acc += state.amp[full_index(l, i1, i2, t)] * std::conj(state.amp[full_index(l, j1, j2, t)]);
          rho(2 * i1 + i2, 2 * j1 + j2) = acc;
        }
  return rho;
}

PairReduction pair_reduction(const PureState3& state, Pair pair) {
  const Eigen::Matrix4cd rho = reduced_density(state, pair);
  const auto& s = pauli();
  const Mat2c id = Mat2c::Identity();
  PairReduction red;
  red.pair = pair;
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix4cd op1 = kron(s[i], id);
    Eigen::Matrix4cd op2 = kron(id, s[i]);
    red.r1(i) = checked_real((rho * op1).trace(), "r1");
    red.r2(i) = checked_real((rho * op2).trace(), "r2");
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix4cd op = kron(s[i], s[j]);
      red.g(i, j) = checked_real((rho * op).trace(), "g");
    }
  }
  return red;
}

double overlap_form_unchecked(const PairReduction& red, const BlochVector& s1,
                              const BlochVector& s2) noexcept {
  return 0.25 * (1.0 + s1.dot(red.r1) + s2.dot(red.r2) + s1.dot(red.g * s2));
}

double overlap_form(const PairReduction& red, const BlochVector& s1, const BlochVector& s2) {
  if (std::abs(s1.norm() - 1.0) > kBlochTol || std::abs(s2.norm() - 1.0) > kBlochTol) {
    throw InputError("overlap_form requires unit Bloch vectors");
  }
  return overlap_form_unchecked(red, s1, s2);
}

SingleQubitState bloch_to_state(const BlochVector& s) {
  const double n = s.norm();
  if (std::abs(n - 1.0) > kBlochTol) throw InputError("Bloch vector is not unit");
  const Vec3 u = s / n;
  const double z = std::clamp(u.z(), -1.0, 1.0);
  const double c = std::sqrt(0.5 * (1.0 + z));
  const double sn = std::sqrt(0.5 * (1.0 - z));
  const double rho = std::hypot(u.x(), u.y());
  if (rho == 0.0) {
    return z > 0.0 ? SingleQubitState{1.0, 0.0} : SingleQubitState{0.0, 1.0};
  }
  const cplx phase{u.x() / rho, u.y() / rho};
  return {cplx{c, 0.0}, sn * phase};
}

BlochVector state_to_bloch(const SingleQubitState& q) noexcept {
  const cplx c = std::conj(q.a0) * q.a1;
  const double n = std::norm(q.a0) + std::norm(q.a1);
  return Vec3(2.0 * c.real(), 2.0 * c.imag(), std::norm(q.a0) - std::norm(q.a1)) / n;
}

PureState3 apply_local(const PureState3& state, const Mat2c& ua, const Mat2c& ub,
                       const Mat2c& uc) {
  PureState3 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        cplx acc{0.0};
        for (int ip = 0; ip < 2; ++ip)
          for (int jp = 0; jp < 2; ++jp)
            for (int kp = 0; kp < 2; ++kp)
              acc += ua(i, ip) * ub(j, jp) * uc(k, kp) * state.amp[PureState3::index(ip, jp, kp)];
        out.amp[PureState3::index(i, j, k)] = acc;
      }
  return out;
}

}  // namespace geomeas

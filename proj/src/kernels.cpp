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

#include "geomeas/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "geomeas/errors.hpp"

namespace geomeas::kernels {

#ifndef GEOMEAS_HAVE_AVX2
namespace avx2 {
void contract_norms(const double* v, const double* re0, const double* im0, const double* re1,
                    const double* im1, std::size_t n, double* out) noexcept {
  scalar::contract_norms(v, re0, im0, re1, im1, n, out);
}
void overlap_form(const double* coeffs, const double* x1, const double* y1, const double* z1,
                  const double* x2, const double* y2, const double* z2, std::size_t n,
                  double* out) noexcept {
  scalar::overlap_form(coeffs, x1, y1, z1, x2, y2, z2, n, out);
}
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(GEOMEAS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  const Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("GEOMEAS_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && best == Isa::avx2) return Isa::avx2;
  }
  return best;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw InputError("instruction set " + std::string(isa_name(isa)) + " is not available");
  }
  active().store(isa, std::memory_order_relaxed);
}

void QubitBatch::push_back(const SingleQubitState& q) {
  re0.push_back(q.a0.real());
  im0.push_back(-q.a0.imag());
  re1.push_back(q.a1.real());
  im1.push_back(-q.a1.imag());
}

void BlochBatch::push_back(const BlochVector& s) {
  x.push_back(s.x());
  y.push_back(s.y());
  z.push_back(s.z());
}

PartialKet contract_first(const PureState3& state, const SingleQubitState& q1) noexcept {
  PartialKet v{};
  for (int jk = 0; jk < 4; ++jk) {
    const cplx c = std::conj(q1.a0) * state.amp[static_cast<std::size_t>(jk)] +
                   std::conj(q1.a1) * state.amp[static_cast<std::size_t>(4 + jk)];
    v[2 * jk] = c.real();
    v[2 * jk + 1] = c.imag();
  }
  return v;
}

void contract_norms(const PartialKet& v, const QubitBatch& q, std::span<double> out) {
  const std::size_t n = q.size();
  if (out.size() < n) throw InputError("contract_norms: output span too small");
  if (active_isa() == Isa::avx2) {
    avx2::contract_norms(v.data(), q.re0.data(), q.im0.data(), q.re1.data(), q.im1.data(), n,
                         out.data());
  } else {
    scalar::contract_norms(v.data(), q.re0.data(), q.im0.data(), q.re1.data(), q.im1.data(), n,
                           out.data());
  }
}

std::array<double, 15> pack_reduction(const PairReduction& red) noexcept {
  std::array<double, 15> c{};
  for (int i = 0; i < 3; ++i) {
    c[static_cast<std::size_t>(i)] = red.r1(i);
    c[static_cast<std::size_t>(3 + i)] = red.r2(i);
    for (int j = 0; j < 3; ++j) c[static_cast<std::size_t>(6 + 3 * i + j)] = red.g(i, j);
  }
  return c;
}

void overlap_form_batch(const PairReduction& red, const BlochBatch& s1, const BlochBatch& s2,
                        std::span<double> out) {
  const std::size_t n = s1.size();
  if (s2.size() != n || out.size() < n) throw InputError("overlap_form_batch: size mismatch");
  const auto c = pack_reduction(red);
  if (active_isa() == Isa::avx2) {
    avx2::overlap_form(c.data(), s1.x.data(), s1.y.data(), s1.z.data(), s2.x.data(), s2.y.data(),
                       s2.z.data(), n, out.data());
  } else {
    scalar::overlap_form(c.data(), s1.x.data(), s1.y.data(), s1.z.data(), s2.x.data(),
                         s2.y.data(), s2.z.data(), n, out.data());
  }
}

}  // namespace geomeas::kernels

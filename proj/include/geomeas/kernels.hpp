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

// Batched inner loops shared by the brute-force maximizer and the stationarity
// seeding. Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant; the variant is chosen once at runtime from CPUID and can be
// overridden with GEOMEAS_ISA=scalar|avx2 or set_active_isa().

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "geomeas/state.hpp"

namespace geomeas::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
/// Best instruction set compiled in and supported by this CPU.
Isa detected_isa() noexcept;
bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
/// Throws InputError when `isa` is not available.
void set_active_isa(Isa isa);

/// Single-qubit states stored conjugated, structure-of-arrays.
struct QubitBatch {
  std::vector<double> re0, im0, re1, im1;

  std::size_t size() const noexcept { return re0.size(); }
  void push_back(const SingleQubitState& q);
};

/// Bloch vectors, structure-of-arrays.
struct BlochBatch {
  std::vector<double> x, y, z;

  std::size_t size() const noexcept { return x.size(); }
  void push_back(const BlochVector& s);
};

/// The two-qubit ket v_{jk} = <q1|psi> for a fixed first factor, flattened as
/// (re, im) of v00, v01, v10, v11.
using PartialKet = std::array<double, 8>;

PartialKet contract_first(const PureState3& state, const SingleQubitState& q1) noexcept;

/// out[n] = || sum_j conj(q[n]_j) v_{j.} ||^2, i.e. the nonzero eigenvalue of the
/// projected third-qubit matrix for the pair (q1, q[n]).
void contract_norms(const PartialKet& v, const QubitBatch& q, std::span<double> out);

/// out[n] = overlap_form(red, s1[n], s2[n]) without the unit-norm check.
void overlap_form_batch(const PairReduction& red, const BlochBatch& s1, const BlochBatch& s2,
                        std::span<double> out);

/// Raw-pointer entry points of each variant; exposed for equivalence tests.
namespace scalar {
void contract_norms(const double* v, const double* re0, const double* im0, const double* re1,
                    const double* im1, std::size_t n, double* out) noexcept;
void overlap_form(const double* coeffs, const double* x1, const double* y1, const double* z1,
                  const double* x2, const double* y2, const double* z2, std::size_t n,
                  double* out) noexcept;
}  // namespace scalar

namespace avx2 {
void contract_norms(const double* v, const double* re0, const double* im0, const double* re1,
                    const double* im1, std::size_t n, double* out) noexcept;
void overlap_form(const double* coeffs, const double* x1, const double* y1, const double* z1,
                  const double* x2, const double* y2, const double* z2, std::size_t n,
                  double* out) noexcept;
}  // namespace avx2

/// coeffs layout for overlap_form: r1[3], r2[3], g row-major[9].
std::array<double, 15> pack_reduction(const PairReduction& red) noexcept;

}  // namespace geomeas::kernels

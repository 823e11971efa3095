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

#include <immintrin.h>

#include "geomeas/kernels.hpp"

namespace geomeas::kernels::avx2 {

void contract_norms(const double* v, const double* re0, const double* im0, const double* re1,
                    const double* im1, std::size_t n, double* out) noexcept {
  const __m256d v0r = _mm256_set1_pd(v[0]), v0i = _mm256_set1_pd(v[1]);
  const __m256d v1r = _mm256_set1_pd(v[2]), v1i = _mm256_set1_pd(v[3]);
  const __m256d v2r = _mm256_set1_pd(v[4]), v2i = _mm256_set1_pd(v[5]);
  const __m256d v3r = _mm256_set1_pd(v[6]), v3i = _mm256_set1_pd(v[7]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0r = _mm256_loadu_pd(re0 + i), a0i = _mm256_loadu_pd(im0 + i);
    const __m256d a1r = _mm256_loadu_pd(re1 + i), a1i = _mm256_loadu_pd(im1 + i);

    __m256d c0r = _mm256_mul_pd(a0r, v0r);
    c0r = _mm256_fnmadd_pd(a0i, v0i, c0r);
    c0r = _mm256_fmadd_pd(a1r, v2r, c0r);
    c0r = _mm256_fnmadd_pd(a1i, v2i, c0r);

    __m256d c0i = _mm256_mul_pd(a0r, v0i);
    c0i = _mm256_fmadd_pd(a0i, v0r, c0i);
    c0i = _mm256_fmadd_pd(a1r, v2i, c0i);
    c0i = _mm256_fmadd_pd(a1i, v2r, c0i);

    __m256d c1r = _mm256_mul_pd(a0r, v1r);
    c1r = _mm256_fnmadd_pd(a0i, v1i, c1r);
    c1r = _mm256_fmadd_pd(a1r, v3r, c1r);
    c1r = _mm256_fnmadd_pd(a1i, v3i, c1r);

    __m256d c1i = _mm256_mul_pd(a0r, v1i);
    c1i = _mm256_fmadd_pd(a0i, v1r, c1i);
    c1i = _mm256_fmadd_pd(a1r, v3i, c1i);
    c1i = _mm256_fmadd_pd(a1i, v3r, c1i);

    __m256d acc = _mm256_mul_pd(c0r, c0r);
    acc = _mm256_fmadd_pd(c0i, c0i, acc);
    acc = _mm256_fmadd_pd(c1r, c1r, acc);
    acc = _mm256_fmadd_pd(c1i, c1i, acc);
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < n) scalar::contract_norms(v, re0 + i, im0 + i, re1 + i, im1 + i, n - i, out + i);
}

void overlap_form(const double* c, const double* x1, const double* y1, const double* z1,
                  const double* x2, const double* y2, const double* z2, std::size_t n,
                  double* out) noexcept {
  __m256d k[15];
  for (int j = 0; j < 15; ++j) k[j] = _mm256_set1_pd(c[j]);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d quarter = _mm256_set1_pd(0.25);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_loadu_pd(x1 + i), ay = _mm256_loadu_pd(y1 + i), az = _mm256_loadu_pd(z1 + i);
    const __m256d bx = _mm256_loadu_pd(x2 + i), by = _mm256_loadu_pd(y2 + i), bz = _mm256_loadu_pd(z2 + i);

    const __m256d gx = _mm256_fmadd_pd(k[8], bz, _mm256_fmadd_pd(k[7], by, _mm256_mul_pd(k[6], bx)));
    const __m256d gy = _mm256_fmadd_pd(k[11], bz, _mm256_fmadd_pd(k[10], by, _mm256_mul_pd(k[9], bx)));
    const __m256d gz = _mm256_fmadd_pd(k[14], bz, _mm256_fmadd_pd(k[13], by, _mm256_mul_pd(k[12], bx)));

    __m256d acc = _mm256_fmadd_pd(k[0], ax, one);
    acc = _mm256_fmadd_pd(k[1], ay, acc);
    acc = _mm256_fmadd_pd(k[2], az, acc);
    acc = _mm256_fmadd_pd(k[3], bx, acc);
    acc = _mm256_fmadd_pd(k[4], by, acc);
    acc = _mm256_fmadd_pd(k[5], bz, acc);
    acc = _mm256_fmadd_pd(ax, gx, acc);
    acc = _mm256_fmadd_pd(ay, gy, acc);
    acc = _mm256_fmadd_pd(az, gz, acc);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(quarter, acc));
  }
  if (i < n) scalar::overlap_form(c, x1 + i, y1 + i, z1 + i, x2 + i, y2 + i, z2 + i, n - i, out + i);
}

}  // namespace geomeas::kernels::avx2

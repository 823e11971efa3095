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

namespace geomeas::kernels::scalar {

void contract_norms(const double* v, const double* re0, const double* im0, const double* re1,
                    const double* im1, std::size_t n, double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    // c_k = b0 * v_{0k} + b1 * v_{1k}, with b already conjugated.
    const double c0r = re0[i] * v[0] - im0[i] * v[1] + re1[i] * v[4] - im1[i] * v[5];
    const double c0i = re0[i] * v[1] + im0[i] * v[0] + re1[i] * v[5] + im1[i] * v[4];
    const double c1r = re0[i] * v[2] - im0[i] * v[3] + re1[i] * v[6] - im1[i] * v[7];
    const double c1i = re0[i] * v[3] + im0[i] * v[2] + re1[i] * v[7] + im1[i] * v[6];
    out[i] = c0r * c0r + c0i * c0i + c1r * c1r + c1i * c1i;
  }
}

void overlap_form(const double* c, const double* x1, const double* y1, const double* z1,
                  const double* x2, const double* y2, const double* z2, std::size_t n,
                  double* out) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double gx = c[6] * x2[i] + c[7] * y2[i] + c[8] * z2[i];
    const double gy = c[9] * x2[i] + c[10] * y2[i] + c[11] * z2[i];
    const double gz = c[12] * x2[i] + c[13] * y2[i] + c[14] * z2[i];
    const double lin = c[0] * x1[i] + c[1] * y1[i] + c[2] * z1[i] +
                       c[3] * x2[i] + c[4] * y2[i] + c[5] * z2[i];
    const double bil = x1[i] * gx + y1[i] * gy + z1[i] * gz;
    out[i] = 0.25 * (1.0 + lin + bil);
  }
}

}  // namespace geomeas::kernels::scalar

// Copyright 2026-present the vpid project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AArch64 only; Advanced SIMD is baseline there so no runtime check is needed.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "vpid/simd/kernels.hpp"

namespace vpid::simd::neon {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void gemv(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void sq_diff_accumulate(const double* a, const double* b, double* acc, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        vst1q_f64(acc + i, vfmaq_f64(vld1q_f64(acc + i), d, d));
    }
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc[i] += d * d;
    }
}

double max_value(const double* a, std::size_t n) {
    if (n == 0) return 0.0;
    std::size_t i = 0;
    double r = a[0];
    if (n >= 2) {
        float64x2_t m = vld1q_f64(a);
        for (i = 2; i + 2 <= n; i += 2) m = vmaxq_f64(m, vld1q_f64(a + i));
        r = vmaxvq_f64(m);
    }
    for (; i < n; ++i) r = std::max(r, a[i]);
    return r;
}

}  // namespace vpid::simd::neon

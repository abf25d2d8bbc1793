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

#pragma once

// Vector kernels used by the data-parallel inner loops (weighted residual
// norms, gain-matrix products in the Monte Carlo re-identification, noise
// assembly). Every kernel has a scalar reference implementation; SIMD
// variants are chosen once at startup from the CPU feature set.
//
// Setting VPID_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace vpid::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

using DotFn = double (*)(const double* a, const double* b, std::size_t n);
/// y[0..rows) = A x, A row-major rows x cols
using GemvFn = void (*)(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
/// y += alpha x
using AxpyFn = void (*)(double alpha, const double* x, double* y, std::size_t n);
/// acc += (a - b)^2 elementwise
using SqDiffAccumulateFn = void (*)(const double* a, const double* b, double* acc, std::size_t n);
/// max_i a_i (0 for n == 0)
using MaxValueFn = double (*)(const double* a, std::size_t n);

struct KernelTable {
    Isa isa;
    DotFn dot;
    GemvFn gemv;
    AxpyFn axpy;
    SqDiffAccumulateFn sq_diff_accumulate;
    MaxValueFn max_value;
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void gemv(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void sq_diff_accumulate(const double* a, const double* b, double* acc, std::size_t n);
double max_value(const double* a, std::size_t n);
}  // namespace scalar

#if defined(VPID_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void gemv(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void sq_diff_accumulate(const double* a, const double* b, double* acc, std::size_t n);
double max_value(const double* a, std::size_t n);
}  // namespace avx2
#endif

#if defined(VPID_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void gemv(const double* a, const double* x, double* y, std::size_t rows, std::size_t cols);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void sq_diff_accumulate(const double* a, const double* b, double* acc, std::size_t n);
double max_value(const double* a, std::size_t n);
}  // namespace neon
#endif

const KernelTable& scalar_kernels() noexcept;

/// Table for `isa`, or nullptr when it was not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa) noexcept;

/// Best table for this machine (honours VPID_SIMD).
const KernelTable& active() noexcept;

// Convenience wrappers over active().
inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y) {
    active().gemv(a.data(), x.data(), y.data(), y.size(), x.size());
}
inline void sq_diff_accumulate(std::span<const double> a, std::span<const double> b, std::span<double> acc) {
    active().sq_diff_accumulate(a.data(), b.data(), acc.data(), acc.size());
}
inline double max_value(std::span<const double> a) { return active().max_value(a.data(), a.size()); }

}  // namespace vpid::simd

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

#include <cstdlib>
#include <string_view>

#include "vpid/simd/kernels.hpp"

namespace vpid::simd {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, scalar::dot, scalar::gemv, scalar::axpy, scalar::sq_diff_accumulate, scalar::max_value};

#if defined(VPID_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, avx2::dot, avx2::gemv, avx2::axpy, avx2::sq_diff_accumulate, avx2::max_value};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(VPID_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, neon::dot, neon::gemv, neon::axpy, neon::sq_diff_accumulate, neon::max_value};
#endif

const KernelTable& select() noexcept {
    const char* env = std::getenv("VPID_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return kScalar;
#if defined(VPID_HAVE_AVX2)
    if (cpu_has_avx2()) return kAvx2;
#endif
#if defined(VPID_HAVE_NEON)
    return kNeon;
#endif
    return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* kernels_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return &kScalar;
        case Isa::Avx2:
#if defined(VPID_HAVE_AVX2)
            return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
            return nullptr;
#endif
        case Isa::Neon:
#if defined(VPID_HAVE_NEON)
            return &kNeon;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable& active() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace vpid::simd

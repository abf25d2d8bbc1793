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

#include "vpid/tensor.hpp"

#include <ostream>

namespace vpid {

std::ostream& operator<<(std::ostream& os, const Tensor2& t) {
    os << '[';
    for (std::size_t i = 0; i < 3; ++i) {
        os << '[' << t(i, 0) << ", " << t(i, 1) << ", " << t(i, 2) << ']';
        if (i < 2) os << ", ";
    }
    return os << ']';
}

Tensor2 inverse(const Tensor2& a) {
    const double d = det(a);
    if (d == 0.0 || !std::isfinite(d)) {
        fail(ErrorCode::SingularTensor, "inverse: determinant is zero");
    }
    const double r = 1.0 / d;
    return Tensor2((a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) * r,
                   (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) * r,
                   (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) * r,
                   (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) * r,
                   (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) * r,
                   (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) * r,
                   (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) * r,
                   (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) * r,
                   (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) * r);
}

Tensor2 unimodular(const Tensor2& a) {
    const double d = det(a);
    if (!(d > 0.0)) {
        fail(ErrorCode::NonPositiveDeterminant, "unimodular: det A must be positive");
    }
    return a * (1.0 / std::cbrt(d));
}

double symmetry_residual(const Tensor2& a) noexcept {
    const double n = frobenius_norm(a);
    if (n == 0.0) return 0.0;
    return frobenius_norm(a - transpose(a)) / n;
}

bool is_positive_definite(const Tensor2& a) noexcept {
    const Tensor2 s = symmetric_part(a);
    const double m1 = s(0, 0);
    const double m2 = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    return m1 > 0.0 && m2 > 0.0 && det(s) > 0.0;
}

}  // namespace vpid

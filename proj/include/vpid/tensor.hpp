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

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>

#include "vpid/errors.hpp"

namespace vpid {

/// Dense 3x3 second-order tensor, row-major. Carrier for F, C, the inelastic
/// Cauchy-Green tensors and all stress measures.
class Tensor2 {
public:
    constexpr Tensor2() noexcept : a_{} {}
    constexpr explicit Tensor2(const std::array<double, 9>& a) noexcept : a_(a) {}
    constexpr Tensor2(double a00, double a01, double a02,
                      double a10, double a11, double a12,
                      double a20, double a21, double a22) noexcept
        : a_{a00, a01, a02, a10, a11, a12, a20, a21, a22} {}

    static constexpr Tensor2 zero() noexcept { return Tensor2(); }
    static constexpr Tensor2 identity() noexcept { return diag(1.0, 1.0, 1.0); }
    static constexpr Tensor2 diag(double d0, double d1, double d2) noexcept {
        return Tensor2(d0, 0, 0, 0, d1, 0, 0, 0, d2);
    }
    /// a (x) b
    static constexpr Tensor2 dyad(std::size_t i, std::size_t j, double value = 1.0) noexcept {
        Tensor2 t;
        t(i, j) = value;
        return t;
    }

    constexpr double& operator()(std::size_t i, std::size_t j) noexcept { return a_[3 * i + j]; }
    constexpr double operator()(std::size_t i, std::size_t j) const noexcept { return a_[3 * i + j]; }
    constexpr double& operator[](std::size_t k) noexcept { return a_[k]; }
    constexpr double operator[](std::size_t k) const noexcept { return a_[k]; }

    constexpr const std::array<double, 9>& data() const noexcept { return a_; }

    constexpr Tensor2& operator+=(const Tensor2& o) noexcept {
        for (std::size_t k = 0; k < 9; ++k) a_[k] += o.a_[k];
        return *this;
    }
    constexpr Tensor2& operator-=(const Tensor2& o) noexcept {
        for (std::size_t k = 0; k < 9; ++k) a_[k] -= o.a_[k];
        return *this;
    }
    constexpr Tensor2& operator*=(double s) noexcept {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend constexpr Tensor2 operator+(Tensor2 a, const Tensor2& b) noexcept { return a += b; }
    friend constexpr Tensor2 operator-(Tensor2 a, const Tensor2& b) noexcept { return a -= b; }
    friend constexpr Tensor2 operator-(Tensor2 a) noexcept { return a *= -1.0; }
    friend constexpr Tensor2 operator*(Tensor2 a, double s) noexcept { return a *= s; }
    friend constexpr Tensor2 operator*(double s, Tensor2 a) noexcept { return a *= s; }
    friend constexpr bool operator==(const Tensor2&, const Tensor2&) = default;

private:
    std::array<double, 9> a_;
};

std::ostream& operator<<(std::ostream& os, const Tensor2& t);

constexpr double trace(const Tensor2& a) noexcept { return a(0, 0) + a(1, 1) + a(2, 2); }

constexpr double det(const Tensor2& a) noexcept {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
         - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
         + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

constexpr Tensor2 transpose(const Tensor2& a) noexcept {
    return Tensor2(a(0, 0), a(1, 0), a(2, 0),
                   a(0, 1), a(1, 1), a(2, 1),
                   a(0, 2), a(1, 2), a(2, 2));
}

/// Matrix product A.B
constexpr Tensor2 product(const Tensor2& a, const Tensor2& b) noexcept {
    Tensor2 c;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
        }
    }
    return c;
}

constexpr Tensor2 operator*(const Tensor2& a, const Tensor2& b) noexcept { return product(a, b); }

/// Full contraction A:B
constexpr double contract(const Tensor2& a, const Tensor2& b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < 9; ++k) s += a[k] * b[k];
    return s;
}

/// tr(A.B) without forming the product.
constexpr double trace_of_product(const Tensor2& a, const Tensor2& b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, i);
    }
    return s;
}

inline double frobenius_norm(const Tensor2& a) noexcept { return std::sqrt(contract(a, a)); }

/// A - (tr A / 3) 1
constexpr Tensor2 deviator(const Tensor2& a) noexcept {
    Tensor2 d = a;
    const double m = trace(a) / 3.0;
    d(0, 0) -= m;
    d(1, 1) -= m;
    d(2, 2) -= m;
    return d;
}

constexpr Tensor2 symmetric_part(const Tensor2& a) noexcept { return 0.5 * (a + transpose(a)); }

/// Closed-form adjugate inverse. Throws SingularTensor when det A == 0.
Tensor2 inverse(const Tensor2& a);

/// (det A)^(-1/3) A. Throws NonPositiveDeterminant when det A <= 0.
Tensor2 unimodular(const Tensor2& a);

/// Relative symmetry defect |A - A^T| / |A| (0 for the zero tensor).
double symmetry_residual(const Tensor2& a) noexcept;

/// Sylvester criterion on the symmetric part.
bool is_positive_definite(const Tensor2& a) noexcept;

}  // namespace vpid

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

#include "vpid/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vpid/errors.hpp"
#include "vpid/simd/kernels.hpp"

namespace vpid {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

double NormalStream::uniform() noexcept {
    const std::uint64_t bits = splitmix64(key_ + (++counter_) * kGolden);
    // 53 random bits centred in their cell: strictly inside (0, 1).
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

NoiseModel NoiseModel::white(double sigma) {
    NoiseModel m;
    m.kind = Kind::White;
    m.sigma = sigma;
    m.validate();
    return m;
}

NoiseModel NoiseModel::autoregressive(double alpha, double sigma) {
    NoiseModel m;
    m.kind = Kind::AutoRegressive;
    m.alpha = alpha;
    m.sigma = sigma;
    m.validate();
    return m;
}

NoiseModel NoiseModel::two_source(double sigma1, double sigma2) {
    NoiseModel m;
    m.kind = Kind::TwoSource;
    m.sigma1 = sigma1;
    m.sigma2 = sigma2;
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            fail(ErrorCode::InvalidParameter, std::string("noise ") + name + " must be finite and non-negative");
        }
    };
    switch (kind) {
        case Kind::White: nonneg(sigma, "sigma"); break;
        case Kind::AutoRegressive:
            nonneg(sigma, "sigma");
            if (!(alpha >= 0.0 && alpha < 1.0)) fail(ErrorCode::InvalidParameter, "AR alpha must lie in [0, 1)");
            break;
        case Kind::TwoSource:
            nonneg(sigma1, "sigma1");
            nonneg(sigma2, "sigma2");
            break;
    }
}

std::string NoiseModel::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::White: os << "white(sigma=" << sigma << ")"; break;
        case Kind::AutoRegressive: os << "ar(alpha=" << alpha << ",sigma=" << sigma << ")"; break;
        case Kind::TwoSource: os << "two_source(sigma1=" << sigma1 << ",sigma2=" << sigma2 << ")"; break;
    }
    return os.str();
}

std::vector<double> sample_noise(const NoiseModel& model, std::span<const double> exp, NormalStream& rng) {
    model.validate();
    if (exp.empty()) fail(ErrorCode::DimensionMismatch, "sample_noise: empty observation vector");
    const std::size_t n = exp.size();
    std::vector<double> noise(n);
    switch (model.kind) {
        case NoiseModel::Kind::White:
            for (auto& v : noise) v = model.sigma * rng.normal();
            break;
        case NoiseModel::Kind::AutoRegressive: {
            // Start from the stationary law N(0, sigma^2 / (1 - alpha^2)).
            noise[0] = model.sigma / std::sqrt(1.0 - model.alpha * model.alpha) * rng.normal();
            for (std::size_t i = 1; i < n; ++i) noise[i] = model.alpha * noise[i - 1] + model.sigma * rng.normal();
            break;
        }
        case NoiseModel::Kind::TwoSource: {
            double scale = 0.0;
            for (double e : exp) scale = std::max(scale, std::abs(e));
            if (!(scale > 0.0)) fail(ErrorCode::DegenerateData, "two-source noise needs max |Exp| > 0");
            const double eps = model.sigma2 * rng.normal();
            for (auto& v : noise) v = model.sigma1 * rng.normal();
            simd::axpy(eps / scale, exp, noise);
            break;
        }
    }
    return noise;
}

std::vector<double> sample_noise(const NoiseModel& model, std::span<const double> exp, std::uint64_t seed,
                                 std::uint64_t stream) {
    NormalStream rng(seed, stream);
    return sample_noise(model, exp, rng);
}

Eigen::MatrixXd covariance(const NoiseModel& model, std::span<const double> exp) {
    model.validate();
    const auto n = static_cast<Eigen::Index>(exp.size());
    if (n == 0) fail(ErrorCode::DimensionMismatch, "covariance: empty observation vector");
    switch (model.kind) {
        case NoiseModel::Kind::White:
            return Eigen::MatrixXd::Identity(n, n) * (model.sigma * model.sigma);
        case NoiseModel::Kind::AutoRegressive:
            fail(ErrorCode::UnsupportedModel, "covariance is not provided for AR noise");
        case NoiseModel::Kind::TwoSource: {
            double scale = 0.0;
            for (double e : exp) scale = std::max(scale, std::abs(e));
            if (!(scale > 0.0)) fail(ErrorCode::DegenerateData, "two-source covariance needs max |Exp| > 0");
            const Eigen::Map<const Eigen::VectorXd> e(exp.data(), n);
            Eigen::MatrixXd cov = (model.sigma2 * model.sigma2 / (scale * scale)) * (e * e.transpose());
            cov.diagonal().array() += model.sigma1 * model.sigma1;
            return cov;
        }
    }
    return {};
}

}  // namespace vpid

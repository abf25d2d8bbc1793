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

#include "vpid/loading.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vpid {

DeformationHistory::DeformationHistory(std::vector<Keypoint> keypoints, bool project)
    : keypoints_(std::move(keypoints)), project_(project) {
    if (keypoints_.size() < 2) fail(ErrorCode::InvalidProgram, "deformation history needs at least two keypoints");
    for (std::size_t i = 0; i < keypoints_.size(); ++i) {
        if (!(det(keypoints_[i].F) > 0.0)) {
            fail(ErrorCode::NonPositiveDeterminant, "keypoint " + std::to_string(i) + " has det F <= 0");
        }
        if (i > 0 && !(keypoints_[i].time > keypoints_[i - 1].time)) {
            fail(ErrorCode::InvalidProgram, "keypoint times must be strictly increasing");
        }
    }
}

Tensor2 DeformationHistory::sample(double t) const {
    const double t0 = start_time();
    const double t1 = end_time();
    const double slack = 1e-12 * std::max(1.0, std::abs(t1 - t0));
    if (!(t >= t0 - slack && t <= t1 + slack)) {
        fail(ErrorCode::OutOfRange, "history sampled outside its time range");
    }
    t = std::clamp(t, t0, t1);
    // First keypoint with time >= t; segments are closed on the right.
    auto it = std::lower_bound(keypoints_.begin(), keypoints_.end(), t,
                               [](const Keypoint& k, double v) { return k.time < v; });
    if (it == keypoints_.begin()) ++it;
    const Keypoint& a = *(it - 1);
    const Keypoint& b = *it;
    Tensor2 F;
    if (t == b.time) {
        F = b.F;
    } else {
        const double w = (t - a.time) / (b.time - a.time);
        F = a.F * (1.0 - w) + b.F * w;
    }
    return project_ ? unimodular(F) : F;
}

DeformationHistory DeformationHistory::rescaled(double duration) const {
    if (!(duration > 0.0)) fail(ErrorCode::InvalidProgram, "history duration must be positive");
    const double t0 = start_time();
    const double scale = duration / (end_time() - t0);
    std::vector<Keypoint> k = keypoints_;
    for (auto& kp : k) kp.time = (kp.time - t0) * scale;
    k.back().time = duration;
    return DeformationHistory(std::move(k), project_);
}

DeformationHistory benchmark_history(int which, double amplitude) {
    if (!(amplitude > -1.0) || !std::isfinite(amplitude)) fail(ErrorCode::InvalidProgram, "stretch must stay positive");
    const double a = 1.0 + amplitude;
    const double b = 1.0 / std::sqrt(a);
    const Tensor2 one = Tensor2::identity();
    const Tensor2 stretch_e1 = Tensor2::diag(a, b, b);
    const Tensor2 stretch_e2 = Tensor2::diag(b, a, b);
    Tensor2 third;
    switch (which) {
        case 1: third = one; break;
        case 2: third = simple_shear(amplitude); break;
        default: fail(ErrorCode::OutOfRange, "unknown benchmark history id " + std::to_string(which));
    }
    return DeformationHistory({{0.0, one}, {1.0, stretch_e1}, {2.0, third}, {3.0, stretch_e2}, {4.0, one}}, true);
}

double StrainProgram::path_length() const noexcept {
    double l = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) l += std::abs(vertices[i] - vertices[i - 1]);
    return l;
}

double StrainProgram::shear_at(double t) const {
    if (!(t >= -1e-12 * duration && t <= duration * (1.0 + 1e-12))) {
        fail(ErrorCode::OutOfRange, "strain program sampled outside [0, duration]");
    }
    if (t >= duration) return vertices.back();
    double remaining = path_length() * std::clamp(t / duration, 0.0, 1.0);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const double seg = std::abs(vertices[i] - vertices[i - 1]);
        if (remaining <= seg || i + 1 == vertices.size()) {
            const double dir = vertices[i] >= vertices[i - 1] ? 1.0 : -1.0;
            return vertices[i - 1] + dir * std::min(remaining, seg);
        }
        remaining -= seg;
    }
    return vertices.back();
}

TensorPath StrainProgram::path() const {
    return [self = *this](double t) { return simple_shear(self.shear_at(t)); };
}

std::pair<StrainProgram, std::vector<Tensor2>> torsion_program(double max_shear, const std::vector<double>& reversals,
                                                               int n_points, double duration) {
    if (reversals.empty()) fail(ErrorCode::InvalidProgram, "torsion program needs at least one shear target");
    if (n_points < 2) fail(ErrorCode::InvalidProgram, "torsion program needs n_points >= 2");
    if (!(duration > 0.0)) fail(ErrorCode::InvalidProgram, "torsion program duration must be positive");
    for (double r : reversals) {
        if (!std::isfinite(r) || std::abs(r) > max_shear) {
            fail(ErrorCode::InvalidProgram, "shear target exceeds the configured maximum");
        }
    }

    StrainProgram p;
    p.vertices.reserve(reversals.size() + 1);
    p.vertices.push_back(0.0);
    p.vertices.insert(p.vertices.end(), reversals.begin(), reversals.end());
    p.duration = duration;
    if (!(p.path_length() > 0.0)) fail(ErrorCode::InvalidProgram, "torsion program has zero path length");

    std::vector<Tensor2> gradients;
    const auto n = static_cast<std::size_t>(n_points);
    p.times.resize(n);
    p.shear_values.resize(n);
    gradients.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (i + 1 == n) ? duration : duration * static_cast<double>(i) / static_cast<double>(n - 1);
        p.times[i] = t;
        p.shear_values[i] = p.shear_at(t);
        gradients.push_back(simple_shear(p.shear_values[i]));
    }
    return {std::move(p), std::move(gradients)};
}

StrainProgram default_torsion_program() {
    return torsion_program(TorsionDefaults::kMaxShear, TorsionDefaults::kReversals, TorsionDefaults::kPoints,
                           TorsionDefaults::kDuration)
        .first;
}

StrainProgram extended_torsion_program() {
    return torsion_program(ExtendedTorsion::kMaxShear, ExtendedTorsion::kReversals, ExtendedTorsion::kPoints,
                           ExtendedTorsion::kDuration)
        .first;
}

}  // namespace vpid

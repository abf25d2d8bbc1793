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

#include <utility>
#include <vector>

#include "vpid/constitutive.hpp"
#include "vpid/tensor.hpp"

namespace vpid {

struct Keypoint {
    double time;
    Tensor2 F;
};

/// Piecewise-linear deformation-gradient program, optionally projected onto
/// det F = 1 after interpolation.
class DeformationHistory {
public:
    DeformationHistory(std::vector<Keypoint> keypoints, bool project);

    const std::vector<Keypoint>& keypoints() const noexcept { return keypoints_; }
    bool projected() const noexcept { return project_; }
    double start_time() const noexcept { return keypoints_.front().time; }
    double end_time() const noexcept { return keypoints_.back().time; }

    /// Throws OutOfRange outside [start_time, end_time].
    Tensor2 sample(double t) const;

    /// Same program with its time axis stretched onto [0, duration].
    DeformationHistory rescaled(double duration) const;

    TensorPath path() const {
        return [self = *this](double t) { return self.sample(t); };
    }

private:
    std::vector<Keypoint> keypoints_;
    bool project_;
};

/// Closed four-segment cycles on t in [0, 4]:
///   1: 1 -> uniaxial stretch 1.2 along e1 -> 1 -> uniaxial stretch 1.2 along e2 -> 1
///   2: 1 -> uniaxial stretch 1.2 along e1 -> 1 + 0.2 e1(x)e2 -> uniaxial stretch 1.2 along e2 -> 1
/// `amplitude` replaces the 0.2 in both stretch and shear (small values give
/// purely elastic cycles). Throws OutOfRange for any other id.
DeformationHistory benchmark_history(int which, double amplitude = 0.2);

/// F = 1 + shear e1(x)e2
constexpr Tensor2 simple_shear(double shear) noexcept {
    Tensor2 F = Tensor2::identity();
    F(0, 1) = shear;
    return F;
}

/// Shear-controlled program emulating torsion of a thin-walled tube: the
/// engineering shear moves at constant rate through `vertices` (starting
/// at vertices.front()), and `n_points` observations are spaced evenly in
/// time, hence in arc length.
struct StrainProgram {
    std::vector<double> vertices;
    std::vector<double> shear_values;  // sampled shears
    std::vector<double> times;         // sample times, s
    double duration = 0.0;             // s

    std::size_t size() const noexcept { return shear_values.size(); }
    double path_length() const noexcept;
    double shear_at(double t) const;
    TensorPath path() const;
};

/// Program starting at zero shear and visiting each of `reversals` in turn.
/// Throws InvalidProgram for an empty reversal list, |target| > max_shear,
/// n_points < 2, non-positive duration, or zero path length.
std::pair<StrainProgram, std::vector<Tensor2>> torsion_program(double max_shear, const std::vector<double>& reversals,
                                                               int n_points, double duration);

/// Synthetic non-monotonic torsion used when no other program is configured.
struct TorsionDefaults {
    static constexpr double kMaxShear = 0.3;
    static inline const std::vector<double> kReversals{0.2, -0.1, 0.25};
    static constexpr int kPoints = 100;
    static constexpr double kDuration = 850.0;  // shear rate 1e-3 1/s
};

StrainProgram default_torsion_program();

/// Same reversal pattern at twice the amplitude, sampled ten times as
/// densely at the same shear rate. Its linearized parameter scatter under
/// 10/5 MPa two-source noise is comparable to that of a densely sampled
/// measured torsion curve.
struct ExtendedTorsion {
    static constexpr double kMaxShear = 0.6;
    static inline const std::vector<double> kReversals{0.4, -0.2, 0.5};
    static constexpr int kPoints = 1000;
    static constexpr double kDuration = 1700.0;
};

StrainProgram extended_torsion_program();

}  // namespace vpid

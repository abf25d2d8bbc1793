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

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vpid {

/// Counter-based normal deviates.
///
/// The uniform stream is SplitMix64 applied to (key + counter * golden ratio),
/// with key derived from (seed, stream id); normals come from the Box-Muller
/// transform using both outputs of each pair. The sequence depends only on
/// (seed, stream id), so it is identical across runs, thread schedules and
/// platforms with an IEEE-754 libm.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    /// Uniform in (0, 1), never 0 or 1.
    double uniform() noexcept;
    /// Standard normal deviate.
    double normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

struct NoiseModel {
    enum class Kind { White, AutoRegressive, TwoSource };

    Kind kind = Kind::TwoSource;
    double sigma = 0.0;   // white / AR innovation, MPa
    double alpha = 0.0;   // AR coefficient in [0, 1)
    double sigma1 = 10.0; // uncorrelated part, MPa
    double sigma2 = 5.0;  // correlated part, MPa

    static NoiseModel white(double sigma);
    static NoiseModel autoregressive(double alpha, double sigma);
    static NoiseModel two_source(double sigma1, double sigma2);

    /// Throws InvalidParameter on negative deviations or alpha outside [0, 1).
    void validate() const;
    std::string describe() const;
};

/// One realization of additive noise for the observation vector `exp`.
///
/// Draw order is fixed: white draws N deviates; AR draws the stationary start
/// value then N - 1 innovations; two-source draws the shared correlated
/// factor first, then N uncorrelated deviates.
/// Throws DegenerateData for two-source noise when max |exp_j| == 0.
std::vector<double> sample_noise(const NoiseModel& model, std::span<const double> exp, NormalStream& rng);
std::vector<double> sample_noise(const NoiseModel& model, std::span<const double> exp, std::uint64_t seed,
                                 std::uint64_t stream = 0);

/// Cov_ij = sigma1^2 delta_ij + sigma2^2 exp_i exp_j / max_k |exp_k|^2 (white: sigma^2 delta_ij).
/// Throws UnsupportedModel for AR noise.
Eigen::MatrixXd covariance(const NoiseModel& model, std::span<const double> exp);

}  // namespace vpid

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

// Fast re-identification around a converged fit and Monte Carlo clouds of
// re-identified parameters.
//
// Near p* the model is replaced by Mod(p*) + J (p - p*), which turns the
// weighted least-squares problem into a linear one with the closed-form
// solution
//
//   p = p* + G (Exp + Noise - Mod(p*)),    G = (J^T W J)^-1 J^T W.
//
// G is computed once per (linearization, weighting), so each cloud member
// costs one 6 x N matrix-vector product plus the noise draw.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vpid/constitutive.hpp"
#include "vpid/identification.hpp"
#include "vpid/metric.hpp"
#include "vpid/noise.hpp"
#include "vpid/weighting.hpp"

namespace vpid {

struct LinearizedModel {
    HardeningParams p_star;
    Eigen::VectorXd mod_star;  // N, MPa
    Eigen::MatrixXd jacobian;  // N x 6

    std::size_t size() const noexcept { return static_cast<std::size_t>(mod_star.size()); }

    /// Mod(p*) + J (p - p*)
    Eigen::VectorXd response(const HardeningParams& p) const;

    /// Throws DimensionMismatch or NonFiniteJacobian.
    void validate() const;
};

/// Packages a converged fit. Throws InvalidParameter if the fit did not converge.
LinearizedModel linearize(const FitResult& fit, const MaterialParams& fixed, const StrainProgram& program,
                          const IntegratorOptions& integrator = kResponseIntegrator);

/// Linearization at an arbitrary point with a fresh finite-difference Jacobian.
LinearizedModel linearize_at(const HardeningParams& p_star, const MaterialParams& fixed, const StrainProgram& program,
                             const FdOptions& fd = {});

/// Closed-form solver for one (linearization, weighting) pair.
class LinearReidentifier {
public:
    /// Normal matrices whose column-equilibrated condition number exceeds this are rejected.
    static constexpr double kMaxCondition = 1e12;

    /// Throws SingularNormalMatrix when J^T W J cannot be inverted reliably.
    LinearReidentifier(const LinearizedModel& lin, const WeightingScheme& scheme);

    /// Raw solution; may leave the admissible cone under large noise.
    HardeningParams operator()(std::span<const double> exp, std::span<const double> noise) const;

    /// Condition number of D^-1/2 (J^T W J) D^-1/2 with D its diagonal.
    double condition() const noexcept { return condition_; }
    /// 6 x N gain matrix G.
    const Eigen::MatrixXd& gain() const noexcept { return gain_; }

private:
    std::array<double, HardeningParams::kSize> p_star_;
    Eigen::VectorXd mod_star_;
    Eigen::MatrixXd gain_;
    std::vector<double> gain_rows_;  // G row-major for the SIMD product
    double condition_ = 0.0;
};

/// One-shot form of LinearReidentifier.
HardeningParams reidentify_linear(const LinearizedModel& lin, const WeightingScheme& scheme,
                                  std::span<const double> exp, std::span<const double> noise);

/// Population variance (divisor n) of p_i / p*_i for each parameter.
/// Throws ZeroReferenceParameter if a p* component is zero and
/// InsufficientData for an empty cloud.
std::array<double, HardeningParams::kSize> normalized_variances(const std::vector<HardeningParams>& cloud,
                                                                const HardeningParams& p_star);

/// A mechanics metric labelled with the history it samples.
struct HistoryMetric {
    int id = 1;
    MechanicsMetric metric;
};

struct CloudOptions {
    std::size_t n_instances = 10000;
    std::uint64_t master_seed = 0;
    unsigned threads = 1;  // 0 = hardware concurrency
};

struct HistorySize {
    int id = 1;
    double size = 0.0;                // mean distance to p*, MPa
    std::vector<double> distances;    // per member, MPa
};

struct CloudReport {
    std::vector<HardeningParams> cloud;
    std::vector<bool> admissible;     // all components >= 0
    std::vector<HistorySize> size_per_history;
    std::array<double, HardeningParams::kSize> variances{};
    WeightingKind scheme = WeightingKind::Identity;
    std::string noise;
    std::uint64_t seed = 0;
    double condition = 0.0;

    /// Throws OutOfRange for an id that was not evaluated.
    double size_for(int history_id) const;
};

/// Member j uses noise drawn from NormalStream(master_seed, j), so the cloud
/// does not depend on the thread count. Distances to p* use the full
/// nonlinear model. Propagates SingularNormalMatrix and StepFailure.
CloudReport monte_carlo_cloud(const LinearizedModel& lin, const WeightingScheme& scheme, const NoiseModel& noise_model,
                              std::span<const double> exp, const std::vector<HistoryMetric>& histories,
                              const CloudOptions& opts = {});

}  // namespace vpid

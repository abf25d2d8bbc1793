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

// Distances between hardening parameter sets. The mechanics-based distance
// compares the Cauchy stress histories the two sets produce along a
// strain-controlled path:
//
//   dist(p1, p2) = max_t |T(t, p1) - T(t, p2)|_F
//
// with the max taken over the integration grid.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vpid/constitutive.hpp"
#include "vpid/loading.hpp"

namespace vpid {

double dist_euclidean(const HardeningParams& p1, const HardeningParams& p2) noexcept;

/// Throws ZeroReferenceParameter if any reference component is zero.
double dist_euclidean_nondim(const HardeningParams& p1, const HardeningParams& p2, const HardeningParams& ref);

struct TimeGrid {
    int steps = 400;
    double duration = 400.0;  // s; the history is stretched onto [0, duration]
    int substeps = 1;         // integrator substeps per grid interval
};

struct MetricSpec {
    enum class Kind { Euclidean, EuclideanNondim, Mechanics };

    Kind kind = Kind::Euclidean;
    HardeningParams reference;                  // EuclideanNondim
    std::optional<DeformationHistory> history;  // Mechanics
    MaterialParams fixed;                       // Mechanics; hardening entry ignored
    TimeGrid grid;                              // Mechanics

    static MetricSpec euclidean();
    static MetricSpec euclidean_nondim(const HardeningParams& reference);
    static MetricSpec mechanics(DeformationHistory history, const MaterialParams& fixed = {}, TimeGrid grid = {});

    /// Throws ZeroReferenceParameter, InvalidProgram or InvalidTimeGrid.
    void validate() const;
};

/// Cauchy stress along the grid, one contiguous array per tensor component.
struct StressHistory {
    std::array<std::vector<double>, 9> components;

    std::size_t size() const noexcept { return components[0].size(); }
    Tensor2 at(std::size_t i) const;
};

/// Mechanics-based distance with the sampled path and grid fixed at
/// construction. Responses can be computed once and compared many times.
class MechanicsMetric {
public:
    /// Throws InvalidParameter unless spec.kind is Mechanics.
    explicit MechanicsMetric(const MetricSpec& spec);

    const std::vector<double>& times() const noexcept { return times_; }

    /// Propagates StepFailure from the integrator.
    StressHistory response(const HardeningParams& p) const;

    /// max over the grid of the Frobenius norm of the stress difference
    double distance(const StressHistory& a, const StressHistory& b) const;

    double operator()(const HardeningParams& p1, const HardeningParams& p2) const {
        return distance(response(p1), response(p2));
    }

private:
    std::vector<double> times_;
    TensorPath path_;
    MaterialParams fixed_;
    IntegratorOptions integrator_;
};

/// Throws InvalidParameter unless spec.kind is Mechanics.
double dist_mechanics(const HardeningParams& p1, const HardeningParams& p2, const MetricSpec& spec);

/// Dispatches on spec.kind.
double distance(const HardeningParams& p1, const HardeningParams& p2, const MetricSpec& spec);

struct AxiomReport {
    std::size_t samples = 0;
    std::size_t pairs = 0;    // ordered pairs i != j
    std::size_t triples = 0;  // ordered triples of distinct indices
    double slack = 0.0;

    std::size_t negative = 0;
    std::size_t asymmetric = 0;
    std::size_t triangle_violations = 0;
    std::size_t identity_violations = 0;  // equal samples at nonzero distance
    double max_asymmetry = 0.0;
    double max_triangle_excess = 0.0;     // max of d(i,k) - d(i,j) - d(j,k)
    double min_distinct_distance = 0.0;   // over pairs of distinct samples

    /// Distinct sample pairs (i < j) at zero distance.
    std::vector<std::pair<std::size_t, std::size_t>> separation_violations;

    bool nonnegative() const noexcept { return negative == 0; }
    bool symmetric() const noexcept { return asymmetric == 0; }
    bool triangle() const noexcept { return triangle_violations == 0; }
    bool separation() const noexcept { return separation_violations.empty() && identity_violations == 0; }

    /// key = value lines, one per finding.
    std::string to_text() const;
};

/// Evaluates every ordered pair and triple of `samples`. Findings are
/// reported, never thrown. Throws InvalidParameter for fewer than 3 samples.
AxiomReport check_metric_axioms(const MetricSpec& spec, const std::vector<HardeningParams>& samples,
                                double slack = 1e-9, unsigned threads = 1);

}  // namespace vpid

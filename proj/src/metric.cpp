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

#include "vpid/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vpid/errors.hpp"
#include "vpid/parallel.hpp"
#include "vpid/simd/kernels.hpp"

namespace vpid {

double dist_euclidean(const HardeningParams& p1, const HardeningParams& p2) noexcept {
    const auto a = p1.to_array();
    const auto b = p2.to_array();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double dist_euclidean_nondim(const HardeningParams& p1, const HardeningParams& p2, const HardeningParams& ref) {
    const auto a = p1.to_array();
    const auto b = p2.to_array();
    const auto r = ref.to_array();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (r[i] == 0.0) {
            fail(ErrorCode::ZeroReferenceParameter,
                 "reference value of " + std::string(HardeningParams::kNames[i]) + " is zero");
        }
        const double d = (a[i] - b[i]) / r[i];
        s += d * d;
    }
    return std::sqrt(s);
}

MetricSpec MetricSpec::euclidean() { return MetricSpec{}; }

MetricSpec MetricSpec::euclidean_nondim(const HardeningParams& reference) {
    MetricSpec s;
    s.kind = Kind::EuclideanNondim;
    s.reference = reference;
    s.validate();
    return s;
}

MetricSpec MetricSpec::mechanics(DeformationHistory history, const MaterialParams& fixed, TimeGrid grid) {
    MetricSpec s;
    s.kind = Kind::Mechanics;
    s.history = std::move(history);
    s.fixed = fixed;
    s.grid = grid;
    s.validate();
    return s;
}

void MetricSpec::validate() const {
    switch (kind) {
        case Kind::Euclidean: return;
        case Kind::EuclideanNondim:
            for (std::size_t i = 0; i < HardeningParams::kSize; ++i) {
                if (reference[i] == 0.0) {
                    fail(ErrorCode::ZeroReferenceParameter,
                         "reference value of " + std::string(HardeningParams::kNames[i]) + " is zero");
                }
            }
            return;
        case Kind::Mechanics:
            if (!history) fail(ErrorCode::InvalidProgram, "mechanics metric needs a deformation history");
            if (grid.steps < 1 || grid.substeps < 1 || !(grid.duration > 0.0) || !std::isfinite(grid.duration)) {
                fail(ErrorCode::InvalidTimeGrid, "mechanics metric needs positive steps, substeps and duration");
            }
            fixed.validate();
            return;
    }
}

Tensor2 StressHistory::at(std::size_t i) const {
    Tensor2 T;
    for (std::size_t c = 0; c < 9; ++c) T[c] = components[c].at(i);
    return T;
}

MechanicsMetric::MechanicsMetric(const MetricSpec& spec) {
    if (spec.kind != MetricSpec::Kind::Mechanics) {
        fail(ErrorCode::InvalidParameter, "MechanicsMetric needs a mechanics metric spec");
    }
    spec.validate();
    path_ = spec.history->rescaled(spec.grid.duration).path();
    fixed_ = spec.fixed;
    integrator_.substeps = spec.grid.substeps;
    const auto n = static_cast<std::size_t>(spec.grid.steps);
    times_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        times_[i] = (i == n) ? spec.grid.duration : spec.grid.duration * static_cast<double>(i) / static_cast<double>(n);
    }
}

StressHistory MechanicsMetric::response(const HardeningParams& p) const {
    MaterialParams params = fixed_;
    params.hardening = p;
    const std::vector<Tensor2> T = cauchy_response(path_, times_, params, integrator_);
    StressHistory out;
    for (auto& c : out.components) c.resize(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
        for (std::size_t c = 0; c < 9; ++c) out.components[c][i] = T[i][c];
    }
    return out;
}

double MechanicsMetric::distance(const StressHistory& a, const StressHistory& b) const {
    if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "stress histories sampled on different grids");
    std::vector<double> acc(a.size(), 0.0);
    for (std::size_t c = 0; c < 9; ++c) simd::sq_diff_accumulate(a.components[c], b.components[c], acc);
    return std::sqrt(simd::max_value(acc));
}

double dist_mechanics(const HardeningParams& p1, const HardeningParams& p2, const MetricSpec& spec) {
    return MechanicsMetric(spec)(p1, p2);
}

double distance(const HardeningParams& p1, const HardeningParams& p2, const MetricSpec& spec) {
    switch (spec.kind) {
        case MetricSpec::Kind::Euclidean: return dist_euclidean(p1, p2);
        case MetricSpec::Kind::EuclideanNondim: return dist_euclidean_nondim(p1, p2, spec.reference);
        case MetricSpec::Kind::Mechanics: return dist_mechanics(p1, p2, spec);
    }
    return 0.0;
}

std::string AxiomReport::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "samples = " << samples << '\n'
       << "pairs = " << pairs << '\n'
       << "triples = " << triples << '\n'
       << "slack = " << slack << '\n'
       << "nonnegative = " << (nonnegative() ? "pass" : "fail") << " (" << negative << " negative)\n"
       << "symmetry = " << (symmetric() ? "pass" : "fail") << " (max asymmetry " << max_asymmetry << ")\n"
       << "triangle = " << (triangle() ? "pass" : "fail") << " (" << triangle_violations
       << " violations, max excess " << max_triangle_excess << ")\n"
       << "separation = " << (separation() ? "pass" : "fail") << " (" << separation_violations.size()
       << " distinct pairs at zero distance, " << identity_violations << " equal pairs at nonzero distance)\n"
       << "min_distinct_distance = " << min_distinct_distance << '\n';
    for (const auto& [i, j] : separation_violations) os << "separation_violation = " << i << ',' << j << '\n';
    return os.str();
}

AxiomReport check_metric_axioms(const MetricSpec& spec, const std::vector<HardeningParams>& samples, double slack,
                                unsigned threads) {
    const std::size_t n = samples.size();
    if (n < 3) fail(ErrorCode::InvalidParameter, "axiom check needs at least 3 samples");
    spec.validate();

    // Full distance matrix, both orientations evaluated so symmetry is tested
    // rather than assumed.
    std::vector<double> d(n * n, 0.0);
    if (spec.kind == MetricSpec::Kind::Mechanics) {
        const MechanicsMetric metric(spec);
        std::vector<StressHistory> resp(n);
        parallel_for(n, threads, [&](std::size_t i) { resp[i] = metric.response(samples[i]); });
        parallel_for(n, threads, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) d[i * n + j] = metric.distance(resp[i], resp[j]);
        });
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i * n + j] = distance(samples[i], samples[j], spec);
        }
    }

    AxiomReport r;
    r.samples = n;
    r.slack = slack;
    r.pairs = n * (n - 1);
    r.triples = n * (n - 1) * (n - 2);
    r.max_triangle_excess = -std::numeric_limits<double>::infinity();
    r.min_distinct_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dij = d[i * n + j];
            if (dij < 0.0) ++r.negative;
            if (i == j) continue;
            const double asym = std::abs(dij - d[j * n + i]);
            r.max_asymmetry = std::max(r.max_asymmetry, asym);
            if (asym > slack) ++r.asymmetric;
            if (i < j) {
                const bool equal = samples[i].to_array() == samples[j].to_array();
                if (equal && dij != 0.0) ++r.identity_violations;
                if (!equal) {
                    r.min_distinct_distance = std::min(r.min_distinct_distance, dij);
                    if (!(dij > 0.0)) r.separation_violations.emplace_back(i, j);
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double excess = d[i * n + k] - dij - d[j * n + k];
                r.max_triangle_excess = std::max(r.max_triangle_excess, excess);
                if (excess > slack) ++r.triangle_violations;
            }
        }
    }
    if (!std::isfinite(r.min_distinct_distance)) r.min_distinct_distance = 0.0;
    return r;
}

}  // namespace vpid

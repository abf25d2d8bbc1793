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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "vpid/errors.hpp"
#include "vpid/metric.hpp"

namespace vpid {
namespace {

const MaterialParams kSteel = MaterialParams::steel_42CrMo4();

HardeningParams perturbed(const HardeningParams& p, std::mt19937_64& rng, double spread = 0.3) {
    std::uniform_real_distribution<double> u(1.0 - spread, 1.0 + spread);
    auto a = p.to_array();
    for (auto& v : a) v *= u(rng);
    return HardeningParams::from_array(a);
}

TEST(Euclidean, Examples) {
    const HardeningParams p = reference_sets::kCovInverse;
    EXPECT_EQ(dist_euclidean(p, p), 0.0);
    HardeningParams q = p;
    q.gamma += 10.0;
    EXPECT_DOUBLE_EQ(dist_euclidean(p, q), 10.0);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto a = perturbed(p, rng);
        const auto b = perturbed(p, rng);
        EXPECT_EQ(dist_euclidean(a, b), dist_euclidean(b, a));
    }
}

TEST(Euclidean, NondimensionalExamples) {
    const HardeningParams ref = reference_sets::kCovInverse;
    auto a = ref.to_array();
    for (auto& v : a) v *= 2.0;
    EXPECT_EQ(dist_euclidean_nondim(ref, ref, ref), 0.0);
    EXPECT_NEAR(dist_euclidean_nondim(HardeningParams::from_array(a), ref, ref), std::sqrt(6.0), 1e-15);
    HardeningParams zero = ref;
    zero.kappa2 = 0.0;
    EXPECT_THROW(dist_euclidean_nondim(ref, ref, zero), Error);
}

TEST(Euclidean, NondimensionalIsEuclideanOfRatios) {
    std::mt19937_64 rng(2);
    const HardeningParams ref = reference_sets::kIdentity;
    for (int i = 0; i < 100; ++i) {
        const auto p1 = perturbed(ref, rng);
        const auto p2 = perturbed(ref, rng);
        auto a = p1.to_array();
        auto b = p2.to_array();
        const auto r = ref.to_array();
        for (std::size_t k = 0; k < 6; ++k) {
            a[k] /= r[k];
            b[k] /= r[k];
        }
        EXPECT_NEAR(dist_euclidean_nondim(p1, p2, ref),
                    dist_euclidean(HardeningParams::from_array(a), HardeningParams::from_array(b)), 1e-14);
    }
}

TEST(Mechanics, IdenticalParametersGiveZero) {
    const MechanicsMetric m(MetricSpec::mechanics(benchmark_history(1), kSteel));
    EXPECT_EQ(m(reference_sets::kCovInverse, reference_sets::kCovInverse), 0.0);
    const StressHistory h = m.response(reference_sets::kCovInverse);
    EXPECT_EQ(h.size(), 401u);
}

TEST(Mechanics, ElasticHistoryCannotSeparateHardening) {
    const MechanicsMetric m(MetricSpec::mechanics(benchmark_history(1, 0.001), kSteel));
    EXPECT_EQ(m(reference_sets::kCovInverse, reference_sets::kIdentity), 0.0);

    const MechanicsMetric plastic(MetricSpec::mechanics(benchmark_history(1), kSteel));
    EXPECT_GT(plastic(reference_sets::kCovInverse, reference_sets::kIdentity), 0.0);
}

TEST(Mechanics, StressDifferenceBoundOnSingleComponentChange) {
    // Changing only gamma cannot alter the response before the first yield.
    const MechanicsMetric m(MetricSpec::mechanics(benchmark_history(2), kSteel));
    HardeningParams q = reference_sets::kCovInverse;
    q.gamma *= 2.0;
    const double d = m(reference_sets::kCovInverse, q);
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, 1000.0);
}

TEST(Mechanics, TriangleInequalityOnRandomTriples) {
    std::mt19937_64 rng(3);
    for (int h : {1, 2}) {
        const MechanicsMetric m(MetricSpec::mechanics(benchmark_history(h), kSteel));
        std::vector<StressHistory> r;
        for (int i = 0; i < 12; ++i) r.push_back(m.response(perturbed(reference_sets::kCovInverse, rng)));
        for (std::size_t a = 0; a < r.size(); ++a) {
            for (std::size_t b = 0; b < r.size(); ++b) {
                for (std::size_t c = 0; c < r.size(); ++c) {
                    EXPECT_LE(m.distance(r[a], r[c]), m.distance(r[a], r[b]) + m.distance(r[b], r[c]) + 1e-9);
                }
                EXPECT_EQ(m.distance(r[a], r[b]), m.distance(r[b], r[a]));
            }
        }
    }
}

TEST(Mechanics, InvariantUnderLogReparametrization) {
    std::mt19937_64 rng(4);
    const MechanicsMetric m(MetricSpec::mechanics(benchmark_history(2), kSteel));
    auto from_log = [](const std::array<double, 6>& rho) {
        std::array<double, 6> p{};
        for (std::size_t k = 0; k < 6; ++k) p[k] = std::exp(rho[k]);
        return HardeningParams::from_array(p);
    };
    for (int i = 0; i < 5; ++i) {
        const auto p1 = perturbed(reference_sets::kCovInverse, rng);
        const auto p2 = perturbed(reference_sets::kCovInverse, rng);
        std::array<double, 6> r1{};
        std::array<double, 6> r2{};
        for (std::size_t k = 0; k < 6; ++k) {
            r1[k] = std::log(p1.to_array()[k]);
            r2[k] = std::log(p2.to_array()[k]);
        }
        const double direct = m(p1, p2);
        const double through_rho = m(from_log(r1), from_log(r2));
        EXPECT_NEAR(through_rho, direct, 1e-8 * direct);
        // The Euclidean distance does depend on the chart.
        const double eu_rho = dist_euclidean(HardeningParams::from_array(r1), HardeningParams::from_array(r2));
        EXPECT_GT(std::abs(eu_rho - dist_euclidean(p1, p2)), 1.0);
    }
}

TEST(Mechanics, GridRefinementChangesDistanceLittle) {
    std::mt19937_64 rng(5);
    const auto a = reference_sets::kCovInverse;
    const auto b = perturbed(a, rng, 0.2);
    for (int h : {1, 2}) {
        TimeGrid fine;
        fine.steps = 800;
        const double coarse_d = dist_mechanics(a, b, MetricSpec::mechanics(benchmark_history(h), kSteel));
        const double fine_d = dist_mechanics(a, b, MetricSpec::mechanics(benchmark_history(h), kSteel, fine));
        EXPECT_LT(testing::rel_diff(coarse_d, fine_d), 5e-3) << "history " << h;
    }
}

TEST(Mechanics, DispatchAndValidation) {
    const auto a = reference_sets::kCovInverse;
    const auto b = reference_sets::kIdentity;
    EXPECT_EQ(distance(a, b, MetricSpec::euclidean()), dist_euclidean(a, b));
    EXPECT_EQ(distance(a, b, MetricSpec::euclidean_nondim(a)), dist_euclidean_nondim(a, b, a));
    const auto spec = MetricSpec::mechanics(benchmark_history(1), kSteel);
    EXPECT_EQ(distance(a, b, spec), MechanicsMetric(spec)(a, b));
    TimeGrid bad;
    bad.steps = 0;
    EXPECT_THROW(MetricSpec::mechanics(benchmark_history(1), kSteel, bad).validate(), Error);
}

TEST(Axioms, EqualSamplesPassTrivially) {
    const std::vector<HardeningParams> same(4, reference_sets::kCovInverse);
    const AxiomReport r = check_metric_axioms(MetricSpec::mechanics(benchmark_history(1), kSteel), same);
    EXPECT_TRUE(r.nonnegative());
    EXPECT_TRUE(r.symmetric());
    EXPECT_TRUE(r.triangle());
    EXPECT_EQ(r.identity_violations, 0u);
    EXPECT_THROW(check_metric_axioms(MetricSpec::euclidean(), {same[0], same[1]}), Error);
}

TEST(Axioms, PerturbedSetsSeparateUnderShearHistory) {
    std::mt19937_64 rng(6);
    std::vector<HardeningParams> s;
    for (int i = 0; i < 8; ++i) s.push_back(perturbed(reference_sets::kCovInverse, rng));
    const AxiomReport r = check_metric_axioms(MetricSpec::mechanics(benchmark_history(2), kSteel), s, 1e-9, 2);
    EXPECT_TRUE(r.nonnegative() && r.symmetric() && r.triangle() && r.separation()) << r.to_text();
    EXPECT_GT(r.min_distinct_distance, 0.0);
}

TEST(Axioms, ElasticHistoryReportsSeparationFailures) {
    std::mt19937_64 rng(7);
    std::vector<HardeningParams> s;
    for (int i = 0; i < 5; ++i) s.push_back(perturbed(reference_sets::kCovInverse, rng));
    const AxiomReport r = check_metric_axioms(MetricSpec::mechanics(benchmark_history(1, 0.001), kSteel), s);
    EXPECT_FALSE(r.separation());
    EXPECT_EQ(r.separation_violations.size(), 10u);
    EXPECT_TRUE(r.triangle());
}

}  // namespace
}  // namespace vpid

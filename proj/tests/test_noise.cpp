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
#include <numeric>
#include <vector>

#include "vpid/errors.hpp"
#include "vpid/noise.hpp"

namespace vpid {
namespace {

constexpr int kDraws = 100000;

TEST(Noise, ZeroDeviationGivesZeroNoise) {
    const std::vector<double> exp{1.0, -3.0, 2.0};
    for (double v : sample_noise(NoiseModel::white(0.0), exp, 1)) EXPECT_EQ(v, 0.0);
    for (double v : sample_noise(NoiseModel::two_source(0.0, 0.0), exp, 1)) EXPECT_EQ(v, 0.0);
}

TEST(Noise, PureCorrelatedPartIsRankOne) {
    const std::vector<double> exp{1.0, -4.0, 2.0, 0.5};
    const auto n = sample_noise(NoiseModel::two_source(0.0, 3.0), exp, 11);
    const double eps = n[1] / (exp[1] / 4.0);
    for (std::size_t i = 0; i < exp.size(); ++i) EXPECT_NEAR(n[i], eps * exp[i] / 4.0, 1e-14);
    EXPECT_THROW(sample_noise(NoiseModel::two_source(1.0, 1.0), std::vector<double>{0.0, 0.0}, 1), Error);
}

TEST(Noise, SeededDeterminism) {
    const std::vector<double> exp{1.0, 2.0, 3.0, 4.0, 5.0};
    for (const auto& m : {NoiseModel::white(2.0), NoiseModel::autoregressive(0.5, 1.0), NoiseModel::two_source(10, 5)}) {
        EXPECT_EQ(sample_noise(m, exp, 42, 3), sample_noise(m, exp, 42, 3));
        EXPECT_NE(sample_noise(m, exp, 42, 3), sample_noise(m, exp, 42, 4));
        EXPECT_NE(sample_noise(m, exp, 42, 3), sample_noise(m, exp, 43, 3));
    }
}

TEST(Noise, StreamUniformsStayInsideUnitInterval) {
    NormalStream s(0, 0);
    for (int i = 0; i < kDraws; ++i) {
        const double u = s.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Noise, WhiteMomentsAndMean) {
    const double sigma = 3.0;
    const std::vector<double> exp(kDraws, 1.0);
    const auto n = sample_noise(NoiseModel::white(sigma), exp, 7);
    const double mean = std::accumulate(n.begin(), n.end(), 0.0) / kDraws;
    double var = 0.0;
    for (double v : n) var += (v - mean) * (v - mean);
    var /= kDraws - 1;
    EXPECT_LT(std::abs(mean), 4 * sigma / std::sqrt(kDraws));
    // Standard error of the sample variance is sigma^2 sqrt(2 / n).
    EXPECT_NEAR(var, sigma * sigma, 4 * sigma * sigma * std::sqrt(2.0 / kDraws));
}

TEST(Noise, ArLagOneAutocorrelation) {
    for (double alpha : {0.0, 0.5, 0.9}) {
        const double sigma = 1.0;
        const std::vector<double> exp(kDraws, 1.0);
        const auto n = sample_noise(NoiseModel::autoregressive(alpha, sigma), exp, 3);
        const double mean = std::accumulate(n.begin(), n.end(), 0.0) / kDraws;
        double c0 = 0.0;
        double c1 = 0.0;
        for (int i = 0; i < kDraws; ++i) {
            c0 += (n[i] - mean) * (n[i] - mean);
            if (i > 0) c1 += (n[i] - mean) * (n[i - 1] - mean);
        }
        const double rho = c1 / c0;
        // Bartlett: Var(rho_1) ~ (1 - alpha^2) / n for an AR(1) sequence.
        EXPECT_NEAR(rho, alpha, 3 * std::sqrt((1 - alpha * alpha + 1e-12) / kDraws) + 1e-3) << "alpha " << alpha;
        const double stationary_sd = sigma / std::sqrt(1 - alpha * alpha);
        EXPECT_LT(std::abs(mean), 4 * stationary_sd * std::sqrt((1 + alpha) / (1 - alpha)) / std::sqrt(kDraws));
    }
}

TEST(Noise, CovarianceFormulaExamples) {
    const std::vector<double> exp{1.0, 2.0};
    const Eigen::MatrixXd C = covariance(NoiseModel::two_source(1.0, 2.0), exp);
    EXPECT_DOUBLE_EQ(C(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(C(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(C(1, 0), 2.0);
    EXPECT_DOUBLE_EQ(C(1, 1), 5.0);

    const Eigen::MatrixXd W = covariance(NoiseModel::two_source(3.0, 0.0), exp);
    EXPECT_TRUE(W.isApprox(9.0 * Eigen::MatrixXd::Identity(2, 2)));
    EXPECT_THROW(covariance(NoiseModel::autoregressive(0.3, 1.0), exp), Error);
}

TEST(Noise, TwoSourceSampleCovarianceMatchesFormula) {
    const std::vector<double> exp{100.0, -250.0, 400.0, 30.0};
    const auto model = NoiseModel::two_source(10.0, 5.0);
    const Eigen::MatrixXd C = covariance(model, exp);
    const auto n = static_cast<Eigen::Index>(exp.size());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd S2 = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    NormalStream rng(99, 0);
    for (int k = 0; k < kDraws; ++k) {
        const auto v = sample_noise(model, exp, rng);
        const Eigen::Map<const Eigen::VectorXd> x(v.data(), n);
        const Eigen::MatrixXd outer = x * x.transpose();
        S += outer;
        S2 += outer.cwiseProduct(outer);
        mean += x;
    }
    mean /= kDraws;
    S /= kDraws;
    S2 /= kDraws;
    for (Eigen::Index i = 0; i < n; ++i) {
        EXPECT_LT(std::abs(mean(i)), 4 * std::sqrt(C(i, i) / kDraws));
        for (Eigen::Index j = 0; j < n; ++j) {
            const double se = std::sqrt((S2(i, j) - S(i, j) * S(i, j)) / kDraws);
            EXPECT_NEAR(S(i, j), C(i, j), 3 * se) << i << "," << j;
        }
    }
}

TEST(Noise, ModelValidation) {
    EXPECT_THROW(NoiseModel::white(-1.0), Error);
    EXPECT_THROW(NoiseModel::autoregressive(1.0, 1.0), Error);
    EXPECT_THROW(NoiseModel::autoregressive(-0.1, 1.0), Error);
    EXPECT_THROW(NoiseModel::two_source(1.0, -1.0), Error);
}

}  // namespace
}  // namespace vpid

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

#include "vpid/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vpid/errors.hpp"
#include "vpid/parallel.hpp"
#include "vpid/simd/kernels.hpp"

namespace vpid {

namespace {

Eigen::VectorXd as_vector(const HardeningParams& p) {
    const auto a = p.to_array();
    return Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

}  // namespace

Eigen::VectorXd LinearizedModel::response(const HardeningParams& p) const {
    return mod_star + jacobian * (as_vector(p) - as_vector(p_star));
}

void LinearizedModel::validate() const {
    if (jacobian.rows() != mod_star.size() || jacobian.cols() != static_cast<Eigen::Index>(HardeningParams::kSize)) {
        fail(ErrorCode::DimensionMismatch, "linearized model: Jacobian must be N x 6 with N = |Mod(p*)|");
    }
    if (!jacobian.allFinite()) fail(ErrorCode::NonFiniteJacobian, "linearized model: Jacobian is not finite");
    if (!mod_star.allFinite()) fail(ErrorCode::NonFiniteResidual, "linearized model: Mod(p*) is not finite");
}

LinearizedModel linearize(const FitResult& fit, const MaterialParams& fixed, const StrainProgram& program,
                          const IntegratorOptions& integrator) {
    if (!fit.converged) fail(ErrorCode::InvalidParameter, "linearization needs a converged fit");
    LinearizedModel lin;
    lin.p_star = fit.params;
    const auto mod = model_response(fit.params, fixed, program, integrator);
    lin.mod_star = Eigen::Map<const Eigen::VectorXd>(mod.data(), static_cast<Eigen::Index>(mod.size()));
    lin.jacobian = fit.jacobian;
    lin.validate();
    return lin;
}

LinearizedModel linearize_at(const HardeningParams& p_star, const MaterialParams& fixed, const StrainProgram& program,
                             const FdOptions& fd) {
    LinearizedModel lin;
    lin.p_star = p_star;
    const auto mod = model_response(p_star, fixed, program, fd.integrator);
    lin.mod_star = Eigen::Map<const Eigen::VectorXd>(mod.data(), static_cast<Eigen::Index>(mod.size()));
    lin.jacobian = jacobian_fd(p_star, fixed, program, fd);
    lin.validate();
    return lin;
}

LinearReidentifier::LinearReidentifier(const LinearizedModel& lin, const WeightingScheme& scheme)
    : p_star_(lin.p_star.to_array()), mod_star_(lin.mod_star) {
    lin.validate();
    if (scheme.size() != lin.size()) fail(ErrorCode::DimensionMismatch, "weighting size differs from the data size");

    const Eigen::MatrixXd& J = lin.jacobian;
    const Eigen::MatrixXd WJ = scheme.is_diagonal() ? Eigen::MatrixXd(scheme.diagonal().asDiagonal() * J)
                                                    : Eigen::MatrixXd(scheme.matrix() * J);
    Eigen::MatrixXd A = J.transpose() * WJ;
    A = 0.5 * (A + A.transpose());

    // Parameter units differ by many orders of magnitude, so conditioning is
    // judged on the equilibrated matrix; an unidentifiable combination still
    // shows up there as a tiny eigenvalue.
    const Eigen::VectorXd d = A.diagonal();
    if (!d.allFinite() || (d.array() <= 0.0).any()) {
        fail(ErrorCode::SingularNormalMatrix, "normal matrix has a non-positive diagonal entry");
    }
    const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd As = s.asDiagonal() * A * s.asDiagonal();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(As, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (es.info() != Eigen::Success || !(condition_ <= kMaxCondition)) {
        fail(ErrorCode::SingularNormalMatrix, "normal matrix J^T W J is singular to working precision (condition " +
                                                  std::to_string(condition_) + ")");
    }

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(As);
    const Eigen::MatrixXd rhs = s.asDiagonal() * WJ.transpose();
    gain_ = s.asDiagonal() * lu.solve(rhs);
    if (!gain_.allFinite()) fail(ErrorCode::SingularNormalMatrix, "gain matrix is not finite");

    gain_rows_.resize(static_cast<std::size_t>(gain_.size()));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        gain_rows_.data(), gain_.rows(), gain_.cols()) = gain_;
}

HardeningParams LinearReidentifier::operator()(std::span<const double> exp, std::span<const double> noise) const {
    const auto n = static_cast<std::size_t>(mod_star_.size());
    if (exp.size() != n || noise.size() != n) fail(ErrorCode::DimensionMismatch, "re-identification: size mismatch");
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = exp[i] + noise[i] - mod_star_[static_cast<Eigen::Index>(i)];
    std::array<double, HardeningParams::kSize> dp{};
    simd::gemv(gain_rows_, b, dp);
    auto p = p_star_;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += dp[k];
    return HardeningParams::from_array(p);
}

HardeningParams reidentify_linear(const LinearizedModel& lin, const WeightingScheme& scheme,
                                  std::span<const double> exp, std::span<const double> noise) {
    return LinearReidentifier(lin, scheme)(exp, noise);
}

std::array<double, HardeningParams::kSize> normalized_variances(const std::vector<HardeningParams>& cloud,
                                                                const HardeningParams& p_star) {
    const auto ref = p_star.to_array();
    for (std::size_t k = 0; k < ref.size(); ++k) {
        if (ref[k] == 0.0) {
            fail(ErrorCode::ZeroReferenceParameter,
                 "reference value of " + std::string(HardeningParams::kNames[k]) + " is zero");
        }
    }
    if (cloud.empty()) fail(ErrorCode::InsufficientData, "variance of an empty cloud");
    const double n = static_cast<double>(cloud.size());
    std::array<double, HardeningParams::kSize> mean{};
    for (const auto& p : cloud) {
        for (std::size_t k = 0; k < ref.size(); ++k) mean[k] += p[k] / ref[k];
    }
    for (double& m : mean) m /= n;
    std::array<double, HardeningParams::kSize> var{};
    for (const auto& p : cloud) {
        for (std::size_t k = 0; k < ref.size(); ++k) {
            const double d = p[k] / ref[k] - mean[k];
            var[k] += d * d;
        }
    }
    for (double& v : var) v /= n;
    return var;
}

double CloudReport::size_for(int history_id) const {
    for (const auto& h : size_per_history) {
        if (h.id == history_id) return h.size;
    }
    fail(ErrorCode::OutOfRange, "history " + std::to_string(history_id) + " was not evaluated");
}

CloudReport monte_carlo_cloud(const LinearizedModel& lin, const WeightingScheme& scheme, const NoiseModel& noise_model,
                              std::span<const double> exp, const std::vector<HistoryMetric>& histories,
                              const CloudOptions& opts) {
    if (opts.n_instances < 1) fail(ErrorCode::InvalidParameter, "Monte Carlo needs at least one instance");
    noise_model.validate();
    if (exp.size() != lin.size()) fail(ErrorCode::DimensionMismatch, "experiment size differs from the model size");
    const LinearReidentifier solve(lin, scheme);

    std::vector<StressHistory> reference;
    reference.reserve(histories.size());
    for (const auto& h : histories) reference.push_back(h.metric.response(lin.p_star));

    const std::size_t n = opts.n_instances;
    CloudReport report;
    report.cloud.resize(n);
    report.scheme = scheme.kind();
    report.noise = noise_model.describe();
    report.seed = opts.master_seed;
    report.condition = solve.condition();
    report.size_per_history.resize(histories.size());
    for (std::size_t h = 0; h < histories.size(); ++h) {
        report.size_per_history[h].id = histories[h].id;
        report.size_per_history[h].distances.resize(n);
    }

    parallel_for(n, opts.threads, [&](std::size_t j) {
        const auto noise = sample_noise(noise_model, exp, opts.master_seed, j);
        const HardeningParams p = solve(exp, noise);
        report.cloud[j] = p;
        for (std::size_t h = 0; h < histories.size(); ++h) {
            report.size_per_history[h].distances[j] =
                histories[h].metric.distance(reference[h], histories[h].metric.response(p));
        }
    });

    // Aggregation runs in index order so the totals do not depend on the schedule.
    report.admissible.resize(n);
    for (std::size_t j = 0; j < n; ++j) report.admissible[j] = report.cloud[j].admissible();
    for (auto& h : report.size_per_history) {
        double total = 0.0;
        for (double d : h.distances) total += d;
        h.size = total / static_cast<double>(n);
    }
    report.variances = normalized_variances(report.cloud, lin.p_star);
    return report;
}

}  // namespace vpid

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

#include "vpid/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vpid/errors.hpp"
#include "vpid/parallel.hpp"

namespace vpid {

void ExperimentData::validate(std::size_t n_params) const {
    if (observations.size() != abscissae.size()) {
        fail(ErrorCode::DataError, "strain and stress columns differ in length");
    }
    for (std::size_t i = 0; i < observations.size(); ++i) {
        if (!std::isfinite(observations[i]) || !std::isfinite(abscissae[i])) {
            fail(ErrorCode::DataError, "non-finite value in observation " + std::to_string(i));
        }
    }
    if (observations.size() <= n_params) {
        fail(ErrorCode::InsufficientData, "identification needs more observations (" +
                                              std::to_string(observations.size()) + ") than parameters (" +
                                              std::to_string(n_params) + ")");
    }
}

std::vector<double> model_response(const HardeningParams& p, const MaterialParams& fixed, const StrainProgram& program,
                                   const IntegratorOptions& integrator) {
    MaterialParams params = fixed;
    params.hardening = p;
    const std::vector<Tensor2> T = cauchy_response(program.path(), program.times, params, integrator);
    std::vector<double> out(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) out[i] = T[i](0, 1);
    return out;
}

Eigen::MatrixXd jacobian_fd(const HardeningParams& p, const MaterialParams& fixed, const StrainProgram& program,
                            const FdOptions& opts) {
    if (!(opts.rel_step > 0.0) || !(opts.abs_floor > 0.0)) {
        fail(ErrorCode::InvalidParameter, "finite-difference steps must be positive");
    }
    const auto base = p.to_array();
    const auto n = static_cast<Eigen::Index>(program.size());
    Eigen::MatrixXd J(n, static_cast<Eigen::Index>(HardeningParams::kSize));
    parallel_for(HardeningParams::kSize, opts.threads, [&](std::size_t col) {
        const double h = std::max(opts.rel_step * std::abs(base[col]), opts.abs_floor);
        auto plus = base;
        auto minus = base;
        plus[col] += h;
        minus[col] -= h;
        const auto up = model_response(HardeningParams::from_array(plus), fixed, program, opts.integrator);
        const auto down = model_response(HardeningParams::from_array(minus), fixed, program, opts.integrator);
        // The realized step may differ from h by rounding.
        const double inv = 1.0 / (plus[col] - minus[col]);
        for (Eigen::Index i = 0; i < n; ++i) J(i, static_cast<Eigen::Index>(col)) = (up[i] - down[i]) * inv;
    });
    if (!J.allFinite()) fail(ErrorCode::NonFiniteJacobian, "finite-difference Jacobian is not finite");
    return J;
}

std::string_view to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::ZeroResidual: return "zero_residual";
        case StopReason::Gradient: return "gradient";
        case StopReason::RelativeDecrease: return "relative_decrease";
        case StopReason::SmallStep: return "small_step";
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::DampingOverflow: return "damping_overflow";
    }
    return "unknown";
}

LmResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd x0,
                             const LmOptions& opts) {
    auto project = [&](Eigen::VectorXd& x) {
        if (opts.nonnegative) x = x.cwiseMax(0.0);
    };
    auto scale_of = [&](const Eigen::VectorXd& x) {
        return x.cwiseAbs().cwiseMax(opts.scale_floor).eval();
    };

    LmResult res;
    project(x0);
    res.x = std::move(x0);
    Eigen::VectorXd r = residual(res.x);
    if (!r.allFinite()) fail(ErrorCode::NonFiniteResidual, "residual at the start point is not finite");
    res.phi = r.squaredNorm();
    res.phi_history.push_back(res.phi);
    Eigen::MatrixXd J = jacobian(res.x);

    double lambda = opts.initial_damping;
    while (true) {
        if (res.phi == 0.0) {
            res.converged = true;
            res.reason = StopReason::ZeroResidual;
            return res;
        }
        const Eigen::VectorXd g = J.transpose() * r;
        if (g.lpNorm<Eigen::Infinity>() <= opts.tol_g) {
            res.converged = true;
            res.reason = StopReason::Gradient;
            return res;
        }
        if (res.iterations >= opts.max_iterations) {
            res.converged = false;
            res.reason = StopReason::MaxIterations;
            return res;
        }

        const Eigen::MatrixXd A = J.transpose() * J;
        Eigen::VectorXd d = A.diagonal();
        const double d_floor = std::max(d.maxCoeff(), std::numeric_limits<double>::min()) * 1e-15;
        d = d.cwiseMax(d_floor);

        bool accepted = false;
        while (!accepted) {
            Eigen::MatrixXd damped = A;
            damped.diagonal() += lambda * d;
            Eigen::VectorXd step = damped.ldlt().solve(-g);
            Eigen::VectorXd x_trial = res.x + step;
            project(x_trial);

            Eigen::VectorXd r_trial;
            bool ok = step.allFinite();
            if (ok) {
                try {
                    r_trial = residual(x_trial);
                    ok = r_trial.allFinite();
                } catch (const Error&) {
                    ok = false;
                }
            }
            // |r|^2 - |r'|^2 as (r - r')^T (r + r') keeps its relative accuracy when
            // the two norms agree to many digits, which is the regime near a
            // minimizer with a non-zero residual.
            const double decrease = ok ? (r - r_trial).dot(r + r_trial) : -1.0;
            if (ok && decrease > 0.0) {
                const double phi_trial = std::max(res.phi - decrease, 0.0);
                const double rel_decrease = decrease / res.phi;
                const double rel_step = (x_trial - res.x).cwiseQuotient(scale_of(res.x)).lpNorm<Eigen::Infinity>();
                res.x = std::move(x_trial);
                r = std::move(r_trial);
                res.phi = phi_trial;
                res.phi_history.push_back(res.phi);
                ++res.iterations;
                lambda = std::max(lambda / opts.damping_factor, 1e-300);
                J = jacobian(res.x);
                accepted = true;
                if (rel_decrease <= opts.tol_f) {
                    res.converged = true;
                    res.reason = StopReason::RelativeDecrease;
                    return res;
                }
                if (rel_step <= opts.tol_x) {
                    res.converged = true;
                    res.reason = StopReason::SmallStep;
                    return res;
                }
            } else {
                lambda *= opts.damping_factor;
                if (lambda > 1e16) {
                    // No descent even along a vanishing gradient step: stationary to working precision.
                    res.converged = true;
                    res.reason = StopReason::DampingOverflow;
                    return res;
                }
            }
        }
    }
}

FitResult identify(const HardeningParams& start, const ExperimentData& data, const WeightingScheme& scheme,
                   const MaterialParams& fixed, const StrainProgram& program, const IdentifyOptions& opts) {
    data.validate(HardeningParams::kSize);
    start.validate();
    if (data.size() != program.size() || scheme.size() != data.size()) {
        fail(ErrorCode::DimensionMismatch, "data, strain program and weighting sizes differ");
    }
    const auto n = static_cast<Eigen::Index>(data.size());
    const Eigen::Map<const Eigen::VectorXd> exp(data.observations.data(), n);

    // Whitening factor: diagonal kinds scale rows, full kinds multiply.
    Eigen::VectorXd row_scale;
    Eigen::MatrixXd M;
    if (scheme.is_diagonal()) {
        row_scale = scheme.diagonal().cwiseSqrt();
    } else {
        M = scheme.factor(opts.factor);
    }
    auto apply_factor = [&](const auto& v) -> Eigen::MatrixXd {
        if (scheme.is_diagonal()) return row_scale.asDiagonal() * v;
        return M * v;
    };

    auto to_params = [](const Eigen::VectorXd& x) { return HardeningParams::from_array({x.data(), 6}); };

    ResidualFn residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        const auto mod = model_response(to_params(x), fixed, program, opts.fd.integrator);
        const Eigen::Map<const Eigen::VectorXd> m(mod.data(), n);
        return apply_factor(exp - m);
    };
    JacobianFn jac = [&](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
        return -apply_factor(jacobian_fd(to_params(x), fixed, program, opts.fd));
    };

    const auto a = start.to_array();
    const LmResult lm = levenberg_marquardt(residual, jac, Eigen::Map<const Eigen::VectorXd>(a.data(), 6), opts.lm);

    FitResult fit;
    fit.params = to_params(lm.x);
    const auto mod = model_response(fit.params, fixed, program, opts.fd.integrator);
    std::vector<double> resid(data.size());
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] = data.observations[i] - mod[i];
    fit.phi = error_functional(resid, scheme);
    fit.iterations = lm.iterations;
    fit.jacobian = jacobian_fd(fit.params, fixed, program, opts.fd);
    fit.converged = lm.converged;
    fit.reason = lm.reason;
    fit.phi_history = lm.phi_history;
    return fit;
}

}  // namespace vpid

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

#include "vpid/constitutive.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace vpid {

namespace {

const double kSqrt2over3 = std::sqrt(2.0 / 3.0);

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        fail(ErrorCode::InvalidParameter, std::string("material parameter ") + name + " must be positive");
    }
}

// dev(C T~) written through the elastic potential: mu (det A)^(-1/3) dev(A), A = C Ci^-1.
Tensor2 elastic_mandel_dev(const Tensor2& C, const Tensor2& Ci_inv, double det_ratio, double mu) {
    return deviator(product(C, Ci_inv)) * (mu / std::cbrt(det_ratio));
}

// dev(Ci X~_k) = (c/2) (det A)^(-1/3) dev(A), A = Ci Cki^-1.
Tensor2 kinematic_mandel_dev(const Tensor2& Ci, const Tensor2& Cki, double c) {
    if (c == 0.0) return Tensor2::zero();
    const Tensor2 A = product(Ci, inverse(Cki));
    return deviator(A) * (0.5 * c / std::cbrt(det(A)));
}

double driving_force(const Tensor2& M_dev) {
    // sqrt(tr[(M^D)^2]); M^D is similar to a symmetric tensor up to round-off.
    return std::sqrt(std::max(0.0, trace_of_product(M_dev, M_dev)));
}

// d/dB (c/4)(tr unimodular(B Bk^-1) - 3) * 2, i.e. the conjugate stress of a
// neo-Hookean potential differentiated in its first argument.
Tensor2 neo_hooke_stress(const Tensor2& B, const Tensor2& Bk, double c) {
    const Tensor2 Bk_inv = inverse(Bk);
    const Tensor2 B_inv = inverse(B);
    const double j = det(B) / det(Bk);
    const double tr = trace_of_product(B, Bk_inv);
    return (Bk_inv - B_inv * (tr / 3.0)) * (0.5 * c / std::cbrt(j));
}

}  // namespace

// -- parameter records -------------------------------------------------------

HardeningParams HardeningParams::from_array(std::span<const double> v) {
    if (v.size() != kSize) {
        fail(ErrorCode::DimensionMismatch, "hardening parameter vector must have 6 components");
    }
    return HardeningParams{v[0], v[1], v[2], v[3], v[4], v[5]};
}

bool HardeningParams::admissible() const noexcept {
    for (double v : to_array()) {
        if (!std::isfinite(v) || v < 0.0) return false;
    }
    return true;
}

void HardeningParams::validate() const {
    const auto a = to_array();
    for (std::size_t i = 0; i < kSize; ++i) {
        if (!std::isfinite(a[i]) || a[i] < 0.0) {
            fail(ErrorCode::InvalidParameter,
                 "hardening parameter " + std::string(kNames[i]) + " must be finite and non-negative");
        }
    }
}

void MaterialParams::validate() const {
    require_positive(k, "k");
    require_positive(mu, "mu");
    require_positive(eta, "eta");
    require_positive(K, "K");
    require_positive(k0, "k0");
    if (!(m >= 1.0) || !std::isfinite(m)) fail(ErrorCode::InvalidParameter, "material parameter m must be >= 1");
    hardening.validate();
}

// -- potentials --------------------------------------------------------------

double elastic_energy(const Tensor2& A, const MaterialParams& params) {
    const double d = det(A);
    if (!(d > 0.0)) fail(ErrorCode::NonPositiveDefinite, "elastic_energy: det A must be positive");
    const double log_sqrt_det = 0.5 * std::log(d);
    return 0.5 * params.k * log_sqrt_det * log_sqrt_det + 0.5 * params.mu * (trace(A) / std::cbrt(d) - 3.0);
}

double kinematic_energy(const Tensor2& A, double c) {
    const double d = det(A);
    if (!(d > 0.0)) fail(ErrorCode::NonPositiveDefinite, "kinematic_energy: det A must be positive");
    return 0.25 * c * (trace(A) / std::cbrt(d) - 3.0);
}

double isotropic_energy(double s_e, double gamma) noexcept { return 0.5 * gamma * s_e * s_e; }

// -- stress relations --------------------------------------------------------

Tensor2 second_pk_stress(const Tensor2& C, const InternalState& state, const MaterialParams& params) {
    const Tensor2 C_inv = inverse(C);
    const Tensor2 Ci_inv = inverse(state.Ci);
    const double j = det(C) / det(state.Ci);
    if (!(j > 0.0)) fail(ErrorCode::NonPositiveDefinite, "second_pk_stress: det(C Ci^-1) must be positive");
    const double tr = trace_of_product(C, Ci_inv);
    Tensor2 T = C_inv * (0.5 * params.k * std::log(j));
    T += (Ci_inv - C_inv * (tr / 3.0)) * (params.mu / std::cbrt(j));
    return symmetric_part(T);
}

Backstresses backstresses(const InternalState& state, const MaterialParams& params) {
    Backstresses b;
    const auto& h = params.hardening;
    if (h.c1 != 0.0) b.X1 = symmetric_part(neo_hooke_stress(state.Ci, state.C1i, h.c1));
    if (h.c2 != 0.0) b.X2 = symmetric_part(neo_hooke_stress(state.Ci, state.C2i, h.c2));
    b.X = b.X1 + b.X2;
    return b;
}

double isotropic_hardening(const InternalState& state, const MaterialParams& params) noexcept {
    return params.hardening.gamma * (state.s - state.sd);
}

double perzyna_rate(double f, const MaterialParams& params) noexcept {
    if (!(f > 0.0)) return 0.0;
    return std::pow(f / params.k0, params.m) / params.eta;
}

Overstress overstress_and_multiplier(const Tensor2& C, const InternalState& state, const MaterialParams& params) {
    const double j = det(C) / det(state.Ci);
    if (!(j > 0.0)) fail(ErrorCode::NonPositiveDefinite, "overstress: det(C Ci^-1) must be positive");
    const auto& h = params.hardening;
    Tensor2 M = elastic_mandel_dev(C, inverse(state.Ci), j, params.mu);
    M -= kinematic_mandel_dev(state.Ci, state.C1i, h.c1);
    M -= kinematic_mandel_dev(state.Ci, state.C2i, h.c2);
    Overstress o;
    o.F = driving_force(M);
    o.f = o.F - kSqrt2over3 * (params.K + isotropic_hardening(state, params));
    o.lambda_i = perzyna_rate(o.f, params);
    return o;
}

Tensor2 push_forward(const Tensor2& F, const Tensor2& second_pk) {
    const double J = det(F);
    if (!(J > 0.0)) fail(ErrorCode::NonPositiveDeterminant, "push_forward: det F must be positive");
    return symmetric_part(product(product(F, second_pk), transpose(F)) * (1.0 / J));
}

Tensor2 cauchy_stress(const Tensor2& F, const InternalState& state, const MaterialParams& params) {
    if (!(det(F) > 0.0)) fail(ErrorCode::NonPositiveDeterminant, "cauchy_stress: det F must be positive");
    return push_forward(F, second_pk_stress(product(transpose(F), F), state, params));
}

StressOutput evaluate(const Tensor2& F, const InternalState& state, const MaterialParams& params) {
    const Tensor2 C = product(transpose(F), F);
    StressOutput out;
    out.second_pk = second_pk_stress(C, state, params);
    out.cauchy = push_forward(F, out.second_pk);
    out.backstress_total = backstresses(state, params).X;
    out.R = isotropic_hardening(state, params);
    const Overstress o = overstress_and_multiplier(C, state, params);
    out.overstress_f = o.f;
    out.driving_force_F = o.F;
    out.lambda_i = o.lambda_i;
    return out;
}

// -- time integration --------------------------------------------------------

InternalState advance(const Tensor2& C_next, const InternalState& state, const MaterialParams& params, double dt,
                      double det_tolerance) {
    const auto& h = params.hardening;
    const double j = det(C_next) / det(state.Ci);
    if (!(j > 0.0)) fail(ErrorCode::StepFailure, "advance: det(C Ci^-1) must be positive");

    // Elastic trial: internal variables frozen.
    const Tensor2 Ci_inv = inverse(state.Ci);
    const Tensor2 M_trial = elastic_mandel_dev(C_next, Ci_inv, j, params.mu)
                          - kinematic_mandel_dev(state.Ci, state.C1i, h.c1)
                          - kinematic_mandel_dev(state.Ci, state.C2i, h.c2);
    const double F_trial = driving_force(M_trial);
    const double R_n = isotropic_hardening(state, params);
    const double f_trial = F_trial - kSqrt2over3 * (params.K + R_n);
    if (!(f_trial > 0.0)) return state;

    // Ci rate per unit flow amount, frozen at the trial state.
    const Tensor2 direction = product(M_trial, state.Ci) * (2.0 / F_trial);
    const double det_C_cbrt = std::cbrt(det(C_next));

    auto project = [det_tolerance](const Tensor2& A) {
        const Tensor2 S = symmetric_part(A);
        if (!is_positive_definite(S)) fail(ErrorCode::StepFailure, "advance: inelastic tensor lost definiteness");
        const Tensor2 U = unimodular(S);
        if (std::abs(det(U) - 1.0) > det_tolerance) {
            fail(ErrorCode::StepFailure, "advance: unimodular projection did not restore det = 1");
        }
        return U;
    };

    auto state_at = [&](double flow) {
        InternalState next;
        next.Ci = project(state.Ci + direction * flow);
        // Backward Euler for neo-Hookean backstresses reduces to an explicit
        // update up to a positive scalar factor, which the projection removes.
        next.C1i = h.c1 == 0.0 ? state.C1i : project(state.C1i + next.Ci * (flow * h.kappa1 * h.c1));
        next.C2i = h.c2 == 0.0 ? state.C2i : project(state.C2i + next.Ci * (flow * h.kappa2 * h.c2));
        const double ds = kSqrt2over3 * flow;
        next.s = state.s + ds;
        next.sd = (state.sd + h.beta * ds * next.s) / (1.0 + h.beta * ds);
        return next;
    };

    auto overstress_at = [&](const InternalState& st) {
        Tensor2 M = deviator(product(C_next, inverse(st.Ci))) * (params.mu / det_C_cbrt);
        M -= kinematic_mandel_dev(st.Ci, st.C1i, h.c1);
        M -= kinematic_mandel_dev(st.Ci, st.C2i, h.c2);
        return driving_force(M) - kSqrt2over3 * (params.K + isotropic_hardening(st, params));
    };

    // Perzyna law inverted: f = k0 (eta * flow / dt)^(1/m).
    const double inv_m = 1.0 / params.m;
    auto residual = [&](double flow) {
        return overstress_at(state_at(flow)) - params.k0 * std::pow(params.eta * flow / dt, inv_m);
    };

    // The frozen direction overshoots for large flow amounts, so the residual
    // is negative only on a window past the first root. Grow the bracket from
    // below in steps narrower than that window.
    double lo = 0.0;
    double r_lo = f_trial;
    double hi = f_trial / (3.0 * params.mu);
    double r_hi = residual(hi);
    for (int i = 0; r_hi > 0.0; ++i) {
        if (i > 400) fail(ErrorCode::StepFailure, "advance: could not bracket the flow increment");
        lo = hi;
        r_lo = r_hi;
        hi *= 1.5;
        r_hi = residual(hi);
    }
    if (r_hi == 0.0) return state_at(hi);

    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, r_lo, r_hi,
                                                          boost::math::tools::eps_tolerance<double>(52), max_iter);
    return state_at(0.5 * (a + b));
}

Trajectory evolve_state(const TensorPath& C_of_t, const InternalState& state0, const MaterialParams& params,
                        double t0, double t1, double dt, const IntegratorOptions& opts) {
    if (!(t1 > t0)) fail(ErrorCode::InvalidTimeGrid, "evolve_state: t1 must exceed t0");
    if (!(dt > 0.0)) fail(ErrorCode::InvalidTimeGrid, "evolve_state: dt must be positive");
    if (opts.substeps < 1) fail(ErrorCode::InvalidTimeGrid, "evolve_state: substeps must be >= 1");

    Trajectory traj;
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
    traj.times.push_back(t0);
    traj.states.push_back(state0);

    InternalState state = state0;
    double t_prev = t0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t_next = (i == n) ? t1 : t0 + static_cast<double>(i) * dt;
        const double h = (t_next - t_prev) / opts.substeps;
        for (int k = 1; k <= opts.substeps; ++k) {
            const double t = (k == opts.substeps) ? t_next : t_prev + k * h;
            state = advance(C_of_t(t), state, params, h, opts.det_tolerance);
        }
        traj.times.push_back(t_next);
        traj.states.push_back(state);
        t_prev = t_next;
    }
    return traj;
}

std::vector<Tensor2> cauchy_response(const TensorPath& F_of_t, std::span<const double> times,
                                     const MaterialParams& params, const IntegratorOptions& opts) {
    std::vector<Tensor2> out;
    if (times.empty()) return out;
    if (opts.substeps < 1) fail(ErrorCode::InvalidTimeGrid, "cauchy_response: substeps must be >= 1");
    out.reserve(times.size());
    InternalState state = InternalState::virgin();
    out.push_back(cauchy_stress(F_of_t(times[0]), state, params));
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double t_prev = times[i - 1];
        const double t_next = times[i];
        if (!(t_next > t_prev)) fail(ErrorCode::InvalidTimeGrid, "cauchy_response: times must increase");
        const double h = (t_next - t_prev) / opts.substeps;
        Tensor2 F;
        for (int k = 1; k <= opts.substeps; ++k) {
            const double t = (k == opts.substeps) ? t_next : t_prev + k * h;
            F = F_of_t(t);
            state = advance(product(transpose(F), F), state, params, h, opts.det_tolerance);
        }
        out.push_back(cauchy_stress(F, state, params));
    }
    return out;
}

}  // namespace vpid

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

// Finite-strain viscoplasticity with nonlinear isotropic hardening and two
// Armstrong-Frederick type backstresses, formulated on the reference
// configuration with internal variables of right Cauchy-Green type.
//
// All potentials are energies per unit reference volume (MPa); the reference
// mass density never appears on its own.

#include <array>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "vpid/tensor.hpp"

namespace vpid {

/// Hardening parameters in the fixed order (gamma, beta, c1, c2, kappa1, kappa2).
struct HardeningParams {
    static constexpr std::size_t kSize = 6;
    static constexpr std::array<std::string_view, kSize> kNames{"gamma", "beta", "c1", "c2", "kappa1", "kappa2"};

    double gamma = 0.0;   // MPa
    double beta = 0.0;    // -
    double c1 = 0.0;      // MPa
    double c2 = 0.0;      // MPa
    double kappa1 = 0.0;  // 1/MPa
    double kappa2 = 0.0;  // 1/MPa

    std::array<double, kSize> to_array() const noexcept { return {gamma, beta, c1, c2, kappa1, kappa2}; }
    static HardeningParams from_array(std::span<const double> v);

    double operator[](std::size_t i) const noexcept { return to_array()[i]; }

    /// True when every component is finite and non-negative.
    bool admissible() const noexcept;
    /// Throws InvalidParameter unless admissible().
    void validate() const;

    friend bool operator==(const HardeningParams&, const HardeningParams&) = default;
};

/// Identified hardening sets for 42CrMo4 obtained with the three weighting
/// strategies (W = Cov^-1, W = 1, W = diag(1/Cov_ii)).
namespace reference_sets {
inline constexpr HardeningParams kCovInverse{435.22, 2.625, 1661.7, 24672.0, 0.003810, 0.004282};
inline constexpr HardeningParams kIdentity{321.92, 2.003, 1488.4, 20512.0, 0.004087, 0.004526};
inline constexpr HardeningParams kDiagInverse{312.60, 1.913, 1505.5, 20687.0, 0.004089, 0.004516};
}  // namespace reference_sets

struct MaterialParams {
    double k = 135600.0;  // bulk modulus, MPa
    double mu = 52000.0;  // shear modulus, MPa
    double eta = 5.0e5;   // viscosity, s
    double m = 2.26;      // Perzyna exponent
    double K = 335.0;     // initial quasi-static yield stress, MPa
    double k0 = 1.0;      // overstress normalizer, MPa
    HardeningParams hardening = reference_sets::kCovInverse;

    /// Pre-identified 42CrMo4 constants with the given hardening set.
    static MaterialParams steel_42CrMo4(const HardeningParams& h = reference_sets::kCovInverse) {
        MaterialParams p;
        p.hardening = h;
        return p;
    }

    void validate() const;
};

struct InternalState {
    Tensor2 Ci = Tensor2::identity();
    Tensor2 C1i = Tensor2::identity();
    Tensor2 C2i = Tensor2::identity();
    double s = 0.0;   // accumulated inelastic arc length
    double sd = 0.0;  // its dissipative part

    /// Isotropic, undeformed, stress-free initial state.
    static InternalState virgin() noexcept { return {}; }

    friend bool operator==(const InternalState&, const InternalState&) = default;
};

struct Backstresses {
    Tensor2 X1;
    Tensor2 X2;
    Tensor2 X;  // X1 + X2
};

struct Overstress {
    double f = 0.0;         // viscous overstress, MPa
    double F = 0.0;         // driving force, MPa
    double lambda_i = 0.0;  // inelastic multiplier, 1/s
};

struct StressOutput {
    Tensor2 second_pk;
    Tensor2 cauchy;
    Tensor2 backstress_total;
    double R = 0.0;
    double overstress_f = 0.0;
    double driving_force_F = 0.0;
    double lambda_i = 0.0;
};

// -- potentials --------------------------------------------------------------

/// (k/2)(ln sqrt(det A))^2 + (mu/2)(tr unimodular(A) - 3). Throws NonPositiveDefinite.
double elastic_energy(const Tensor2& A, const MaterialParams& params);
/// (c/4)(tr unimodular(A) - 3)
double kinematic_energy(const Tensor2& A, double c);
/// (gamma/2) s_e^2
double isotropic_energy(double s_e, double gamma) noexcept;

// -- stress relations --------------------------------------------------------

Tensor2 second_pk_stress(const Tensor2& C, const InternalState& state, const MaterialParams& params);
Backstresses backstresses(const InternalState& state, const MaterialParams& params);
double isotropic_hardening(const InternalState& state, const MaterialParams& params) noexcept;

/// Perzyna rate (1/eta) <f/k0>^m.
double perzyna_rate(double f, const MaterialParams& params) noexcept;

Overstress overstress_and_multiplier(const Tensor2& C, const InternalState& state, const MaterialParams& params);

/// T = (det F)^-1 F T~ F^T. Throws NonPositiveDeterminant.
Tensor2 push_forward(const Tensor2& F, const Tensor2& second_pk);
Tensor2 cauchy_stress(const Tensor2& F, const InternalState& state, const MaterialParams& params);

/// Every stress-like quantity at deformation F and the given state.
StressOutput evaluate(const Tensor2& F, const InternalState& state, const MaterialParams& params);

// -- time integration --------------------------------------------------------

struct IntegratorOptions {
    /// Equal sub-intervals per output interval.
    int substeps = 1;
    /// Admissible defect |det - 1| of the inelastic tensors after projection.
    double det_tolerance = 1e-10;
};

/// One step from `state` to the end-of-step right Cauchy-Green tensor `C_next`.
///
/// The flow direction is frozen at the elastic trial state; the flow amount
/// dt*lambda_i is found from the Perzyna law evaluated at the end of the step
/// (scalar bracketed root). The backstress tensors use the closed-form backward
/// Euler update for neo-Hookean kinematic potentials, and every inelastic tensor
/// is projected back onto det = 1.
InternalState advance(const Tensor2& C_next, const InternalState& state, const MaterialParams& params, double dt,
                      double det_tolerance = 1e-10);

using TensorPath = std::function<Tensor2(double)>;

struct Trajectory {
    std::vector<double> times;
    std::vector<InternalState> states;
};

/// Integrates the internal state on the grid t0, t0 + dt, ..., t1 (the last
/// interval is shortened if dt does not divide t1 - t0).
Trajectory evolve_state(const TensorPath& C_of_t, const InternalState& state0, const MaterialParams& params,
                        double t0, double t1, double dt, const IntegratorOptions& opts = {});

/// Cauchy stress along a deformation-gradient path at the given output times,
/// starting from the virgin state at times.front().
std::vector<Tensor2> cauchy_response(const TensorPath& F_of_t, std::span<const double> times,
                                     const MaterialParams& params, const IntegratorOptions& opts = {});

}  // namespace vpid

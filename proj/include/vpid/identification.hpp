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

// Weighted least-squares identification of the hardening parameters from a
// shear stress-strain curve: Phi(p) = (Exp - Mod(p))^T W (Exp - Mod(p)),
// minimized as the plain l2 norm of the whitened residual W^(1/2)(Exp - Mod).

#include <Eigen/Dense>
#include <functional>
#include <string_view>
#include <vector>

#include "vpid/constitutive.hpp"
#include "vpid/loading.hpp"
#include "vpid/weighting.hpp"

namespace vpid {

struct ExperimentData {
    enum class Provenance { Synthetic, File };

    std::vector<double> observations;  // shear stress, MPa
    std::vector<double> abscissae;     // engineering shear strain
    Provenance provenance = Provenance::Synthetic;

    std::size_t size() const noexcept { return observations.size(); }
    /// Throws InsufficientData unless N > n_params, DataError on non-finite or ragged columns.
    void validate(std::size_t n_params = HardeningParams::kSize) const;
};

/// Substeps used for the torsion response unless the caller says otherwise.
inline constexpr IntegratorOptions kResponseIntegrator{4, 1e-10};

/// Cauchy shear stress T12 at every sample point of the program.
std::vector<double> model_response(const HardeningParams& p, const MaterialParams& fixed, const StrainProgram& program,
                                   const IntegratorOptions& integrator = kResponseIntegrator);

struct FdOptions {
    double rel_step = 1e-6;
    double abs_floor = 1e-8;
    unsigned threads = 1;
    IntegratorOptions integrator = kResponseIntegrator;
};

/// Central-difference N x 6 Jacobian dMod/dp; the step for component i is
/// max(rel_step * |p_i|, abs_floor).
Eigen::MatrixXd jacobian_fd(const HardeningParams& p, const MaterialParams& fixed, const StrainProgram& program,
                            const FdOptions& opts = {});

// -- Levenberg-Marquardt ------------------------------------------------------

enum class StopReason { ZeroResidual, Gradient, RelativeDecrease, SmallStep, MaxIterations, DampingOverflow };
std::string_view to_string(StopReason reason) noexcept;

struct LmOptions {
    double initial_damping = 1e-3;
    double damping_factor = 10.0;
    double tol_g = 1e-8;   // infinity norm of the whitened gradient J^T r
    double tol_f = 1e-12;  // relative decrease of Phi on an accepted step
    double tol_x = 1e-13;  // relative step size
    int max_iterations = 200;
    bool nonnegative = true;  // project iterates onto x >= 0
    /// Parameter magnitudes below this use it as their scale.
    double scale_floor = 1e-8;
};

struct LmResult {
    Eigen::VectorXd x;
    double phi = 0.0;
    int iterations = 0;
    bool converged = false;
    StopReason reason = StopReason::MaxIterations;
    std::vector<double> phi_history;  // Phi after each accepted step, starting with Phi(x0)
};

/// Residual of the least-squares problem; Phi = |r(x)|^2.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Marquardt-scaled LM: (J^T J + lambda diag(J^T J)) dx = -J^T r, damping
/// divided by damping_factor on acceptance and multiplied on rejection.
/// Accepted steps never increase Phi. Throws NonFiniteResidual if r(x0) is not finite.
LmResult levenberg_marquardt(const ResidualFn& residual, const JacobianFn& jacobian, Eigen::VectorXd x0,
                             const LmOptions& opts = {});

struct FitResult {
    HardeningParams params;
    double phi = 0.0;
    int iterations = 0;
    Eigen::MatrixXd jacobian;  // N x 6 model Jacobian at params
    bool converged = false;
    StopReason reason = StopReason::MaxIterations;
    std::vector<double> phi_history;
};

struct IdentifyOptions {
    LmOptions lm;
    FdOptions fd;
    WhiteningFactor factor = WhiteningFactor::SymmetricRoot;
};

/// Fits the hardening parameters of `fixed` (its own hardening entry is
/// ignored) to `data` sampled along `program`.
FitResult identify(const HardeningParams& start, const ExperimentData& data, const WeightingScheme& scheme,
                   const MaterialParams& fixed, const StrainProgram& program, const IdentifyOptions& opts = {});

}  // namespace vpid

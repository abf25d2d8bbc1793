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

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string_view>

namespace vpid {

enum class WeightingKind { Identity, DiagInverseCov, FullInverseCov, Custom };

std::string_view to_string(WeightingKind kind) noexcept;
/// Accepts identity | diag_inv_cov | full_inv_cov (and the long spellings
/// diag_inverse_cov / full_inverse_cov). Throws ConfigError otherwise.
WeightingKind parse_weighting_kind(std::string_view text);

/// Which factor M with M^T M = W realizes W^(1/2).
enum class WhiteningFactor { SymmetricRoot, Cholesky };

/// Symmetric positive definite N x N weighting matrix of the error functional
/// Phi = r^T W r. Identity and diagonal kinds keep only the diagonal; the full
/// matrix is built on request.
class WeightingScheme {
public:
    static WeightingScheme identity(std::size_t n);
    /// W_ij = delta_ij / Cov_ii
    static WeightingScheme diag_inverse_cov(const Eigen::MatrixXd& cov);
    /// W = Cov^-1
    static WeightingScheme full_inverse_cov(const Eigen::MatrixXd& cov);
    /// Throws FactorizationFailure unless W is symmetric positive definite.
    static WeightingScheme custom(const Eigen::MatrixXd& W);

    WeightingKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return n_; }
    bool is_diagonal() const noexcept { return kind_ == WeightingKind::Identity || kind_ == WeightingKind::DiagInverseCov; }

    /// Diagonal weights (diagonal kinds only).
    const Eigen::VectorXd& diagonal() const;
    Eigen::MatrixXd matrix() const;

    /// W r
    Eigen::VectorXd apply(const Eigen::VectorXd& r) const;
    /// r^T W r. Throws DimensionMismatch.
    double quadratic_form(std::span<const double> r) const;

    /// M with M^T M = W. Throws FactorizationFailure if W is not numerically PD.
    Eigen::MatrixXd factor(WhiteningFactor which = WhiteningFactor::SymmetricRoot) const;

private:
    WeightingScheme(WeightingKind kind, std::size_t n) : kind_(kind), n_(n) {}

    WeightingKind kind_;
    std::size_t n_;
    Eigen::VectorXd diag_;
    Eigen::MatrixXd full_;
};

/// Phi = resid^T W resid
double error_functional(std::span<const double> resid, const WeightingScheme& scheme);

/// W^(1/2) resid; its squared l2 norm equals error_functional(resid, scheme).
Eigen::VectorXd whiten(std::span<const double> resid, const WeightingScheme& scheme,
                       WhiteningFactor which = WhiteningFactor::SymmetricRoot);

}  // namespace vpid

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

#include "vpid/weighting.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "vpid/errors.hpp"
#include "vpid/simd/kernels.hpp"

namespace vpid {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
    }
}

void require_spd(const Eigen::MatrixXd& W) {
    const double scale = W.norm();
    if (!W.allFinite() || (W - W.transpose()).norm() > 1e-12 * scale) {
        fail(ErrorCode::FactorizationFailure, "weighting matrix must be finite and symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(W);
    if (llt.info() != Eigen::Success) fail(ErrorCode::FactorizationFailure, "weighting matrix is not positive definite");
}

}  // namespace

std::string_view to_string(WeightingKind kind) noexcept {
    switch (kind) {
        case WeightingKind::Identity: return "identity";
        case WeightingKind::DiagInverseCov: return "diag_inv_cov";
        case WeightingKind::FullInverseCov: return "full_inv_cov";
        case WeightingKind::Custom: return "custom";
    }
    return "unknown";
}

WeightingKind parse_weighting_kind(std::string_view text) {
    if (text == "identity") return WeightingKind::Identity;
    if (text == "diag_inv_cov" || text == "diag_inverse_cov") return WeightingKind::DiagInverseCov;
    if (text == "full_inv_cov" || text == "full_inverse_cov") return WeightingKind::FullInverseCov;
    fail(ErrorCode::ConfigError, "unknown weighting '" + std::string(text) + "'");
}

WeightingScheme WeightingScheme::identity(std::size_t n) {
    if (n == 0) fail(ErrorCode::DimensionMismatch, "weighting scheme needs N > 0");
    WeightingScheme w(WeightingKind::Identity, n);
    w.diag_ = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    return w;
}

WeightingScheme WeightingScheme::diag_inverse_cov(const Eigen::MatrixXd& cov) {
    require_square(cov, "covariance");
    WeightingScheme w(WeightingKind::DiagInverseCov, static_cast<std::size_t>(cov.rows()));
    if ((cov.diagonal().array() <= 0.0).any() || !cov.diagonal().allFinite()) {
        fail(ErrorCode::FactorizationFailure, "diagonal weighting needs positive variances");
    }
    w.diag_ = cov.diagonal().cwiseInverse();
    return w;
}

WeightingScheme WeightingScheme::full_inverse_cov(const Eigen::MatrixXd& cov) {
    require_square(cov, "covariance");
    require_spd(cov);
    WeightingScheme w(WeightingKind::FullInverseCov, static_cast<std::size_t>(cov.rows()));
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
    w.full_ = 0.5 * (inv + inv.transpose());
    return w;
}

WeightingScheme WeightingScheme::custom(const Eigen::MatrixXd& W) {
    require_square(W, "weighting matrix");
    require_spd(W);
    WeightingScheme w(WeightingKind::Custom, static_cast<std::size_t>(W.rows()));
    w.full_ = W;
    return w;
}

const Eigen::VectorXd& WeightingScheme::diagonal() const {
    if (!is_diagonal()) fail(ErrorCode::DimensionMismatch, "weighting scheme is not diagonal");
    return diag_;
}

Eigen::MatrixXd WeightingScheme::matrix() const {
    if (is_diagonal()) return diag_.asDiagonal();
    return full_;
}

Eigen::VectorXd WeightingScheme::apply(const Eigen::VectorXd& r) const {
    if (static_cast<std::size_t>(r.size()) != n_) fail(ErrorCode::DimensionMismatch, "W r: size mismatch");
    if (is_diagonal()) return diag_.cwiseProduct(r);
    Eigen::VectorXd out(r.size());
    // W is symmetric, so its column-major storage doubles as row-major.
    simd::active().gemv(full_.data(), r.data(), out.data(), n_, n_);
    return out;
}

double WeightingScheme::quadratic_form(std::span<const double> r) const {
    if (r.size() != n_) fail(ErrorCode::DimensionMismatch, "r^T W r: size mismatch");
    if (kind_ == WeightingKind::Identity) return simd::dot(r, r);
    const Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
    const Eigen::VectorXd wr = apply(rv);
    return simd::dot(r, std::span<const double>(wr.data(), n_));
}

Eigen::MatrixXd WeightingScheme::factor(WhiteningFactor which) const {
    if (is_diagonal()) {
        if ((diag_.array() <= 0.0).any()) fail(ErrorCode::FactorizationFailure, "weights must be positive");
        return diag_.cwiseSqrt().asDiagonal();
    }
    if (which == WhiteningFactor::Cholesky) {
        const Eigen::LLT<Eigen::MatrixXd> llt(full_);
        if (llt.info() != Eigen::Success) fail(ErrorCode::FactorizationFailure, "Cholesky factorization of W failed");
        return llt.matrixU();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full_);
    if (es.info() != Eigen::Success || (es.eigenvalues().array() <= 0.0).any()) {
        fail(ErrorCode::FactorizationFailure, "W is not numerically positive definite");
    }
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

double error_functional(std::span<const double> resid, const WeightingScheme& scheme) {
    return scheme.quadratic_form(resid);
}

Eigen::VectorXd whiten(std::span<const double> resid, const WeightingScheme& scheme, WhiteningFactor which) {
    if (resid.size() != scheme.size()) fail(ErrorCode::DimensionMismatch, "whiten: size mismatch");
    const Eigen::Map<const Eigen::VectorXd> r(resid.data(), static_cast<Eigen::Index>(resid.size()));
    if (scheme.is_diagonal()) {
        if ((scheme.diagonal().array() <= 0.0).any()) fail(ErrorCode::FactorizationFailure, "weights must be positive");
        return scheme.diagonal().cwiseSqrt().cwiseProduct(r);
    }
    return scheme.factor(which) * r;
}

}  // namespace vpid

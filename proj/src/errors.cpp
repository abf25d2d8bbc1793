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

#include "vpid/errors.hpp"

namespace vpid {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
        case ErrorCode::SingularTensor: return "SingularTensor";
        case ErrorCode::NonPositiveDefinite: return "NonPositiveDefinite";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::StepFailure: return "StepFailure";
        case ErrorCode::InvalidTimeGrid: return "InvalidTimeGrid";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidProgram: return "InvalidProgram";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::FactorizationFailure: return "FactorizationFailure";
        case ErrorCode::NonFiniteResidual: return "NonFiniteResidual";
        case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::DegenerateData: return "DegenerateData";
        case ErrorCode::UnsupportedModel: return "UnsupportedModel";
        case ErrorCode::SingularNormalMatrix: return "SingularNormalMatrix";
        case ErrorCode::NonFiniteJacobian: return "NonFiniteJacobian";
        case ErrorCode::ZeroReferenceParameter: return "ZeroReferenceParameter";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::DataError: return "DataError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace vpid

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

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpid {

enum class ErrorCode {
    // tensor_core
    NonPositiveDeterminant,
    SingularTensor,
    // constitutive
    NonPositiveDefinite,
    InvalidParameter,
    StepFailure,
    InvalidTimeGrid,
    // loading
    OutOfRange,
    InvalidProgram,
    // identification
    DimensionMismatch,
    FactorizationFailure,
    NonFiniteResidual,
    MaxIterationsExceeded,
    InsufficientData,
    // noise
    DegenerateData,
    UnsupportedModel,
    // sensitivity / metric
    SingularNormalMatrix,
    NonFiniteJacobian,
    ZeroReferenceParameter,
    // cli_io
    ConfigError,
    DataError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace vpid

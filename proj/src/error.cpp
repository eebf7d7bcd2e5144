// Copyright 2026 The SDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdc/error.hpp"

namespace sdc {

std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::ConstructionUnavailable: return "ConstructionUnavailable";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::ArgOutOfRange: return "ArgOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NoLocalMapFound: return "NoLocalMapFound";
    case ErrorCode::NonUnitaryResolution: return "NonUnitaryResolution";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::PropertyViolated: return "PropertyViolated";
    case ErrorCode::NonInvolutory: return "NonInvolutory";
    case ErrorCode::NonDeterministicOutcome: return "NonDeterministicOutcome";
    case ErrorCode::CollisionDetected: return "CollisionDetected";
    case ErrorCode::MessageOutOfRange: return "MessageOutOfRange";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

SdcError::SdcError(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what),
      code_(code) {}

void fail(ErrorCode code, const std::string &what) { throw SdcError(code, what); }

} // namespace sdc

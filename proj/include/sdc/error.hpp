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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdc {

enum class ErrorCode {
    UnsupportedOrder,
    ConstructionUnavailable,
    InvalidMatrix,
    IndexOutOfRange,
    LabelOutOfRange,
    ArgOutOfRange,
    DimensionMismatch,
    OrderMismatch,
    NoLocalMapFound,
    NonUnitaryResolution,
    NoMatch,
    PropertyViolated,
    NonInvolutory,
    NonDeterministicOutcome,
    CollisionDetected,
    MessageOutOfRange,
    ConfigError,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI exit-code mapping) can branch on the kind.
class SdcError : public std::runtime_error {
  public:
    SdcError(ErrorCode code, const std::string &what);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &what);

} // namespace sdc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nsm {

enum class ErrorCode : int {
    InvalidArgument = 1,
    Config = 2,
    Io = 3,
    Solver = 4,
    Cfl = 5,
    Blowup = 6,
    Horizon = 7,
    BelowThreshold = 8,
    Resolution = 9,
    StudyFailed = 10,
    Internal = 11,
};

/// Library exception carrying a stable error code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

const char* error_code_name(ErrorCode code) noexcept;

}  // namespace nsm

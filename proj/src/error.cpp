// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"

namespace nsm {

void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

const char* error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
    case ErrorCode::Solver: return "solver";
    case ErrorCode::Cfl: return "cfl";
    case ErrorCode::Blowup: return "blowup";
    case ErrorCode::Horizon: return "horizon";
    case ErrorCode::BelowThreshold: return "below-threshold";
    case ErrorCode::Resolution: return "resolution";
    case ErrorCode::StudyFailed: return "study-failed";
    case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace nsm

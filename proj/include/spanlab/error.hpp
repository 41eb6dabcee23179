// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spanlab {

enum class ErrorCode {
    InvalidParams,
    InvalidEps,
    InvalidAlpha,
    InvalidConfig,
    CapExceeded,
    VertexSetMismatch,
    NotSubgraph,
    Undershoot,
    LostConnectivity,
    Unreachable,
    NonterminationGuard,
    TooSparse,
    InfeasibleStripes,
    SpecViolation,
    DivisibilityViolation,
    CardinalityMismatch,
    NonIntegralZ,
    PortCollision,
    PairDisconnected,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidEps: return "InvalidEps";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::VertexSetMismatch: return "VertexSetMismatch";
    case ErrorCode::NotSubgraph: return "NotSubgraph";
    case ErrorCode::Undershoot: return "Undershoot";
    case ErrorCode::LostConnectivity: return "LostConnectivity";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NonterminationGuard: return "NonterminationGuard";
    case ErrorCode::TooSparse: return "TooSparse";
    case ErrorCode::InfeasibleStripes: return "InfeasibleStripes";
    case ErrorCode::SpecViolation: return "SpecViolation";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::NonIntegralZ: return "NonIntegralZ";
    case ErrorCode::PortCollision: return "PortCollision";
    case ErrorCode::PairDisconnected: return "PairDisconnected";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// The single exception type thrown by the library. `code()` identifies the
/// failure class; the message carries the concrete witness.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace spanlab

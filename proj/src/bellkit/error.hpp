// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bellkit {

enum class ErrorCode {
    NotUnitary,
    NotDthRoot,
    DimensionMismatch,
    InvalidMeasurement,
    ScenarioMismatch,
    TooLarge,
    SignalingDetected,
    OutOfRange,
    NotBinaryObservable,
    NotDValuedObservable,
    NotSelfAdjoint,
    NotMaximal,
    SupportMismatch,
    NoConvergence,
    UnknownCommand,
    InvalidParameter,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotDthRoot: return "NotDthRoot";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidMeasurement: return "InvalidMeasurement";
    case ErrorCode::ScenarioMismatch: return "ScenarioMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SignalingDetected: return "SignalingDetected";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotBinaryObservable: return "NotBinaryObservable";
    case ErrorCode::NotDValuedObservable: return "NotDValuedObservable";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// C layer can translate it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// InvalidParameter with the offending field and the violated constraint kept
/// separately for machine-readable error payloads.
class ParameterError : public Error {
public:
    ParameterError(std::string field, std::string constraint)
        : Error(ErrorCode::InvalidParameter, field + " must satisfy " + constraint),
          field_(std::move(field)),
          constraint_(std::move(constraint))
    {}

    const std::string& field() const noexcept { return field_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string field_;
    std::string constraint_;
};

}  // namespace bellkit

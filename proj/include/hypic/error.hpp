#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypic {

enum class ErrorCode {
    MalformedInput,
    IntegerWeight,
    ProjectiveTotalNonintegral,
    DuplicateHyperplane,
    FlatNotInArrangement,
    NotCentral,
    NotAffine,
    BackendDisagreement,
    NonintegralTotal,
    InconsistentRecursion,
    FlatNotDenseNorInB,
    InconsistentBounds,
    DualMismatch,
    ConditionAFailed,
    ConditionAUndetermined,
    CorollaryViolation,
    GenerationFailed,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput: return "MALFORMED_INPUT";
        case ErrorCode::IntegerWeight: return "INTEGER_WEIGHT";
        case ErrorCode::ProjectiveTotalNonintegral: return "PROJECTIVE_TOTAL_NONINTEGRAL";
        case ErrorCode::DuplicateHyperplane: return "DUPLICATE_HYPERPLANE";
        case ErrorCode::FlatNotInArrangement: return "FLAT_NOT_IN_ARRANGEMENT";
        case ErrorCode::NotCentral: return "NOT_CENTRAL";
        case ErrorCode::NotAffine: return "NOT_AFFINE";
        case ErrorCode::BackendDisagreement: return "BACKEND_DISAGREEMENT";
        case ErrorCode::NonintegralTotal: return "NONINTEGRAL_TOTAL";
        case ErrorCode::InconsistentRecursion: return "INCONSISTENT_RECURSION";
        case ErrorCode::FlatNotDenseNorInB: return "FLAT_NOT_DENSE_NOR_IN_B";
        case ErrorCode::InconsistentBounds: return "INCONSISTENT_BOUNDS";
        case ErrorCode::DualMismatch: return "DUAL_MISMATCH";
        case ErrorCode::ConditionAFailed: return "CONDITION_A_FAILED";
        case ErrorCode::ConditionAUndetermined: return "CONDITION_A_UNDETERMINED";
        case ErrorCode::CorollaryViolation: return "COROLLARY_VIOLATION";
        case ErrorCode::GenerationFailed: return "GENERATION_FAILED";
    }
    return "UNKNOWN";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hypic

#include "hopflab/error.hpp"

namespace hopflab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ModulusNotGreaterThanOne: return "ModulusNotGreaterThanOne";
    case ErrorCode::MixedModes: return "MixedModes";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NotDescending: return "NotDescending";
    case ErrorCode::NumericMismatch: return "NumericMismatch";
    case ErrorCode::NotQuasiRegular: return "NotQuasiRegular";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalAssertion: return "InternalAssertion";
    }
    return "Unknown";
}

} // namespace hopflab

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hopflab {

enum class ErrorCode {
    ParseError,
    ModulusNotGreaterThanOne,
    MixedModes,
    DimensionMismatch,
    PrecisionExhausted,
    NotCertified,
    FactorizationFailed,
    Overflow,
    EnumerationCapExceeded,
    ZeroPoint,
    NonConvergence,
    StepTooLarge,
    NotDescending,
    NumericMismatch,
    NotQuasiRegular,
    InvalidArgument,
    InternalAssertion,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised when a computed quantity contradicts a proven identity, i.e. a bug.
inline void check_invariant(bool ok, const std::string& what) {
    if (!ok)
        throw Error(ErrorCode::InternalAssertion, what);
}

} // namespace hopflab

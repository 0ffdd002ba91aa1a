#include "ratinterp/error.hpp"

namespace ratinterp {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroDenominator: return "zero-denominator";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::ZeroInput: return "zero-input";
    case ErrorCode::ZeroNumerator: return "zero-numerator";
    case ErrorCode::MuSearchExhausted: return "mu-search-exhausted";
    case ErrorCode::ChainTooLarge: return "chain-too-large";
    case ErrorCode::ExponentOverflow: return "exponent-overflow";
    case ErrorCode::GenerationFailed: return "generation-failed";
    case ErrorCode::OracleScale: return "oracle-scale";
    case ErrorCode::ValidationFailed: return "validation-failed";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)), code_(code)
{
}

} // namespace ratinterp

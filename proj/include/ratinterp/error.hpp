#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratinterp {

enum class ErrorCode {
    ZeroDenominator,
    Pole,
    ZeroInput,
    ZeroNumerator,
    MuSearchExhausted,
    ChainTooLarge,
    ExponentOverflow,
    GenerationFailed,
    OracleScale,
    ValidationFailed,
    Parse,
    InvalidArgument,
};

/// Stable kebab-case name of an error code, e.g. "mu-search-exhausted".
std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library. what() is
/// "<code>: <detail>" so callers can match on the prefix.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ratinterp

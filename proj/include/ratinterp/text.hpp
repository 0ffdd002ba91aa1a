#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "ratinterp/core.hpp"

namespace ratinterp {

/// Canonical form: terms in increasing monomial order, each written
/// c*x1^e1*...*xn^en with a signed decimal coefficient, wrapped in
/// parentheses, e.g. "(-1*x1^0+1*x1^1)". The zero polynomial is "(0)".
std::string format_poly(const MultiPoly &p);

/// "(num)/(den)"
std::string format_rational(const RationalFunction &h);

/// Parses a sum of terms such as "3*x1^2*x2 - x2 + 7". Variables are x1..xn;
/// a missing exponent means 1 and a missing coefficient means 1. With
/// nvars unset the count is the largest index seen (at least 1).
/// Throws Parse on malformed text.
MultiPoly parse_poly(std::string_view text, std::optional<std::size_t> nvars = std::nullopt);

/// Parses "P/Q" or a bare "P" (denominator 1) and canonicalizes the pair.
RationalFunction parse_rational(std::string_view text, std::optional<std::size_t> nvars = std::nullopt);

/// Numerator and denominator exactly as written in a function spec file.
struct FunctionSpec {
    MultiPoly num;
    MultiPoly den;
};

/// Reads {"n": k, "numerator": [{"c": "<decimal>", "e": [..]}, ...],
/// "denominator": [...]}. Throws Parse with a diagnostic on malformed input
/// and ZeroDenominator for an empty denominator.
FunctionSpec parse_function_spec(std::string_view json_text);
FunctionSpec load_function_spec(const std::string &path);

/// Inverse of parse_function_spec for a canonical function.
std::string dump_function_spec(const MultiPoly &num, const MultiPoly &den);

} // namespace ratinterp

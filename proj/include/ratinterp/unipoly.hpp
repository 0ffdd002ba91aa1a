#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "ratinterp/core.hpp"

namespace ratinterp {

enum class DecodeFailure {
    GapResidue,      // a base-beta digit fell strictly between C and beta - C
    DegreeOverflow,  // an exponent exceeded the caller's degree cap
    TermOverflow,    // more terms than the caller's term cap
};

std::string_view to_string(DecodeFailure f) noexcept;

/// Outcome of a digit decode: a polynomial or a failure marker, plus the
/// number of digit-loop iterations that were executed.
template <class Poly>
class Decoded {
public:
    static Decoded success(Poly p, std::size_t steps) { return Decoded(std::move(p), DecodeFailure{}, steps); }
    static Decoded fail(DecodeFailure why, std::size_t steps) { return Decoded(std::nullopt, why, steps); }

    bool ok() const noexcept { return poly_.has_value(); }
    explicit operator bool() const noexcept { return ok(); }

    const Poly &poly() const
    {
        if (!poly_) {
            throw Error(ErrorCode::InvalidArgument, "poly() on a failed decode");
        }
        return *poly_;
    }
    Poly &&take() && { return std::move(*poly_); }
    DecodeFailure failure() const noexcept { return failure_; }
    std::size_t steps() const noexcept { return steps_; }

private:
    Decoded(std::optional<Poly> p, DecodeFailure f, std::size_t steps)
        : poly_(std::move(p)), failure_(f), steps_(steps)
    {
    }

    std::optional<Poly> poly_;
    DecodeFailure failure_;
    std::size_t steps_;
};

using DecodeResult = Decoded<UniPoly>;

struct DecodeLimits {
    std::optional<Exponent> max_deg;
    std::optional<std::size_t> max_terms;
};

/// Largest e with beta^e | rho, found with a repeated-squaring ladder
/// [beta, beta^2, beta^4, ...] in O(log^2 e) integer operations. rho may be
/// negative. Throws ZeroInput for rho = 0.
Exponent min_deg(const Integer &rho, const Integer &beta);

/// Balanced digit of x^d in rho: v = (rho / beta^d) mod beta mapped to v if
/// v <= C, v - beta if v >= beta - C, and 0 when v lies in the gap between.
/// Requires beta >= 2C + 1 and beta^d | rho.
Integer min_coef(const Integer &rho, const Integer &beta, Exponent d, const Integer &coef_bound);

/// Recovers the unique f with |coefficients| <= C and f(beta) = rho by
/// peeling the lowest nonzero digit repeatedly. rho = 0 yields the zero
/// polynomial. steps() counts loop iterations, equal to #f on success.
DecodeResult upoly_decode(const Integer &rho, const Integer &beta, const Integer &coef_bound,
                          const DecodeLimits &limits = {});

/// floor(log_beta(2|rho|)) by exact comparison against powers of beta.
/// Throws ZeroInput for rho = 0.
Exponent top_degree(const Integer &rho, const Integer &beta);

} // namespace ratinterp

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "ratinterp/core.hpp"
#include "ratinterp/unipoly.hpp"

namespace ratinterp {

/// Points beta_i = (beta + c_i)^(base^(i-1)) with base = D+1 or 2D+1.
/// Shifts must be positive and nondecreasing. Throws ChainTooLarge when
/// base^(n-1) * D would exceed 2^62.
SubstitutionChain build_chain(const Integer &beta, std::span<const std::uint64_t> shifts, Exponent degree,
                              ExpBase base);

/// Which bound limits the coefficient values decoded above level 1.
enum class BoundMode {
    Exact,   // C beta_{i-1}^D (beta_1 - beta_1^(1-T)) / (beta_1 - 1)
    Remark,  // C beta_{i-1}^D beta_1 / (beta_1 - 1), for the smaller 3C+1 base
};

/// Bound on |f_j(beta_1, ..., beta_{level-1})| for the coefficients f_j of
/// x_level. Level 1 returns C. The rational expression is floored exactly.
Integer coef_bound(const Integer &coef_bound, std::size_t level, std::span<const Integer> points,
                   std::size_t term_bound, Exponent degree, BoundMode mode);

using MultiDecodeResult = Decoded<MultiPoly>;

/// Recursive Kronecker decode of rho at points (beta_1, ..., beta_n): the
/// x_n digits first, then each digit as a polynomial in the lower variables
/// with budgets (T - t + 1, D - d_i). A missing term bound means unbounded.
/// steps() totals the digit-loop iterations over every level.
MultiDecodeResult mpoly_decode(std::span<const Integer> points, const Integer &rho,
                               std::optional<std::size_t> term_bound, Exponent degree, const Integer &coef_bound,
                               BoundMode mode);

inline MultiDecodeResult mpoly_decode(const SubstitutionChain &chain, const Integer &rho,
                                      std::optional<std::size_t> term_bound, Exponent degree,
                                      const Integer &coef_bound, BoundMode mode)
{
    return mpoly_decode(chain.points, rho, term_bound, degree, coef_bound, mode);
}

} // namespace ratinterp

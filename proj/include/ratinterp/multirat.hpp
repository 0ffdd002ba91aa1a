#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ratinterp/core.hpp"
#include "ratinterp/multipoly.hpp"
#include "ratinterp/unirat.hpp"

namespace ratinterp {

/// n values drawn uniformly from {1, ..., N}, sorted nondecreasing.
/// Deterministic for a given seed.
std::vector<std::uint64_t> sample_shifts(std::size_t n, std::uint64_t shift_range, std::uint64_t seed);

/// max(0, 1 - 2(2D+1)^(2n) / N): lower bound on the probability that the
/// one-point multivariate interpolator returns the right function.
Fraction success_lower_bound(Exponent degree, std::size_t n, std::uint64_t shift_range);

struct MultiInterpolationOptions {
    std::uint64_t seed = 0;
    std::uint64_t max_iter = 10'000'000;
    /// Re-check the answer against the black box at this many random points.
    /// Zero (the default) skips the check.
    std::size_t validation_points = 0;
};

struct MultiInterpolationResult : InterpolationResult {
    SubstitutionChain chain;
    /// Set when validation ran; every extra point matched.
    std::optional<bool> validated;
};

/// One-point probabilistic recovery: beta = 2TC^2 + 1, random shifts, chain
/// with exponent base 2D+1. Issues exactly one query (plus any validation
/// queries). Throws MuSearchExhausted after max_iter multipliers and
/// ValidationFailed when a requested validation point disagrees.
MultiInterpolationResult mrfunsi1(BlackBox &bb, std::size_t term_bound, Exponent degree_bound,
                                  const Integer &coef_bound, std::uint64_t shift_range,
                                  const MultiInterpolationOptions &opts);

/// Ratio gate on the last coordinate: base beta_n against beta_n + 1 with
/// E = 1 + 2C / ((beta_1 - 1)(beta_n - 1)).
RatioGate mv_ratio_gate(const Integer &a1, const Integer &a2, std::span<const Integer> points, Exponent d_last,
                        Exponent last_degree_bound, const Integer &coef_bound);

/// Two-point probabilistic recovery: beta = 3C+1, chain with exponent base
/// D+1, values at (beta_1..beta_n) and (beta_1..beta_n + 1), gated search
/// with interval pruning and cross-point verification.
MultiInterpolationResult mrfunsi2(BlackBox &bb, Exponent degree_bound, Exponent last_degree_bound,
                                  const Integer &coef_bound, std::uint64_t shift_range,
                                  const MultiInterpolationOptions &opts);

} // namespace ratinterp

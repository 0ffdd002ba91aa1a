#pragma once

#include <cstddef>
#include <cstdint>

#include "ratinterp/core.hpp"

namespace ratinterp {

/// Which evaluation point a two-point search decodes at.
enum class Side {
    Base,     // beta (or beta_1..beta_n)
    Shifted,  // beta + 1 (or beta_n + 1 in the last coordinate)
};

struct InterpolationResult {
    RationalFunction function;
    /// Accepted multiplier i: i * a (resp. i * b) decoded to the returned
    /// numerator (denominator) before canonicalization. 0 for h = 0.
    Integer mu = 0;
    Side side = Side::Base;
    std::size_t queries = 0;     // black-box queries issued by this call
    std::size_t iterations = 0;  // candidate multipliers examined
    std::size_t decodes = 0;     // polynomial decode calls
    std::size_t pruned = 0;      // candidates skipped by the interval test
};

/// Deterministic recovery from one value at beta = 2TC^2 + 1. Issues exactly
/// one query. Throws MuSearchExhausted after max_iter multipliers.
InterpolationResult urfunsi1(BlackBox &bb, std::size_t term_bound, const Integer &coef_bound,
                             std::uint64_t max_iter);

/// Deterministic recovery from values at beta = ceil(sqrt(2 max(T,5)) C) and
/// beta + 1. Candidates decoded at beta are checked against h(beta + 1).
InterpolationResult urfunsi2(BlackBox &bb, std::size_t term_bound, const Integer &coef_bound,
                             std::uint64_t max_iter);

/// max(1, floor(beta^(D+1) / (2|a|))), an upper bound on the scale linking
/// the reduced value a to f(beta). Throws ZeroNumerator for a = 0.
Integer mu_upper_bound(const Integer &a, const Integer &beta, Exponent degree_bound);

enum class GateDecision {
    Base,            // Q1 >= E: mu_2 > mu_1, search at the base point
    Shifted,         // Q2 <= 1/E: mu_2 < mu_1, search at the shifted point
    CompareBounds,   // undecided; pick the side with the smaller mu bound
};

struct RatioGate {
    Fraction q1;
    Fraction q2;
    Fraction e;
    Exponent d = 0;
    Exponent dcap = 0;
    GateDecision decision = GateDecision::CompareBounds;
};

/// Q1 = |a1|(base+1)^d / (|a2| base^d), Q2 likewise with dcap, against the
/// caller's tolerance E. Exact rational arithmetic throughout.
RatioGate make_ratio_gate(const Integer &a1, const Integer &a2, const Integer &base, Exponent d, Exponent dcap,
                          Fraction e);

/// make_ratio_gate with E = 1 + 2C / (beta (beta - 1)).
RatioGate ratio_gate(const Integer &a1, const Integer &a2, const Integer &beta, Exponent d, Exponent dcap,
                     const Integer &coef_bound);

/// Side to search, falling back to k1 < k2 when the gate is undecided.
Side choose_side(const RatioGate &gate, const Integer &k1, const Integer &k2);

/// True iff the open interval (lo, hi) contains an integer.
bool interval_contains_integer(const Fraction &lo, const Fraction &hi);

/// Probabilistic recovery from values at beta = 3C + 1 and beta + 1 given a
/// degree bound D. A wrong function can pass the single-point verification.
InterpolationResult urfunsip(BlackBox &bb, Exponent degree_bound, const Integer &coef_bound,
                             std::uint64_t max_iter);

/// ceil(sqrt(x)) for x >= 0.
Integer ceil_sqrt(const Integer &x);

} // namespace ratinterp

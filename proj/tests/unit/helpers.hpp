#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "ratinterp/core.hpp"

namespace testing {

using namespace ratinterp;

inline UniPoly uni(std::initializer_list<std::pair<long, Exponent>> terms)
{
    std::vector<UniTerm> out;
    for (const auto &[c, e] : terms) {
        out.push_back({Integer(c), e});
    }
    return UniPoly::from_terms(std::move(out));
}

inline MultiPoly multi(std::size_t n, std::initializer_list<std::pair<long, std::vector<Exponent>>> terms)
{
    std::vector<MultiTerm> out;
    for (const auto &[c, e] : terms) {
        out.push_back({Integer(c), e});
    }
    return MultiPoly::from_terms(n, std::move(out));
}

inline Integer pow_int(const Integer &b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// (x + 1)/(x - 1), the running univariate example.
inline RationalFunction x_plus_1_over_x_minus_1()
{
    return canonicalize(uni({{1, 0}, {1, 1}}), uni({{-1, 0}, {1, 1}}));
}

} // namespace testing

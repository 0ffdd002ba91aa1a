#include "ratinterp/multipoly.hpp"

#include <string>
#include <vector>

namespace ratinterp {

namespace {

Exponent chain_base(Exponent degree, ExpBase base)
{
    if (degree > kMaxExponent / 2) {
        throw Error(ErrorCode::ChainTooLarge, "degree bound too large for a Kronecker chain");
    }
    return base == ExpBase::DegreePlusOne ? degree + 1 : 2 * degree + 1;
}

constexpr std::uint64_t kMaxChainBits = std::uint64_t{1} << 32;

Integer power(const Integer &b, Exponent e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

bool decode_level(std::span<const Integer> points, const Integer &rho, std::optional<std::size_t> term_bound,
                  Exponent degree, const Integer &c, BoundMode mode, std::vector<MultiTerm> &out,
                  std::size_t &steps, DecodeFailure &why)
{
    const std::size_t level = points.size();
    const Integer bound = coef_bound(c, level, points, term_bound.value_or(0), degree,
                                     term_bound ? mode : BoundMode::Remark);
    auto digits = upoly_decode(rho, points[level - 1], bound, DecodeLimits{degree, term_bound});
    steps += digits.steps();
    if (!digits) {
        why = digits.failure();
        return false;
    }
    const UniPoly &g = digits.poly();
    if (level == 1) {
        for (const auto &t : g.terms()) {
            out.push_back({t.coef, {t.exp}});
        }
        return true;
    }
    const std::size_t t = g.size();
    const auto lower = points.first(level - 1);
    for (const auto &term : g.terms()) {
        std::vector<MultiTerm> sub;
        std::optional<std::size_t> budget;
        if (term_bound) {
            budget = *term_bound - t + 1;
        }
        if (!decode_level(lower, term.coef, budget, degree - term.exp, c, mode, sub, steps, why)) {
            return false;
        }
        for (auto &m : sub) {
            m.exps.push_back(term.exp);
            out.push_back(std::move(m));
        }
    }
    return true;
}

} // namespace

SubstitutionChain build_chain(const Integer &beta, std::span<const std::uint64_t> shifts, Exponent degree,
                              ExpBase base)
{
    if (shifts.empty()) {
        throw Error(ErrorCode::InvalidArgument, "a chain needs at least one shift");
    }
    if (beta < 1) {
        throw Error(ErrorCode::InvalidArgument, "chain base must be positive");
    }
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (shifts[i] < 1) {
            throw Error(ErrorCode::InvalidArgument, "shifts must be >= 1");
        }
        if (i > 0 && shifts[i] < shifts[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "shifts must be nondecreasing");
        }
    }
    const Exponent b = chain_base(degree, base);
    const Exponent dmax = std::max<Exponent>(degree, 1);

    SubstitutionChain chain;
    chain.beta = beta;
    chain.shifts.assign(shifts.begin(), shifts.end());
    chain.degree = degree;
    chain.base = base;
    Exponent e = 1;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (i > 0) {
            if (e > kMaxExponent / b) {
                throw Error(ErrorCode::ChainTooLarge, "chain exponent base^(n-1) overflows");
            }
            e *= b;
        }
        if (e > kMaxExponent / dmax) {
            throw Error(ErrorCode::ChainTooLarge, "chain exponent base^(n-1) * D exceeds 2^62");
        }
        const Integer base_i = beta + static_cast<unsigned long>(shifts[i]);
        // beta_n^D must stay far below GMP's size limit.
        const std::uint64_t bits = mpz_sizeinbase(base_i.get_mpz_t(), 2);
        if (e > kMaxChainBits / dmax / bits) {
            throw Error(ErrorCode::ChainTooLarge, "chain point beta_n^D would exceed 2^32 bits");
        }
        chain.points.push_back(power(base_i, e));
    }
    // beta_i >= beta_{i-1}^(D+1): same or larger base, exponent grows by
    // b >= D+1. Checked symbolically to avoid materializing the power.
    for (std::size_t i = 1; i < chain.points.size(); ++i) {
        if (shifts[i] < shifts[i - 1] || b < degree + 1) {
            throw Error(ErrorCode::InvalidArgument, "chain does not separate monomials");
        }
    }
    return chain;
}

Integer coef_bound(const Integer &c, std::size_t level, std::span<const Integer> points, std::size_t term_bound,
                   Exponent degree, BoundMode mode)
{
    if (level < 1 || level > points.size()) {
        throw Error(ErrorCode::InvalidArgument, "level out of range");
    }
    if (level == 1) {
        return c;
    }
    const Integer &b1 = points[0];
    const Integer scale = c * power(points[level - 2], degree);
    Fraction v;
    if (mode == BoundMode::Exact) {
        if (term_bound < 1) {
            throw Error(ErrorCode::InvalidArgument, "exact coefficient bound needs T >= 1");
        }
        // (b1 - b1^(1-T)) / (b1 - 1) == (b1^T - 1) / (b1^(T-1) (b1 - 1))
        const Integer top = power(b1, term_bound);
        v = Fraction(scale * (top - 1), power(b1, term_bound - 1) * (b1 - 1));
    } else {
        v = Fraction(scale * b1, b1 - 1);
    }
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return fl;
}

MultiDecodeResult mpoly_decode(std::span<const Integer> points, const Integer &rho,
                               std::optional<std::size_t> term_bound, Exponent degree, const Integer &coef_max,
                               BoundMode mode)
{
    if (points.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mpoly_decode needs at least one point");
    }
    std::vector<MultiTerm> terms;
    std::size_t steps = 0;
    DecodeFailure why{};
    if (!decode_level(points, rho, term_bound, degree, coef_max, mode, terms, steps, why)) {
        return MultiDecodeResult::fail(why, steps);
    }
    return MultiDecodeResult::success(MultiPoly::from_terms(points.size(), std::move(terms)), steps);
}

} // namespace ratinterp

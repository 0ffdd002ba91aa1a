#include "ratinterp/unipoly.hpp"

#include <cmath>
#include <vector>

namespace ratinterp {

std::string_view to_string(DecodeFailure f) noexcept
{
    switch (f) {
    case DecodeFailure::GapResidue: return "gap-residue";
    case DecodeFailure::DegreeOverflow: return "degree-overflow";
    case DecodeFailure::TermOverflow: return "term-overflow";
    }
    return "unknown";
}

namespace {

bool divisible(const Integer &a, const Integer &d)
{
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

void require_base(const Integer &beta, const Integer &coef_bound)
{
    if (coef_bound < 1) {
        throw Error(ErrorCode::InvalidArgument, "coefficient bound must be positive");
    }
    if (beta < 2 * coef_bound + 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "base " + beta.get_str() + " is below 2C+1 for C = " + coef_bound.get_str());
    }
}

// MinDeg ladder; also hands back rho / beta^e, which the ladder has already
// computed, so the decode loop does not divide twice.
Exponent min_deg_with_quotient(const Integer &rho, const Integer &beta, Integer &quotient)
{
    if (rho == 0) {
        throw Error(ErrorCode::ZeroInput, "min_deg of zero");
    }
    if (beta < 2) {
        throw Error(ErrorCode::InvalidArgument, "base must be >= 2");
    }
    Integer a = abs(rho);
    if (!divisible(a, beta)) {
        quotient = rho;
        return 0;
    }

    std::vector<Integer> ladder{beta};
    const auto abits = mpz_sizeinbase(a.get_mpz_t(), 2);
    for (;;) {
        const Integer &top = ladder.back();
        if (2 * mpz_sizeinbase(top.get_mpz_t(), 2) - 1 > abits) {
            break;
        }
        Integer next = top * top;
        if (!divisible(a, next)) {
            break;
        }
        ladder.push_back(std::move(next));
    }

    // beta^(2^s) | a but beta^(2^(s+1)) does not, so down <= e < up.
    std::size_t s = ladder.size() - 1;
    Exponent down = Exponent{1} << s;
    Exponent up = Exponent{1} << (s + 1);
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), ladder[s].get_mpz_t());

    // a == |rho| / beta^down throughout.
    while (up - down > 1) {
        if (!divisible(a, beta)) {
            break;
        }
        std::size_t s1 = 0;
        while (s1 + 1 < ladder.size() && divisible(a, ladder[s1 + 1])) {
            ++s1;
        }
        up = down + (Exponent{1} << (s1 + 1));
        down += Exponent{1} << s1;
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), ladder[s1].get_mpz_t());
    }
    quotient = rho < 0 ? Integer(-a) : a;
    return checked_exponent(down);
}

Integer balanced_digit(const Integer &q, const Integer &beta, const Integer &coef_bound)
{
    Integer v = mod_floor(q, beta);
    if (v <= coef_bound) {
        return v;
    }
    if (v >= beta - coef_bound) {
        return v - beta;
    }
    return 0;
}

} // namespace

Exponent min_deg(const Integer &rho, const Integer &beta)
{
    Integer q;
    return min_deg_with_quotient(rho, beta, q);
}

Integer min_coef(const Integer &rho, const Integer &beta, Exponent d, const Integer &coef_bound)
{
    require_base(beta, coef_bound);
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), beta.get_mpz_t(), d);
    if (!divisible(rho, p)) {
        throw Error(ErrorCode::InvalidArgument, "beta^d does not divide rho");
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), rho.get_mpz_t(), p.get_mpz_t());
    return balanced_digit(q, beta, coef_bound);
}

DecodeResult upoly_decode(const Integer &rho, const Integer &beta, const Integer &coef_bound,
                          const DecodeLimits &limits)
{
    require_base(beta, coef_bound);
    std::vector<UniTerm> terms;
    Integer u = rho;
    Integer q;
    Exponent shift = 0;
    std::size_t steps = 0;
    while (u != 0) {
        ++steps;
        const Exponent d = min_deg_with_quotient(u, beta, q);
        const Exponent exp = checked_exponent(shift + d);
        if (limits.max_deg && exp > *limits.max_deg) {
            return DecodeResult::fail(DecodeFailure::DegreeOverflow, steps);
        }
        Integer c = balanced_digit(q, beta, coef_bound);
        if (c == 0) {
            return DecodeResult::fail(DecodeFailure::GapResidue, steps);
        }
        if (limits.max_terms && terms.size() + 1 > *limits.max_terms) {
            return DecodeResult::fail(DecodeFailure::TermOverflow, steps);
        }
        // u := (u - c beta^d) / beta^(d+1) == (q - c) / beta
        q -= c;
        mpz_divexact(u.get_mpz_t(), q.get_mpz_t(), beta.get_mpz_t());
#ifdef RATINTERP_FAULT_INJECTION
        if (exp % 7 == 3) {
            c = -c;
        }
#endif
        terms.push_back({std::move(c), exp});
        shift = exp + 1;
    }
    return DecodeResult::success(UniPoly::from_terms(std::move(terms)), steps);
}

Exponent top_degree(const Integer &rho, const Integer &beta)
{
    if (rho == 0) {
        throw Error(ErrorCode::ZeroInput, "top_degree of zero");
    }
    if (beta < 2) {
        throw Error(ErrorCode::InvalidArgument, "base must be >= 2");
    }
    const Integer x = 2 * abs(rho);
    long xe = 0;
    long be = 0;
    const double xm = mpz_get_d_2exp(&xe, x.get_mpz_t());
    const double bm = mpz_get_d_2exp(&be, beta.get_mpz_t());
    const double ratio = (static_cast<double>(xe) + std::log2(xm)) / (static_cast<double>(be) + std::log2(bm));
    Exponent e = ratio > 1.0 ? static_cast<Exponent>(ratio) : 0;

    Integer p;
    mpz_pow_ui(p.get_mpz_t(), beta.get_mpz_t(), e);
    while (p > x) {
        mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), beta.get_mpz_t());
        --e;
    }
    for (;;) {
        Integer next = p * beta;
        if (next > x) {
            break;
        }
        p = std::move(next);
        ++e;
    }
    return e;
}

} // namespace ratinterp

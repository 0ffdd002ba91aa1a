#include "ratinterp/unirat.hpp"

#include <array>
#include <string>

#include "ratinterp/unipoly.hpp"

namespace ratinterp {

namespace {

void require_positive(const Integer &coef_bound, std::uint64_t max_iter)
{
    if (coef_bound < 1) {
        throw Error(ErrorCode::InvalidArgument, "coefficient bound C must be >= 1");
    }
    if (max_iter < 1) {
        throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
    }
}

Rational query_at(BlackBox &bb, const Integer &x)
{
    std::array<Integer, 1> point{x};
    return bb.query(point);
}

[[noreturn]] void exhausted(std::uint64_t tried)
{
    throw Error(ErrorCode::MuSearchExhausted,
                "no multiplier up to " + std::to_string(tried) + " decoded; check the T/D/C bounds");
}

InterpolationResult zero_result(std::size_t queries)
{
    InterpolationResult r;
    r.function = RationalFunction(1);
    r.queries = queries;
    return r;
}

// One-point search shared by the deterministic interpolators. Candidates
// that decode are passed to accept(), which may still reject them.
template <class Accept>
InterpolationResult search_one_side(const Rational &v, const Integer &beta, const Integer &coef_bound,
                                    const DecodeLimits &limits, std::uint64_t max_iter, Accept accept)
{
    InterpolationResult r;
    Integer ai = 0;
    Integer bi = 0;
    for (std::uint64_t i = 1; i <= max_iter; ++i) {
        ai += v.numer();
        bi += v.denom();
        ++r.iterations;
        ++r.decodes;
        auto f = upoly_decode(ai, beta, coef_bound, limits);
        if (!f) {
            continue;
        }
        ++r.decodes;
        auto g = upoly_decode(bi, beta, coef_bound, limits);
        if (!g) {
            continue;
        }
        if (!accept(f.poly(), g.poly())) {
            continue;
        }
        r.function = canonicalize(f.poly(), g.poly());
        r.mu = static_cast<unsigned long>(i);
        return r;
    }
    exhausted(max_iter);
}

} // namespace

Integer ceil_sqrt(const Integer &x)
{
    if (x < 0) {
        throw Error(ErrorCode::InvalidArgument, "square root of a negative number");
    }
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    if (r * r < x) {
        ++r;
    }
    return r;
}

InterpolationResult urfunsi1(BlackBox &bb, std::size_t term_bound, const Integer &coef_bound,
                             std::uint64_t max_iter)
{
    require_positive(coef_bound, max_iter);
    if (term_bound < 1) {
        throw Error(ErrorCode::InvalidArgument, "term bound T must be >= 1");
    }
    const auto before = bb.queries();
    const Integer beta = 2 * Integer(static_cast<unsigned long>(term_bound)) * coef_bound * coef_bound + 1;
    const Rational v = query_at(bb, beta);
    if (v.numer() == 0) {
        return zero_result(bb.queries() - before);
    }
    auto r = search_one_side(v, beta, coef_bound, DecodeLimits{std::nullopt, term_bound}, max_iter,
                             [](const UniPoly &, const UniPoly &) { return true; });
    r.queries = bb.queries() - before;
    return r;
}

InterpolationResult urfunsi2(BlackBox &bb, std::size_t term_bound, const Integer &coef_bound,
                             std::uint64_t max_iter)
{
    require_positive(coef_bound, max_iter);
    if (term_bound < 1) {
        throw Error(ErrorCode::InvalidArgument, "term bound T must be >= 1");
    }
    const auto before = bb.queries();
    const unsigned long t1 = std::max<unsigned long>(term_bound, 5);
    const Integer beta = ceil_sqrt(2 * Integer(t1) * coef_bound * coef_bound);
    const Integer beta1 = beta + 1;
    const Rational v1 = query_at(bb, beta);
    const Rational v2 = query_at(bb, beta1);
    if (v1.numer() == 0) {
        return zero_result(bb.queries() - before);
    }
    auto r = search_one_side(v1, beta, coef_bound, DecodeLimits{std::nullopt, term_bound}, max_iter,
                             [&](const UniPoly &f, const UniPoly &g) {
                                 Integer gv = g.evaluate(beta1);
                                 return gv != 0 && Rational(f.evaluate(beta1), std::move(gv)) == v2;
                             });
    r.queries = bb.queries() - before;
    return r;
}

Integer mu_upper_bound(const Integer &a, const Integer &beta, Exponent degree_bound)
{
    if (a == 0) {
        throw Error(ErrorCode::ZeroNumerator, "mu bound needs a nonzero numerator value");
    }
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), beta.get_mpz_t(), checked_exponent(degree_bound + 1));
    Integer k;
    Integer twice = 2 * abs(a);
    mpz_fdiv_q(k.get_mpz_t(), p.get_mpz_t(), twice.get_mpz_t());
    return k < 1 ? Integer(1) : k;
}

RatioGate make_ratio_gate(const Integer &a1, const Integer &a2, const Integer &base, Exponent d, Exponent dcap,
                          Fraction e)
{
    if (a1 == 0 || a2 == 0) {
        throw Error(ErrorCode::ZeroNumerator, "ratio gate needs nonzero values");
    }
    auto q = [&](Exponent k) {
        Integer up;
        Integer down;
        const Integer next = base + 1;
        mpz_pow_ui(up.get_mpz_t(), next.get_mpz_t(), k);
        mpz_pow_ui(down.get_mpz_t(), base.get_mpz_t(), k);
        Fraction r(abs(a1) * up, abs(a2) * down);
        r.canonicalize();
        return r;
    };
    RatioGate gate;
    gate.q1 = q(d);
    gate.q2 = q(dcap);
    gate.e = std::move(e);
    gate.d = d;
    gate.dcap = dcap;
    if (gate.q1 >= gate.e) {
        gate.decision = GateDecision::Base;
    } else if (gate.q2 * gate.e <= 1) {
        gate.decision = GateDecision::Shifted;
    } else {
        gate.decision = GateDecision::CompareBounds;
    }
    return gate;
}

RatioGate ratio_gate(const Integer &a1, const Integer &a2, const Integer &beta, Exponent d, Exponent dcap,
                     const Integer &coef_bound)
{
    Fraction e(2 * coef_bound, beta * (beta - 1));
    e.canonicalize();
    e += 1;
    return make_ratio_gate(a1, a2, beta, d, dcap, std::move(e));
}

Side choose_side(const RatioGate &gate, const Integer &k1, const Integer &k2)
{
    switch (gate.decision) {
    case GateDecision::Base: return Side::Base;
    case GateDecision::Shifted: return Side::Shifted;
    case GateDecision::CompareBounds: break;
    }
    return k1 < k2 ? Side::Base : Side::Shifted;
}

bool interval_contains_integer(const Fraction &lo, const Fraction &hi)
{
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    return Fraction(fl + 1) < hi;
}

InterpolationResult urfunsip(BlackBox &bb, Exponent degree_bound, const Integer &coef_bound,
                             std::uint64_t max_iter)
{
    require_positive(coef_bound, max_iter);
    checked_exponent(degree_bound);
    const auto before = bb.queries();
    const Integer beta = 3 * coef_bound + 1;
    const Integer beta1 = beta + 1;
    const Rational v1 = query_at(bb, beta);
    const Rational v2 = query_at(bb, beta1);
    if (v1.numer() == 0 || v2.numer() == 0) {
        return zero_result(bb.queries() - before);
    }

    const Exponent d = std::max(top_degree(v1.numer(), beta), top_degree(v2.numer(), beta1));
    const Integer k1 = mu_upper_bound(v1.numer(), beta, degree_bound);
    const Integer k2 = mu_upper_bound(v2.numer(), beta1, degree_bound);
    const RatioGate gate = ratio_gate(v1.numer(), v2.numer(), beta, d, degree_bound, coef_bound);
    const Side side = choose_side(gate, k1, k2);

    // Base side: mu_2 lies in (Q1/E * i, Q2 E * i) when i = mu_1.
    // Shifted side: mu_1 lies in (i / (Q2 E), E / Q1 * i) when i = mu_2.
    const bool base = side == Side::Base;
    const Fraction lo = base ? Fraction(gate.q1 / gate.e) : Fraction(1 / (gate.q2 * gate.e));
    const Fraction hi = base ? Fraction(gate.q2 * gate.e) : Fraction(gate.e / gate.q1);
    const Rational &here = base ? v1 : v2;
    const Rational &there = base ? v2 : v1;
    const Integer &at = base ? beta : beta1;
    const Integer &other = base ? beta1 : beta;
    const Integer &kside = base ? k1 : k2;
    const std::uint64_t limit = kside < Integer(static_cast<unsigned long>(max_iter))
        ? static_cast<std::uint64_t>(kside.get_ui())
        : max_iter;
    const DecodeLimits limits{degree_bound, std::nullopt};

    InterpolationResult r;
    r.side = side;
    Integer ai = 0;
    Integer bi = 0;
    for (std::uint64_t i = 1; i <= limit; ++i) {
        ai += here.numer();
        bi += here.denom();
        ++r.iterations;
        const Fraction fi(Integer(static_cast<unsigned long>(i)));
        if (!interval_contains_integer(lo * fi, hi * fi)) {
            ++r.pruned;
            continue;
        }
        ++r.decodes;
        auto f = upoly_decode(ai, at, coef_bound, limits);
        if (!f) {
            continue;
        }
        ++r.decodes;
        auto g = upoly_decode(bi, at, coef_bound, limits);
        if (!g) {
            continue;
        }
        Integer gv = g.poly().evaluate(other);
        if (gv == 0 || Rational(f.poly().evaluate(other), std::move(gv)) != there) {
            continue;
        }
        r.function = canonicalize(f.poly(), g.poly());
        r.mu = static_cast<unsigned long>(i);
        r.queries = bb.queries() - before;
        return r;
    }
    exhausted(limit);
}

} // namespace ratinterp

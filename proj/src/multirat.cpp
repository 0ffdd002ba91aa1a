#include "ratinterp/multirat.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace ratinterp {

namespace {

void require_common(const Integer &coef_bound, std::uint64_t shift_range, const MultiInterpolationOptions &opts)
{
    if (coef_bound < 1) {
        throw Error(ErrorCode::InvalidArgument, "coefficient bound C must be >= 1");
    }
    if (shift_range < 1) {
        throw Error(ErrorCode::InvalidArgument, "shift range N must be >= 1");
    }
    if (opts.max_iter < 1) {
        throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
    }
}

[[noreturn]] void exhausted(std::uint64_t tried)
{
    throw Error(ErrorCode::MuSearchExhausted,
                "no multiplier up to " + std::to_string(tried) + " decoded; check the T/D/C bounds");
}

// Post-hoc check of h against fresh random points. Poles of the black box
// are skipped; a pole of h where the box has a value is a mismatch.
bool validate(BlackBox &bb, const RationalFunction &h, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint64_t> coord(1, std::uint64_t{1} << 31);
    std::vector<Integer> point(bb.nvars());
    std::size_t checked = 0;
    for (std::size_t attempt = 0; checked < count && attempt < 4 * count + 16; ++attempt) {
        for (auto &x : point) {
            x = static_cast<unsigned long>(coord(rng));
        }
        Rational expected;
        try {
            expected = bb.query(point);
        } catch (const Error &e) {
            if (e.code() == ErrorCode::Pole) {
                continue;
            }
            throw;
        }
        ++checked;
        Integer den = h.den().evaluate(point);
        if (den == 0 || Rational(h.num().evaluate(point), std::move(den)) != expected) {
            return false;
        }
    }
    return checked == count;
}

void finish(BlackBox &bb, MultiInterpolationResult &r, const MultiInterpolationOptions &opts, std::size_t before)
{
    r.queries = bb.queries() - before;
    if (opts.validation_points == 0) {
        return;
    }
    r.validated = validate(bb, r.function, opts.validation_points, opts.seed);
    if (!*r.validated) {
        throw Error(ErrorCode::ValidationFailed, "recovered function disagrees with the black box");
    }
}

} // namespace

std::vector<std::uint64_t> sample_shifts(std::size_t n, std::uint64_t shift_range, std::uint64_t seed)
{
    if (shift_range < 1) {
        throw Error(ErrorCode::InvalidArgument, "shift range N must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, shift_range);
    std::vector<std::uint64_t> shifts(n);
    for (auto &c : shifts) {
        c = dist(rng);
    }
    std::sort(shifts.begin(), shifts.end());
    return shifts;
}

Fraction success_lower_bound(Exponent degree, std::size_t n, std::uint64_t shift_range)
{
    if (shift_range < 1) {
        throw Error(ErrorCode::InvalidArgument, "shift range N must be >= 1");
    }
    Integer p;
    const Integer b = 2 * Integer(static_cast<unsigned long>(degree)) + 1;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), 2 * n);
    Fraction bound = 1 - Fraction(2 * p, Integer(static_cast<unsigned long>(shift_range)));
    bound.canonicalize();
    return bound < 0 ? Fraction(0) : bound;
}

MultiInterpolationResult mrfunsi1(BlackBox &bb, std::size_t term_bound, Exponent degree_bound,
                                  const Integer &coef_bound, std::uint64_t shift_range,
                                  const MultiInterpolationOptions &opts)
{
    require_common(coef_bound, shift_range, opts);
    if (term_bound < 1) {
        throw Error(ErrorCode::InvalidArgument, "term bound T must be >= 1");
    }
    const std::size_t n = bb.nvars();
    const auto before = bb.queries();
    const Integer beta = 2 * Integer(static_cast<unsigned long>(term_bound)) * coef_bound * coef_bound + 1;
    const auto shifts = sample_shifts(n, shift_range, opts.seed);

    MultiInterpolationResult r;
    r.chain = build_chain(beta, shifts, degree_bound, ExpBase::TwiceDegreePlusOne);
    const Rational v = bb.query(r.chain.points);
    if (v.numer() == 0) {
        r.function = RationalFunction(n);
        finish(bb, r, opts, before);
        return r;
    }

    Integer ai = 0;
    Integer bi = 0;
    for (std::uint64_t i = 1; i <= opts.max_iter; ++i) {
        ai += v.numer();
        bi += v.denom();
        ++r.iterations;
        ++r.decodes;
        auto f = mpoly_decode(r.chain, ai, term_bound, degree_bound, coef_bound, BoundMode::Exact);
        if (!f) {
            continue;
        }
        ++r.decodes;
        auto g = mpoly_decode(r.chain, bi, term_bound, degree_bound, coef_bound, BoundMode::Exact);
        if (!g) {
            continue;
        }
        r.function = canonicalize(f.poly(), g.poly());
        r.mu = static_cast<unsigned long>(i);
        finish(bb, r, opts, before);
        return r;
    }
    exhausted(opts.max_iter);
}

RatioGate mv_ratio_gate(const Integer &a1, const Integer &a2, std::span<const Integer> points, Exponent d_last,
                        Exponent last_degree_bound, const Integer &coef_bound)
{
    if (points.empty()) {
        throw Error(ErrorCode::InvalidArgument, "ratio gate needs at least one point");
    }
    const Integer &b1 = points.front();
    const Integer &bn = points.back();
    Fraction e(2 * coef_bound, (b1 - 1) * (bn - 1));
    e.canonicalize();
    e += 1;
    return make_ratio_gate(a1, a2, bn, d_last, last_degree_bound, std::move(e));
}

MultiInterpolationResult mrfunsi2(BlackBox &bb, Exponent degree_bound, Exponent last_degree_bound,
                                  const Integer &coef_bound, std::uint64_t shift_range,
                                  const MultiInterpolationOptions &opts)
{
    require_common(coef_bound, shift_range, opts);
    const std::size_t n = bb.nvars();
    const auto before = bb.queries();
    const Integer beta = 3 * coef_bound + 1;
    const auto shifts = sample_shifts(n, shift_range, opts.seed);

    MultiInterpolationResult r;
    r.chain = build_chain(beta, shifts, degree_bound, ExpBase::DegreePlusOne);
    const SubstitutionChain shifted = r.chain.shifted_last();
    const Rational v1 = bb.query(r.chain.points);
    const Rational v2 = bb.query(shifted.points);
    if (v1.numer() == 0 || v2.numer() == 0) {
        r.function = RationalFunction(n);
        finish(bb, r, opts, before);
        return r;
    }

    const Integer &bn = r.chain.points.back();
    const Integer &bn1 = shifted.points.back();
    const Exponent d = std::max(top_degree(v1.numer(), bn), top_degree(v2.numer(), bn1));
    const Integer k1 = mu_upper_bound(v1.numer(), bn, last_degree_bound);
    const Integer k2 = mu_upper_bound(v2.numer(), bn1, last_degree_bound);
    const RatioGate gate = mv_ratio_gate(v1.numer(), v2.numer(), r.chain.points, d, last_degree_bound, coef_bound);
    r.side = choose_side(gate, k1, k2);

    const bool base = r.side == Side::Base;
    const Fraction lo = base ? Fraction(gate.q1 / gate.e) : Fraction(1 / (gate.q2 * gate.e));
    const Fraction hi = base ? Fraction(gate.q2 * gate.e) : Fraction(gate.e / gate.q1);
    const Rational &here = base ? v1 : v2;
    const Rational &there = base ? v2 : v1;
    const SubstitutionChain &at = base ? r.chain : shifted;
    const SubstitutionChain &other = base ? shifted : r.chain;
    const Integer &kside = base ? k1 : k2;
    const std::uint64_t limit = kside < Integer(static_cast<unsigned long>(opts.max_iter))
        ? static_cast<std::uint64_t>(kside.get_ui())
        : opts.max_iter;

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
        auto f = mpoly_decode(at, ai, std::nullopt, degree_bound, coef_bound, BoundMode::Remark);
        if (!f) {
            continue;
        }
        ++r.decodes;
        auto g = mpoly_decode(at, bi, std::nullopt, degree_bound, coef_bound, BoundMode::Remark);
        if (!g) {
            continue;
        }
        Integer gv = g.poly().evaluate(other.points);
        if (gv == 0 || Rational(f.poly().evaluate(other.points), std::move(gv)) != there) {
            continue;
        }
        r.function = canonicalize(f.poly(), g.poly());
        r.mu = static_cast<unsigned long>(i);
        finish(bb, r, opts, before);
        return r;
    }
    exhausted(limit);
}

} // namespace ratinterp

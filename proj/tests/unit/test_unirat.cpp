#include <doctest.h>

#include <array>
#include <random>

#include "helpers.hpp"
#include "ratinterp/harness.hpp"
#include "ratinterp/unirat.hpp"

using namespace testing;

namespace {

Integer value_at(const MultiPoly &p, const Integer &x)
{
    const std::array<Integer, 1> pt{x};
    return p.evaluate(pt);
}

RationalFunction random_h(std::mt19937_64 &rng, std::size_t &t, Exponent &d, Integer &c)
{
    InstanceSpec spec;
    spec.T = t = 1 + rng() % 12;
    spec.D = d = rng() % 60;
    spec.C = c = 1 + static_cast<long>(rng() % 40);
    spec.seed = rng();
    return random_instance(spec);
}

} // namespace

TEST_CASE("one-point trace on (x+1)/(x-1)")
{
    const RationalFunction h = x_plus_1_over_x_minus_1();
    CountingBlackBox bb(h);
    const auto r = urfunsi1(bb, 2, 1, 100);
    CHECK(r.function == h);
    CHECK(r.mu == 2);
    CHECK(r.queries == 1);
    REQUIRE(bb.transcript().size() == 1);
    CHECK(bb.transcript()[0].point[0] == 5);
    CHECK(bb.transcript()[0].value == Rational(Integer(3), Integer(2)));
}

TEST_CASE("one-point recovery of a constant")
{
    const RationalFunction h = canonicalize(uni({{3, 0}}), uni({{1, 0}}));
    CountingBlackBox bb(h);
    const auto r = urfunsi1(bb, 1, 3, 10);
    CHECK(r.function == h);
    CHECK(r.mu == 1);
    CHECK(bb.transcript()[0].point[0] == 19);
}

TEST_CASE("two-point trace on (x+1)/(x-1)")
{
    const RationalFunction h = x_plus_1_over_x_minus_1();
    CountingBlackBox bb(h);
    const auto r = urfunsi2(bb, 2, 1, 100);
    CHECK(r.function == h);
    CHECK(r.mu == 1);
    CHECK(r.queries == 2);
    CHECK(bb.transcript()[0].point[0] == 4);
    CHECK(bb.transcript()[0].value == Rational(Integer(5), Integer(3)));
    CHECK(bb.transcript()[1].point[0] == 5);
}

TEST_CASE("zero function short-circuits")
{
    const RationalFunction zero(1);
    for (int algo = 0; algo < 3; ++algo) {
        CountingBlackBox bb(zero);
        const auto r = algo == 0 ? urfunsi1(bb, 3, 5, 10) : algo == 1 ? urfunsi2(bb, 3, 5, 10) : urfunsip(bb, 4, 5, 10);
        CHECK(r.function == zero);
        CHECK(r.mu == 0);
    }
}

TEST_CASE("mu_upper_bound examples")
{
    CHECK(mu_upper_bound(5, 4, 1) == 1);
    CHECK(mu_upper_bound(3, 5, 1) == 4);
    CHECK(mu_upper_bound(-3, 5, 1) == 4);
    CHECK(mu_upper_bound(pow_int(5, 2), 5, 1) == 1);
    CHECK_THROWS_AS(mu_upper_bound(0, 5, 1), Error);
}

TEST_CASE("ratio gate examples")
{
    const RatioGate g = ratio_gate(5, 3, 4, 1, 1, 1);
    CHECK(g.q1 == Fraction(25, 12));
    CHECK(g.q2 == Fraction(25, 12));
    CHECK(g.e == Fraction(7, 6));
    CHECK(g.decision == GateDecision::Base);
    CHECK(choose_side(g, 100, 1) == Side::Base);

    const RatioGate sym = ratio_gate(7, 7, 10, 0, 0, 3);
    CHECK(sym.q1 == 1);
    CHECK(sym.q2 == 1);
    CHECK(sym.decision == GateDecision::CompareBounds);
    CHECK(choose_side(sym, 1, 2) == Side::Base);
    CHECK(choose_side(sym, 2, 1) == Side::Shifted);
    CHECK(choose_side(sym, 2, 2) == Side::Shifted);

    const RatioGate low = ratio_gate(1, 100, 4, 1, 1, 1);
    CHECK(low.decision == GateDecision::Shifted);
}

TEST_CASE("open interval integer test")
{
    CHECK_FALSE(interval_contains_integer(Fraction(6, 5), Fraction(9, 5)));
    CHECK(interval_contains_integer(Fraction(9, 10), Fraction(11, 10)));
    CHECK_FALSE(interval_contains_integer(Fraction(2), Fraction(2)));
    CHECK_FALSE(interval_contains_integer(Fraction(2), Fraction(3)));
    CHECK(interval_contains_integer(Fraction(-1, 2), Fraction(1, 2)));
    CHECK(interval_contains_integer(Fraction(25, 14), Fraction(175, 72)));
}

TEST_CASE("two-point probabilistic trace on (x+1)/(x-1)")
{
    const RationalFunction h = x_plus_1_over_x_minus_1();
    CountingBlackBox bb(h);
    const auto r = urfunsip(bb, 1, 1, 100);
    CHECK(r.function == h);
    CHECK(r.side == Side::Base);
    CHECK(r.mu == 1);
    CHECK(r.pruned == 0);
    CHECK(r.queries == 2);
    CHECK(bb.transcript()[0].point[0] == 4);
    CHECK(bb.transcript()[1].point[0] == 5);
}

TEST_CASE("constant function through the probabilistic search")
{
    const RationalFunction h = canonicalize(uni({{-4, 0}}), uni({{1, 0}}));
    CountingBlackBox bb(h);
    const auto r = urfunsip(bb, 3, 4, 10);
    CHECK(r.function == h);
    CHECK(r.mu == 1);
}

TEST_CASE("one-point search stops at the true scale")
{
    std::mt19937_64 rng(101);
    for (int k = 0; k < 100; ++k) {
        std::size_t t;
        Exponent d;
        Integer c;
        const RationalFunction h = random_h(rng, t, d, c);
        CountingBlackBox bb(h);
        const auto r = urfunsi1(bb, t, c, 10'000'000);
        CHECK(r.function == h);
        CHECK(r.queries == 1);
        const Integer beta = 2 * Integer(static_cast<unsigned long>(t)) * c * c + 1;
        const Rational v = bb.transcript()[0].value;
        const Integer scale = value_at(h.num(), beta) / v.numer();
        CHECK(scale * v.numer() == value_at(h.num(), beta));
        CHECK(r.mu == abs(scale));
    }
}

TEST_CASE("two-point deterministic and probabilistic recovery")
{
    std::mt19937_64 rng(202);
    int probabilistic_ok = 0;
    for (int k = 0; k < 100; ++k) {
        std::size_t t;
        Exponent d;
        Integer c;
        const RationalFunction h = random_h(rng, t, d, c);
        CountingBlackBox b2(h);
        const auto r2 = urfunsi2(b2, t, c, 10'000'000);
        CHECK(r2.function == h);
        CHECK(b2.queries() == 2);
        CountingBlackBox bp(h);
        try {
            probabilistic_ok += urfunsip(bp, d, c, 10'000'000).function == h;
        } catch (const Error &) {
        }
        CHECK(bp.queries() == 2);
    }
    CHECK(probabilistic_ok >= 97);
}

TEST_CASE("ratio gate is sound on ground truth")
{
    std::mt19937_64 rng(303);
    int decided = 0;
    for (int k = 0; k < 500; ++k) {
        std::size_t t;
        Exponent d;
        Integer c;
        const RationalFunction h = random_h(rng, t, d, c);
        if (h.num().is_zero()) {
            continue;
        }
        const Integer beta = 3 * c + 1;
        const std::array<Integer, 1> p1{beta};
        const std::array<Integer, 1> p2{beta + 1};
        const Rational v1 = eval_rational(h, p1);
        const Rational v2 = eval_rational(h, p2);
        const Integer mu1 = abs(h.num().evaluate(p1) / v1.numer());
        const Integer mu2 = abs(h.num().evaluate(p2) / v2.numer());
        const Exponent dl = std::max(top_degree(v1.numer(), beta), top_degree(v2.numer(), beta + 1));
        const RatioGate g = ratio_gate(v1.numer(), v2.numer(), beta, dl, d, c);
        if (g.decision == GateDecision::Base) {
            ++decided;
            CHECK(mu2 > mu1);
        } else if (g.decision == GateDecision::Shifted) {
            ++decided;
            CHECK(mu2 < mu1);
        }
        // The lower estimate never exceeds the true numerator degree.
        CHECK(dl <= *h.num().total_degree());
    }
    CHECK(decided > 0);
}

TEST_CASE("wrong bounds exhaust the search")
{
    // 5x + 1 over 1 with a claimed C of 1: no multiple decodes with one term.
    const RationalFunction h = canonicalize(uni({{1, 0}, {5, 1}}), uni({{1, 0}}));
    CountingBlackBox bb(h);
    try {
        (void)urfunsi1(bb, 1, 1, 50);
        FAIL("expected mu-search-exhausted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::MuSearchExhausted);
    }
    CHECK_THROWS_AS(urfunsi1(bb, 0, 1, 50), Error);
    CHECK_THROWS_AS(urfunsi2(bb, 1, 0, 50), Error);
}

TEST_CASE("ceil_sqrt")
{
    CHECK(ceil_sqrt(0) == 0);
    CHECK(ceil_sqrt(10) == 4);
    CHECK(ceil_sqrt(16) == 4);
    CHECK(ceil_sqrt(17) == 5);
    CHECK_THROWS_AS(ceil_sqrt(-1), Error);
}

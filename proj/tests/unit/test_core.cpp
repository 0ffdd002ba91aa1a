#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "helpers.hpp"
#include "ratinterp/harness.hpp"
#include "ratinterp/multipoly.hpp"
#include "ratinterp/multirat.hpp"

using namespace testing;

TEST_CASE("rational values are reduced with a positive denominator")
{
    Rational r(Integer(6), Integer(-4));
    CHECK(r.numer() == -3);
    CHECK(r.denom() == 2);
    CHECK(Rational(Integer(0), Integer(-7)) == Rational(Integer(0)));
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), Error);
    try {
        Rational(Integer(1), Integer(0));
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ZeroDenominator);
        CHECK(std::string(e.what()).rfind("zero-denominator: ", 0) == 0);
    }
}

TEST_CASE("univariate terms are sorted, merged and pruned")
{
    const UniPoly p = uni({{3, 5}, {1, 0}, {2, 5}, {-1, 0}, {4, 2}});
    REQUIRE(p.size() == 2);
    CHECK(p.terms()[0] == UniTerm{Integer(4), 2});
    CHECK(p.terms()[1] == UniTerm{Integer(5), 5});
    CHECK(p.degree() == Exponent{5});
    CHECK(p.low_degree() == Exponent{2});
    CHECK(p.evaluate(2) == 4 * 4 + 5 * 32);

    const UniPoly zero = uni({{1, 3}, {-1, 3}});
    CHECK(zero.is_zero());
    CHECK_FALSE(zero.degree().has_value());
    CHECK_FALSE(zero.low_degree().has_value());
    CHECK(zero.evaluate(7) == 0);
    CHECK(zero.height() == 0);
}

TEST_CASE("exponents above 2^62 are rejected")
{
    CHECK(checked_exponent(kMaxExponent) == kMaxExponent);
    CHECK_THROWS_AS(checked_exponent(kMaxExponent + 1), Error);
    CHECK_THROWS_AS(uni({{1, kMaxExponent + 1}}), Error);
}

TEST_CASE("monomial order puts the last variable first")
{
    const std::vector<Exponent> a{5, 0};
    const std::vector<Exponent> b{0, 1};
    CHECK(monomial_less(a, b));
    CHECK_FALSE(monomial_less(b, a));
    CHECK_FALSE(monomial_less(a, a));
}

TEST_CASE("monomial order is a strict total order")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Exponent> e(0, 3);
    for (int k = 0; k < 2000; ++k) {
        std::vector<Exponent> a{e(rng), e(rng), e(rng)};
        std::vector<Exponent> b{e(rng), e(rng), e(rng)};
        std::vector<Exponent> c{e(rng), e(rng), e(rng)};
        const int relations = monomial_less(a, b) + monomial_less(b, a) + (a == b);
        CHECK(relations == 1);
        if (monomial_less(a, b) && monomial_less(b, c)) {
            CHECK(monomial_less(a, c));
        }
    }
}

TEST_CASE("shuffled multivariate terms come back sorted")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const MultiPoly p = random_poly(rng, 3, 15, 4, 9);
        std::vector<MultiTerm> shuffled = p.terms();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const MultiPoly q = MultiPoly::from_terms(3, shuffled);
        CHECK(q == p);
        for (std::size_t i = 1; i < q.size(); ++i) {
            CHECK(monomial_less(q.terms()[i - 1].exps, q.terms()[i].exps));
        }
    }
}

TEST_CASE("multivariate accessors")
{
    const MultiPoly p = multi(2, {{3, {2, 0}}, {-1, {0, 1}}, {5, {1, 1}}});
    CHECK(p.total_degree() == Exponent{2});
    CHECK(p.degree_in(0) == Exponent{2});
    CHECK(p.degree_in(1) == Exponent{1});
    CHECK(p.leading_coef() == 5);
    CHECK(p.height() == 5);
    const std::array<Integer, 2> pt{2, 3};
    CHECK(p.evaluate(pt) == 3 * 4 - 3 + 5 * 6);
    CHECK(content(multi(2, {{4, {1, 0}}, {-6, {0, 0}}})) == 2);
    CHECK_THROWS_AS(MultiPoly::from_terms(2, {{Integer(1), {1}}}), Error);
}

TEST_CASE("canonicalize removes joint content and fixes the sign")
{
    const RationalFunction expected = x_plus_1_over_x_minus_1();
    CHECK(expected.num() == MultiPoly::from_uni(uni({{1, 0}, {1, 1}})));
    CHECK(expected.den() == MultiPoly::from_uni(uni({{-1, 0}, {1, 1}})));

    CHECK(canonicalize(uni({{2, 0}, {2, 1}}), uni({{-2, 0}, {2, 1}})) == expected);
    CHECK(canonicalize(uni({{-1, 0}, {-1, 1}}), uni({{1, 0}, {-1, 1}})) == expected);

    const RationalFunction zero = canonicalize(UniPoly{}, uni({{5, 0}}));
    CHECK(zero.num().is_zero());
    CHECK(zero.den() == MultiPoly::constant(1, 1));

    CHECK_THROWS_AS(canonicalize(uni({{1, 0}}), UniPoly{}), Error);
}

TEST_CASE("canonicalize is idempotent and invariant under joint scaling")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> scale(-1000, 1000);
    for (int k = 0; k < 200; ++k) {
        const MultiPoly f = random_poly(rng, 2, 5, 4, 20);
        const MultiPoly g = random_poly(rng, 2, 5, 4, 20);
        const RationalFunction h = canonicalize(f, g);
        CHECK(canonicalize(h.num(), h.den()) == h);
        long s = 0;
        while (s == 0) {
            s = scale(rng);
        }
        std::vector<MultiTerm> kf = f.terms();
        std::vector<MultiTerm> kg = g.terms();
        for (auto &t : kf) t.coef *= s;
        for (auto &t : kg) t.coef *= s;
        CHECK(canonicalize(MultiPoly::from_terms(2, kf), MultiPoly::from_terms(2, kg)) == h);
        CHECK(h.den().leading_coef() > 0);
    }
}

TEST_CASE("exact evaluation of a rational function")
{
    const RationalFunction h = x_plus_1_over_x_minus_1();
    const std::array<Integer, 1> five{5};
    const std::array<Integer, 1> zero{0};
    const std::array<Integer, 1> one{1};
    CHECK(eval_rational(h, five) == Rational(Integer(3), Integer(2)));
    CHECK(eval_rational(h, zero) == Rational(Integer(-1), Integer(1)));
    CHECK(eval_rational(RationalFunction(1), five) == Rational(Integer(0)));
    CHECK_THROWS_AS(eval_rational(h, one), Error);
}

TEST_CASE("bounded polynomials do not vanish on a substitution chain")
{
    std::mt19937_64 rng(23);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 1 + k % 3;
        const Integer c = 1 + static_cast<long>(rng() % 30);
        const Exponent d = rng() % 5;
        const MultiPoly g = random_poly(rng, n, 1 + rng() % 10, d, c);
        const Integer beta = 2 * c + 1 + static_cast<long>(rng() % 5);
        const auto chain = build_chain(beta, sample_shifts(n, 100, rng()), d, ExpBase::DegreePlusOne);
        CHECK(g.evaluate(chain.points) != 0);
    }
}

TEST_CASE("bounds validation")
{
    Bounds b;
    CHECK_NOTHROW(b.validate());
    b.coef = 0;
    CHECK_THROWS_AS(b.validate(), Error);
    b.coef = 1;
    b.terms = 0;
    CHECK_THROWS_AS(b.validate(), Error);
    b.terms = 1;
    b.degree = kMaxExponent + 1;
    CHECK_THROWS_AS(b.validate(), Error);
}

TEST_CASE("shifted chain moves only the last point")
{
    const auto chain = build_chain(2, std::vector<std::uint64_t>{1, 1}, 1, ExpBase::DegreePlusOne);
    const auto moved = chain.shifted_last();
    CHECK(moved.points[0] == chain.points[0]);
    CHECK(moved.points[1] == chain.points[1] + 1);
}

#include <doctest.h>

#include <array>
#include <cstdlib>
#include <random>
#include <map>
#include <set>

#include "helpers.hpp"
#include "ratinterp/harness.hpp"

using namespace testing;

TEST_CASE("counting black box")
{
    CountingBlackBox bb(x_plus_1_over_x_minus_1());
    const std::array<Integer, 1> five{5};
    const std::array<Integer, 1> one{1};
    CHECK(bb.query(five) == Rational(Integer(3), Integer(2)));
    CHECK(bb.queries() == 1);
    CHECK_THROWS_AS(bb.query(one), Error);
    CHECK(bb.queries() == 1);
    REQUIRE(bb.transcript().size() == 1);

    // Replaying the transcript against a fresh box gives the same values.
    CountingBlackBox replay(x_plus_1_over_x_minus_1());
    for (const auto &obs : bb.transcript()) {
        CHECK(replay.query(obs.point) == obs.value);
    }
}

TEST_CASE("raw pairs are kept as given")
{
    const MultiPoly f = MultiPoly::from_uni(uni({{3, 0}, {3, 1}}));
    const MultiPoly g = MultiPoly::from_uni(uni({{-3, 0}, {3, 1}}));
    CountingBlackBox bb(f, g);
    CHECK(bb.numerator() == f);
    CHECK(bb.denominator() == g);
    const std::array<Integer, 1> five{5};
    CHECK(bb.query(five) == Rational(Integer(3), Integer(2)));
    CHECK_THROWS_AS(CountingBlackBox(f, MultiPoly::constant(1, 0)), Error);
    CHECK_THROWS_AS(CountingBlackBox(f, MultiPoly::constant(2, 1)), Error);
}

TEST_CASE("smallest instance")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        InstanceSpec spec;
        spec.seed = seed;
        const RationalFunction h = random_instance(spec);
        CHECK(h.den() == MultiPoly::constant(1, 1));
        CHECK(h.num().size() == 1);
        CHECK(abs(h.num().leading_coef()) == 1);
    }
}

TEST_CASE("instances are deterministic in the seed")
{
    InstanceSpec spec{2, 5, 4, 10, 123};
    CHECK(random_instance(spec) == random_instance(spec));
    spec.seed = 124;
    const RationalFunction other = random_instance(spec);
    spec.seed = 123;
    CHECK_FALSE(random_instance(spec) == other);
}

TEST_CASE("instance audit")
{
    std::mt19937_64 rng(31);
    std::set<std::vector<Exponent>> seen_lead;
    for (int k = 0; k < 1000; ++k) {
        InstanceSpec spec{2, 5, 4, 10, rng()};
        const RationalFunction h = random_instance(spec);
        for (const MultiPoly *p : {&h.num(), &h.den()}) {
            CHECK(p->nvars() == 2);
            // Canonicalization may divide by the joint content, never add terms.
            CHECK(p->size() <= 5);
            CHECK(p->height() <= 10);
            CHECK(*p->total_degree() <= 4);
        }
        CHECK(h.num().size() == 5);
        CHECK(h.den().size() == 5);
        CHECK(h.den().leading_coef() > 0);
        CHECK(canonicalize(h.num(), h.den()) == h);
        seen_lead.insert(h.num().terms().back().exps);
    }
    // 15 monomials of degree <= 4 in two variables; the leading one varies.
    CHECK(seen_lead.size() >= 5);
}

TEST_CASE("random monomials are uniform over total degree <= D")
{
    std::mt19937_64 rng(32);
    std::map<std::vector<Exponent>, int> counts;
    const int draws = 30000;
    for (int k = 0; k < draws; ++k) {
        counts[random_monomial(rng, 2, 2)] += 1;
    }
    // Six monomials, 5000 expected each, sigma about 65.
    CHECK(counts.size() == 6);
    for (const auto &[m, c] : counts) {
        CHECK(m[0] + m[1] <= 2);
        CHECK(std::abs(c - draws / 6) < 400);
    }
}

TEST_CASE("coefficients are nonzero and bounded")
{
    std::mt19937_64 rng(33);
    std::set<long> seen;
    for (int k = 0; k < 2000; ++k) {
        const Integer c = random_coefficient(rng, 3);
        CHECK(c != 0);
        CHECK(abs(c) <= 3);
        seen.insert(c.get_si());
    }
    CHECK(seen.size() == 6);
    CHECK_THROWS_AS(random_coefficient(rng, 0), Error);
}

TEST_CASE("coprimality certificate")
{
    std::mt19937_64 rng(34);
    const MultiPoly xp1 = MultiPoly::from_uni(uni({{1, 0}, {1, 1}}));
    const MultiPoly xm1 = MultiPoly::from_uni(uni({{-1, 0}, {1, 1}}));
    const MultiPoly sq = MultiPoly::from_uni(uni({{-1, 0}, {1, 2}}));
    CHECK(coprime_certificate(xp1, xm1, 2, rng));
    CHECK_FALSE(coprime_certificate(xp1, sq, 2, rng));
    // x1 + x2 against x1^2 - x2^2
    const MultiPoly s = multi(2, {{1, {1, 0}}, {1, {0, 1}}});
    const MultiPoly d = multi(2, {{1, {2, 0}}, {-1, {0, 2}}});
    const MultiPoly e = multi(2, {{1, {1, 0}}, {-1, {0, 1}}, {1, {0, 0}}});
    CHECK_FALSE(coprime_certificate(s, d, 2, rng));
    CHECK(coprime_certificate(s, e, 2, rng));
}

TEST_CASE("resultant examples")
{
    CHECK(resultant(uni({{1, 1}}), uni({{-2, 0}, {1, 1}})) == -2);
    CHECK(resultant(uni({{-1, 0}, {1, 1}}), uni({{-1, 0}, {1, 1}})) == 0);
    CHECK(resultant(uni({{1, 1}}), uni({{2, 0}, {1, 1}})) == 2);
    CHECK(resultant(uni({{1, 0}, {1, 1}}), uni({{-1, 0}, {1, 1}})) == -2);
    CHECK_THROWS_AS(resultant(UniPoly{}, uni({{1, 1}})), Error);
}

TEST_CASE("resultant against the product formula")
{
    // For monic f = prod (x - a_i): Res(f, g) = prod g(a_i).
    std::mt19937_64 rng(35);
    for (int k = 0; k < 200; ++k) {
        const std::size_t roots = 1 + rng() % 5;
        std::vector<Integer> f_dense{1};
        std::vector<Integer> as;
        for (std::size_t i = 0; i < roots; ++i) {
            const Integer a = static_cast<long>(rng() % 21) - 10;
            as.push_back(a);
            std::vector<Integer> next(f_dense.size() + 1, 0);
            for (std::size_t j = 0; j < f_dense.size(); ++j) {
                next[j + 1] += f_dense[j];
                next[j] -= a * f_dense[j];
            }
            f_dense = std::move(next);
        }
        std::vector<UniTerm> ft;
        for (std::size_t j = 0; j < f_dense.size(); ++j) {
            ft.push_back({f_dense[j], j});
        }
        const UniPoly f = UniPoly::from_terms(ft);
        const UniPoly g = random_unipoly(rng, 1 + rng() % 5, rng() % 8, 9);
        Integer expected = 1;
        for (const auto &a : as) {
            expected *= g.evaluate(a);
        }
        if (g.degree() == Exponent{0}) {
            expected = pow_int(g.terms()[0].coef, roots);
        }
        CHECK(resultant(f, g) == expected);
    }
}

TEST_CASE("resultant vanishes exactly on a planted common factor")
{
    std::mt19937_64 rng(36);
    for (int k = 0; k < 100; ++k) {
        const UniPoly a = random_unipoly(rng, 3, 4, 5);
        const UniPoly b = random_unipoly(rng, 3, 4, 5);
        const Integer r = static_cast<long>(rng() % 7) - 3;
        // (x - r) a and (x - r) b
        auto times_linear = [&](const UniPoly &p) {
            std::vector<UniTerm> t;
            for (const auto &term : p.terms()) {
                t.push_back({term.coef, term.exp + 1});
                t.push_back({-r * term.coef, term.exp});
            }
            return UniPoly::from_terms(t);
        };
        CHECK(resultant(times_linear(a), times_linear(b)) == 0);
        // Irreducible quadratic x^2 + x + 1 against linears never shares a factor.
        CHECK(resultant(uni({{1, 0}, {1, 1}, {1, 2}}), uni({{-r.get_si(), 0}, {1, 1}})) != 0);
    }
}

TEST_CASE("dense oracle examples")
{
    const auto r = dense_decode_oracle(245, 5, 2);
    REQUIRE(r);
    CHECK(r.poly() == uni({{-1, 1}, {2, 3}}));
    CHECK(dense_decode_oracle(3, 5, 1).failure() == DecodeFailure::GapResidue);
    CHECK(dense_decode_oracle(pow_int(3, 250), 3, 1).failure() == DecodeFailure::DegreeOverflow);
    CHECK(dense_decode_oracle(0, 3, 1).ok());
}

TEST_CASE("fast and dense decoders agree")
{
    std::mt19937_64 rng(37);
    for (int k = 0; k < 1000; ++k) {
        const Integer c = 1 + static_cast<long>(rng() % 100);
        const Integer beta = 2 * c + 1 + static_cast<long>(rng() % 3);
        const UniPoly f = random_unipoly(rng, 1 + rng() % 20, rng() % 190, c);
        Integer rho = f.evaluate(beta);
        if (k % 2) {
            rho += (rng() & 1 ? 1 : -1) * static_cast<long>(1 + rng() % 1000);
        }
        const auto fast = upoly_decode(rho, beta, c);
        const auto dense = dense_decode_oracle(rho, beta, c);
        REQUIRE(fast.ok() == dense.ok());
        if (fast) {
            CHECK(fast.poly() == dense.poly());
        } else {
            CHECK(fast.failure() == dense.failure());
        }
    }
}

TEST_CASE("the gcd of two values divides the resultant")
{
    std::mt19937_64 rng(38);
    for (int k = 0; k < 100; ++k) {
        InstanceSpec spec{1, 1 + rng() % 6, 1 + rng() % 8, 1 + static_cast<long>(rng() % 20), rng()};
        const RationalFunction h = random_instance(spec);
        const UniPoly f = h.num().to_uni();
        const UniPoly g = h.den().to_uni();
        if (f.degree() == Exponent{0} && g.degree() == Exponent{0}) {
            continue;
        }
        const Integer res = resultant(f, g);
        CHECK(res != 0);
        const Integer beta = 2 + static_cast<long>(rng() % 1000);
        Integer mu;
        mpz_gcd(mu.get_mpz_t(), f.evaluate(beta).get_mpz_t(), g.evaluate(beta).get_mpz_t());
        CHECK(res % mu == 0);
    }
}

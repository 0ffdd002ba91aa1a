#include "ratinterp/harness.hpp"

#include <set>
#include <string>

namespace ratinterp {

// ---------------------------------------------------------------------------
// Black box

CountingBlackBox::CountingBlackBox(const RationalFunction &target) : num_(target.num()), den_(target.den()) {}

CountingBlackBox::CountingBlackBox(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (num_.nvars() != den_.nvars()) {
        throw Error(ErrorCode::InvalidArgument, "numerator and denominator differ in variable count");
    }
    if (den_.is_zero()) {
        throw Error(ErrorCode::ZeroDenominator, "black box with a zero denominator");
    }
}

Rational CountingBlackBox::evaluate(std::span<const Integer> point)
{
    Integer d = den_.evaluate(point);
    if (d == 0) {
        throw Error(ErrorCode::Pole, "denominator vanishes at the query point");
    }
    Rational v(num_.evaluate(point), std::move(d));
    transcript_.push_back({std::vector<Integer>(point.begin(), point.end()), v});
    return v;
}

CountingBlackBox make_blackbox(const RationalFunction &h)
{
    return CountingBlackBox(h);
}

// ---------------------------------------------------------------------------
// Arithmetic modulo p = 2^61 - 1, dense polynomials low degree first.

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;

constexpr u64 kPrime = (u64{1} << 61) - 1;

u64 mul_mod(u64 a, u64 b)
{
    return static_cast<u64>(static_cast<u128>(a) * b % kPrime);
}

u64 add_mod(u64 a, u64 b)
{
    u64 s = a + b;
    return s >= kPrime ? s - kPrime : s;
}

u64 sub_mod(u64 a, u64 b)
{
    return a >= b ? a - b : a + kPrime - b;
}

u64 pow_mod(u64 b, u64 e)
{
    u64 r = 1;
    while (e) {
        if (e & 1) {
            r = mul_mod(r, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    return r;
}

u64 inv_mod(u64 a)
{
    return pow_mod(a, kPrime - 2);
}

u64 reduce(const Integer &z)
{
    return mpz_fdiv_ui(z.get_mpz_t(), kPrime);
}

void trim(ModPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

ModPoly mul(const ModPoly &a, const ModPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j]));
        }
    }
    return r;
}

// (x + c)^m
ModPoly binomial_power(u64 c, u64 m)
{
    ModPoly r(m + 1);
    u64 binom = 1;
    for (u64 k = 0; k <= m; ++k) {
        r[k] = mul_mod(binom, pow_mod(c, m - k));
        binom = mul_mod(mul_mod(binom, (m - k) % kPrime), inv_mod((k + 1) % kPrime));
    }
    return r;
}

// Degree of gcd(a, b) over GF(p); both nonzero.
std::size_t gcd_degree(ModPoly a, ModPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        if (a.size() < b.size()) {
            std::swap(a, b);
            continue;
        }
        const u64 inv = inv_mod(b.back());
        while (a.size() >= b.size()) {
            const u64 q = mul_mod(a.back(), inv);
            const std::size_t off = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) {
                a[off + j] = sub_mod(a[off + j], mul_mod(q, b[j]));
            }
            trim(a);
            if (a.empty()) {
                break;
            }
        }
        std::swap(a, b);
    }
    return a.size() - 1;
}

constexpr u64 kMaxImageDegree = 200'000;

ModPoly kronecker_image(const MultiPoly &f, Exponent degree, std::span<const u64> shifts)
{
    const std::size_t n = f.nvars();
    std::vector<u64> weight(n);
    u128 w = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (w * degree > kMaxImageDegree) {
            throw Error(ErrorCode::OracleScale, "Kronecker image too large for the coprimality check");
        }
        weight[i] = static_cast<u64>(w);
        w *= degree + 1;
    }
    ModPoly image;
    for (const auto &t : f.terms()) {
        ModPoly m{1};
        for (std::size_t i = 0; i < n; ++i) {
            if (t.exps[i] > 0) {
                m = mul(m, binomial_power(shifts[i], t.exps[i] * weight[i]));
            }
        }
        const u64 c = reduce(t.coef);
        if (image.size() < m.size()) {
            image.resize(m.size(), 0);
        }
        for (std::size_t k = 0; k < m.size(); ++k) {
            image[k] = add_mod(image[k], mul_mod(c, m[k]));
        }
    }
    trim(image);
    return image;
}

ModPoly univariate_image(const MultiPoly &f)
{
    ModPoly p;
    for (const auto &t : f.terms()) {
        const Exponent e = t.exps[0];
        if (e > kMaxImageDegree) {
            throw Error(ErrorCode::OracleScale, "degree too large for the coprimality check");
        }
        if (p.size() <= e) {
            p.resize(e + 1, 0);
        }
        p[e] = reduce(t.coef);
    }
    return p;
}

bool is_constant(const MultiPoly &p)
{
    return p.size() == 1 && p.total_degree() == Exponent{0};
}

u128 monomial_count(std::size_t nvars, Exponent degree)
{
    // C(D + n, n), saturating at 2^63.
    constexpr u128 cap = u128{1} << 63;
    u128 r = 1;
    for (std::size_t k = 1; k <= nvars; ++k) {
        r = r * (static_cast<u128>(degree) + k) / k;
        if (r >= cap) {
            return cap;
        }
    }
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// Random instances

Integer random_coefficient(std::mt19937_64 &rng, const Integer &coef_bound)
{
    if (coef_bound < 1 || coef_bound >= Integer(static_cast<unsigned long>(kPrime))) {
        throw Error(ErrorCode::InvalidArgument, "generator coefficient bound must lie in [1, 2^61 - 1)");
    }
    std::uniform_int_distribution<u64> mag(1, coef_bound.get_ui());
    Integer c = static_cast<unsigned long>(mag(rng));
    return (rng() & 1) ? Integer(-c) : c;
}

std::vector<Exponent> random_monomial(std::mt19937_64 &rng, std::size_t nvars, Exponent degree)
{
    // Stars and bars: a uniform n-subset of {1, ..., D + n} (Floyd's
    // algorithm) fixes the gaps e_1, ..., e_n and the unused slack.
    const u64 top = degree + nvars;
    std::set<u64> chosen;
    for (u64 j = top - nvars + 1; j <= top; ++j) {
        const u64 t = std::uniform_int_distribution<u64>(1, j)(rng);
        if (!chosen.insert(t).second) {
            chosen.insert(j);
        }
    }
    std::vector<Exponent> exps;
    exps.reserve(nvars);
    u64 prev = 0;
    for (u64 s : chosen) {
        exps.push_back(s - prev - 1);
        prev = s;
    }
    return exps;
}

MultiPoly random_poly(std::mt19937_64 &rng, std::size_t nvars, std::size_t terms, Exponent degree,
                      const Integer &coef_bound)
{
    if (nvars < 1) {
        throw Error(ErrorCode::InvalidArgument, "a polynomial needs at least one variable");
    }
    const u128 available = monomial_count(nvars, degree);
    const std::size_t target = available < terms ? static_cast<std::size_t>(available) : terms;
    std::set<std::vector<Exponent>> monomials;
    while (monomials.size() < target) {
        monomials.insert(random_monomial(rng, nvars, degree));
    }
    std::vector<MultiTerm> out;
    out.reserve(target);
    for (const auto &m : monomials) {
        out.push_back({random_coefficient(rng, coef_bound), m});
    }
    return MultiPoly::from_terms(nvars, std::move(out));
}

UniPoly random_unipoly(std::mt19937_64 &rng, std::size_t terms, Exponent degree, const Integer &coef_bound)
{
    return random_poly(rng, 1, terms, degree, coef_bound).to_uni();
}

RationalFunction random_instance(const InstanceSpec &spec)
{
    if (spec.n < 1 || spec.T < 1 || spec.C < 1) {
        throw Error(ErrorCode::InvalidArgument, "instance spec needs n, T, C >= 1");
    }
    std::mt19937_64 rng(spec.seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MultiPoly f = random_poly(rng, spec.n, spec.T, spec.D, spec.C);
        MultiPoly g = random_poly(rng, spec.n, spec.T, spec.D, spec.C);
        RationalFunction h = canonicalize(std::move(f), std::move(g));
        if (coprime_certificate(h.num(), h.den(), spec.D, rng)) {
            return h;
        }
    }
    throw Error(ErrorCode::GenerationFailed, "no coprime instance within 1000 draws");
}

bool coprime_certificate(const MultiPoly &f, const MultiPoly &g, Exponent degree, std::mt19937_64 &rng)
{
    if (f.nvars() != g.nvars()) {
        throw Error(ErrorCode::InvalidArgument, "coprimality check across different variable counts");
    }
    if (f.is_zero() || g.is_zero()) {
        return is_constant(f.is_zero() ? g : f);
    }
    if (is_constant(f) || is_constant(g)) {
        return true;
    }
    if (std::max(f.height(), g.height()) >= Integer(static_cast<unsigned long>(kPrime))) {
        throw Error(ErrorCode::OracleScale, "coefficients too large for the modular coprimality check");
    }
    if (f.nvars() == 1) {
        return gcd_degree(univariate_image(f), univariate_image(g)) == 0;
    }
    for (std::size_t v = 0; v < f.nvars(); ++v) {
        if (f.degree_in(v).value_or(0) > degree || g.degree_in(v).value_or(0) > degree) {
            throw Error(ErrorCode::InvalidArgument, "partial degree exceeds the stated bound");
        }
    }
    std::uniform_int_distribution<u64> shift(1, kPrime - 1);
    std::vector<u64> shifts(f.nvars());
    for (int attempt = 0; attempt < 3; ++attempt) {
        for (auto &c : shifts) {
            c = shift(rng);
        }
        if (gcd_degree(kronecker_image(f, degree, shifts), kronecker_image(g, degree, shifts)) == 0) {
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Oracles

Integer resultant(const UniPoly &f, const UniPoly &g)
{
    if (f.is_zero() || g.is_zero()) {
        throw Error(ErrorCode::InvalidArgument, "resultant of a zero polynomial");
    }
    const Exponent m = *f.degree();
    const Exponent n = *g.degree();
    if (m > 64 || n > 64) {
        throw Error(ErrorCode::OracleScale, "resultant oracle limited to degree 64");
    }
    const std::size_t size = m + n;
    if (size == 0) {
        return 1;
    }
    std::vector<std::vector<Integer>> a(size, std::vector<Integer>(size, 0));
    auto place = [&](const UniPoly &p, Exponent deg, std::size_t row, std::size_t offset) {
        for (const auto &t : p.terms()) {
            a[row][offset + (deg - t.exp)] = t.coef;
        }
    };
    for (std::size_t r = 0; r < n; ++r) {
        place(f, m, r, r);
    }
    for (std::size_t r = 0; r < m; ++r) {
        place(g, n, n + r, r);
    }

    // Bareiss elimination; every division is exact.
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < size && a[r][k] == 0) {
                ++r;
            }
            if (r == size) {
                return 0;
            }
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

DecodeResult dense_decode_oracle(const Integer &rho, const Integer &beta, const Integer &coef_bound)
{
    if (coef_bound < 1 || beta < 2 * coef_bound + 1) {
        throw Error(ErrorCode::InvalidArgument, "need C >= 1 and beta >= 2C + 1");
    }
    constexpr Exponent kMaxDigits = 201;
    std::vector<UniTerm> terms;
    Integer r = rho;
    Integer v;
    for (Exponent k = 0; r != 0; ++k) {
        if (k >= kMaxDigits) {
            return DecodeResult::fail(DecodeFailure::DegreeOverflow, terms.size());
        }
        mpz_fdiv_r(v.get_mpz_t(), r.get_mpz_t(), beta.get_mpz_t());
        Integer digit;
        if (v <= coef_bound) {
            digit = v;
        } else if (v >= beta - coef_bound) {
            digit = v - beta;
        } else {
            return DecodeResult::fail(DecodeFailure::GapResidue, terms.size() + 1);
        }
        if (digit != 0) {
            terms.push_back({digit, k});
        }
        r -= digit;
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), beta.get_mpz_t());
    }
    const std::size_t steps = terms.size();
    return DecodeResult::success(UniPoly::from_terms(std::move(terms)), steps);
}

Exponent trial_min_deg(const Integer &rho, const Integer &beta)
{
    if (rho == 0) {
        throw Error(ErrorCode::ZeroInput, "trial division of zero");
    }
    Integer r = rho;
    Exponent e = 0;
    while (mpz_divisible_p(r.get_mpz_t(), beta.get_mpz_t())) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), beta.get_mpz_t());
        ++e;
    }
    return e;
}

} // namespace ratinterp

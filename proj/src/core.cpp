#include "ratinterp/core.hpp"

#include <map>
#include <string>

namespace ratinterp {

Exponent checked_exponent(Exponent e)
{
    if (e > kMaxExponent) {
        throw Error(ErrorCode::ExponentOverflow, "exponent " + std::to_string(e) + " exceeds 2^62");
    }
    return e;
}

Integer mod_floor(const Integer &a, const Integer &m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// ---------------------------------------------------------------------------

Rational::Rational(Integer numer, Integer denom) : numer_(std::move(numer)), denom_(std::move(denom))
{
    if (denom_ == 0) {
        throw Error(ErrorCode::ZeroDenominator, "rational with zero denominator");
    }
    Integer g = gcd(numer_, denom_);
    if (g != 1) {
        numer_ /= g;
        denom_ /= g;
    }
    if (denom_ < 0) {
        numer_ = -numer_;
        denom_ = -denom_;
    }
    if (numer_ == 0) {
        denom_ = 1;
    }
}

Fraction Rational::to_fraction() const
{
    Fraction q(numer_, denom_);
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------

UniPoly UniPoly::from_terms(std::vector<UniTerm> terms)
{
    std::sort(terms.begin(), terms.end(), [](const UniTerm &a, const UniTerm &b) { return a.exp < b.exp; });
    UniPoly p;
    for (auto &t : terms) {
        checked_exponent(t.exp);
        if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) {
                p.terms_.pop_back();
            }
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

std::optional<Exponent> UniPoly::degree() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.back().exp;
}

std::optional<Exponent> UniPoly::low_degree() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.front().exp;
}

Integer UniPoly::height() const
{
    Integer h = 0;
    for (const auto &t : terms_) {
        if (abs(t.coef) > h) {
            h = abs(t.coef);
        }
    }
    return h;
}

Integer UniPoly::evaluate(const Integer &x) const
{
    if (terms_.empty()) {
        return 0;
    }
    // Horner over the exponent gaps, highest term first.
    Integer acc = terms_.back().coef;
    Integer step;
    for (auto i = terms_.size() - 1; i-- > 0;) {
        const Exponent gap = terms_[i + 1].exp - terms_[i].exp;
        mpz_pow_ui(step.get_mpz_t(), x.get_mpz_t(), gap);
        acc *= step;
        acc += terms_[i].coef;
    }
    mpz_pow_ui(step.get_mpz_t(), x.get_mpz_t(), terms_.front().exp);
    acc *= step;
    return acc;
}

UniPoly UniPoly::operator-() const
{
    UniPoly p = *this;
    for (auto &t : p.terms_) {
        t.coef = -t.coef;
    }
    return p;
}

// ---------------------------------------------------------------------------

bool monomial_less(std::span<const Exponent> a, std::span<const Exponent> b)
{
    for (auto i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars)
{
    if (nvars == 0) {
        throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one variable");
    }
}

MultiPoly MultiPoly::from_terms(std::size_t nvars, std::vector<MultiTerm> terms)
{
    MultiPoly p(nvars);
    for (const auto &t : terms) {
        if (t.exps.size() != nvars) {
            throw Error(ErrorCode::InvalidArgument, "exponent vector length " + std::to_string(t.exps.size())
                                                        + " does not match " + std::to_string(nvars) + " variables");
        }
        for (auto e : t.exps) {
            checked_exponent(e);
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const MultiTerm &a, const MultiTerm &b) { return monomial_less(a.exps, b.exps); });
    for (auto &t : terms) {
        if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) {
                p.terms_.pop_back();
            }
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Integer &c)
{
    MultiPoly p(nvars);
    if (c != 0) {
        p.terms_.push_back({c, std::vector<Exponent>(nvars, 0)});
    }
    return p;
}

MultiPoly MultiPoly::from_uni(const UniPoly &u)
{
    MultiPoly p(1);
    p.terms_.reserve(u.size());
    for (const auto &t : u.terms()) {
        p.terms_.push_back({t.coef, {t.exp}});
    }
    return p;
}

UniPoly MultiPoly::to_uni() const
{
    if (nvars_ != 1) {
        throw Error(ErrorCode::InvalidArgument, "to_uni on a polynomial in " + std::to_string(nvars_) + " variables");
    }
    std::vector<UniTerm> terms;
    terms.reserve(terms_.size());
    for (const auto &t : terms_) {
        terms.push_back({t.coef, t.exps[0]});
    }
    return UniPoly::from_terms(std::move(terms));
}

std::optional<Exponent> MultiPoly::total_degree() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    Exponent best = 0;
    for (const auto &t : terms_) {
        Exponent s = 0;
        for (auto e : t.exps) {
            s += e;
        }
        best = std::max(best, s);
    }
    return best;
}

std::optional<Exponent> MultiPoly::degree_in(std::size_t var) const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    Exponent best = 0;
    for (const auto &t : terms_) {
        best = std::max(best, t.exps.at(var));
    }
    return best;
}

Integer MultiPoly::height() const
{
    Integer h = 0;
    for (const auto &t : terms_) {
        if (abs(t.coef) > h) {
            h = abs(t.coef);
        }
    }
    return h;
}

const Integer &MultiPoly::leading_coef() const
{
    if (terms_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "leading coefficient of the zero polynomial");
    }
    return terms_.back().coef;
}

Integer MultiPoly::evaluate(std::span<const Integer> point) const
{
    if (point.size() != nvars_) {
        throw Error(ErrorCode::InvalidArgument, "point has " + std::to_string(point.size()) + " coordinates, expected "
                                                    + std::to_string(nvars_));
    }
    std::vector<std::map<Exponent, Integer>> powers(nvars_);
    auto power = [&](std::size_t var, Exponent e) -> const Integer & {
        auto [it, inserted] = powers[var].try_emplace(e);
        if (inserted) {
            mpz_pow_ui(it->second.get_mpz_t(), point[var].get_mpz_t(), e);
        }
        return it->second;
    };
    Integer sum = 0;
    Integer term;
    for (const auto &t : terms_) {
        term = t.coef;
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (t.exps[v] != 0) {
                term *= power(v, t.exps[v]);
            }
        }
        sum += term;
    }
    return sum;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly p = *this;
    for (auto &t : p.terms_) {
        t.coef = -t.coef;
    }
    return p;
}

Integer content(const MultiPoly &p)
{
    Integer g = 0;
    for (const auto &t : p.terms()) {
        g = gcd(g, t.coef);
        if (g == 1) {
            break;
        }
    }
    return g;
}

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(std::size_t nvars) : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}

Exponent RationalFunction::total_degree() const
{
    return std::max(num_.total_degree().value_or(0), den_.total_degree().value_or(0));
}

Integer RationalFunction::height() const
{
    Integer a = num_.height();
    Integer b = den_.height();
    return a > b ? a : b;
}

RationalFunction canonicalize(MultiPoly f, MultiPoly g)
{
    if (g.is_zero()) {
        throw Error(ErrorCode::ZeroDenominator, "canonicalize with a zero denominator");
    }
    if (f.nvars() != g.nvars()) {
        throw Error(ErrorCode::InvalidArgument, "numerator and denominator differ in variable count");
    }
    RationalFunction h(f.nvars());
    if (f.is_zero()) {
        return h;
    }
    Integer k = gcd(content(f), content(g));
    if (g.leading_coef() < 0) {
        k = -k;
    }
    if (k != 1) {
        for (auto *p : {&f, &g}) {
            std::vector<MultiTerm> terms = p->terms();
            for (auto &t : terms) {
                mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), k.get_mpz_t());
            }
            *p = MultiPoly::from_terms(p->nvars(), std::move(terms));
        }
    }
    h.num_ = std::move(f);
    h.den_ = std::move(g);
    return h;
}

RationalFunction canonicalize(const UniPoly &f, const UniPoly &g)
{
    return canonicalize(MultiPoly::from_uni(f), MultiPoly::from_uni(g));
}

Rational eval_rational(const RationalFunction &h, std::span<const Integer> point)
{
    Integer den = h.den().evaluate(point);
    if (den == 0) {
        throw Error(ErrorCode::Pole, "denominator vanishes at the query point");
    }
    return Rational(h.num().evaluate(point), std::move(den));
}

// ---------------------------------------------------------------------------

void Bounds::validate() const
{
    if (terms < 1) {
        throw Error(ErrorCode::InvalidArgument, "term bound T must be >= 1");
    }
    if (coef < 1) {
        throw Error(ErrorCode::InvalidArgument, "coefficient bound C must be >= 1");
    }
    if (shift_range < 1) {
        throw Error(ErrorCode::InvalidArgument, "shift range N must be >= 1");
    }
    if (max_iter < 1) {
        throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
    }
    if (degree) {
        checked_exponent(*degree);
    }
    if (last_degree) {
        checked_exponent(*last_degree);
    }
}

SubstitutionChain SubstitutionChain::shifted_last() const
{
    SubstitutionChain c = *this;
    if (!c.points.empty()) {
        c.points.back() += 1;
    }
    return c;
}

// ---------------------------------------------------------------------------

Rational BlackBox::query(std::span<const Integer> point)
{
    if (point.size() != nvars()) {
        throw Error(ErrorCode::InvalidArgument, "black box expects " + std::to_string(nvars()) + " coordinates");
    }
    Rational v = evaluate(point);
    ++queries_;
    return v;
}

} // namespace ratinterp

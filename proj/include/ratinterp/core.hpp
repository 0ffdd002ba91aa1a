#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "ratinterp/error.hpp"

namespace ratinterp {

using Integer = mpz_class;
using Fraction = mpq_class;
using Exponent = std::uint64_t;

// Exponents (and Kronecker chain exponents) must stay at or below this.
inline constexpr Exponent kMaxExponent = Exponent{1} << 62;

/// Checks e <= kMaxExponent, throwing ExponentOverflow otherwise.
Exponent checked_exponent(Exponent e);

/// Least nonnegative residue of a modulo a positive m.
Integer mod_floor(const Integer &a, const Integer &m);

// ---------------------------------------------------------------------------
// Exact rational value returned by black boxes.

/// Reduced fraction with a positive denominator.
class Rational {
public:
    Rational() : numer_(0), denom_(1) {}
    Rational(Integer numer, Integer denom = 1);

    const Integer &numer() const noexcept { return numer_; }
    const Integer &denom() const noexcept { return denom_; }
    Fraction to_fraction() const;

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.numer_ == b.numer_ && a.denom_ == b.denom_;
    }

private:
    Integer numer_;
    Integer denom_;
};

// ---------------------------------------------------------------------------
// Univariate sparse polynomials.

struct UniTerm {
    Integer coef;
    Exponent exp = 0;

    friend bool operator==(const UniTerm &a, const UniTerm &b)
    {
        return a.exp == b.exp && a.coef == b.coef;
    }
};

/// Sparse integer polynomial in one variable. Terms are kept with strictly
/// increasing exponents and nonzero coefficients; no terms means zero.
class UniPoly {
public:
    UniPoly() = default;

    /// Sorts, merges equal exponents and drops zero coefficients.
    static UniPoly from_terms(std::vector<UniTerm> terms);

    const std::vector<UniTerm> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Highest exponent; nullopt for the zero polynomial.
    std::optional<Exponent> degree() const;
    /// Lowest exponent; nullopt for the zero polynomial.
    std::optional<Exponent> low_degree() const;
    /// max |c| over all coefficients (0 for the zero polynomial).
    Integer height() const;

    Integer evaluate(const Integer &x) const;

    UniPoly operator-() const;

    friend bool operator==(const UniPoly &a, const UniPoly &b) { return a.terms_ == b.terms_; }

private:
    std::vector<UniTerm> terms_;
};

// ---------------------------------------------------------------------------
// Multivariate sparse polynomials.

struct MultiTerm {
    Integer coef;
    std::vector<Exponent> exps;

    friend bool operator==(const MultiTerm &a, const MultiTerm &b)
    {
        return a.exps == b.exps && a.coef == b.coef;
    }
};

/// Lexicographic monomial order with x1 < x2 < ... < xn, i.e. the exponent of
/// the last variable is the most significant.
bool monomial_less(std::span<const Exponent> a, std::span<const Exponent> b);

/// Sparse integer polynomial in n >= 1 variables, terms strictly increasing in
/// monomial_less order with nonzero coefficients.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t nvars = 1);

    static MultiPoly from_terms(std::size_t nvars, std::vector<MultiTerm> terms);
    static MultiPoly constant(std::size_t nvars, const Integer &c);
    static MultiPoly from_uni(const UniPoly &p);

    /// Requires nvars() == 1.
    UniPoly to_uni() const;

    std::size_t nvars() const noexcept { return nvars_; }
    const std::vector<MultiTerm> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    std::optional<Exponent> total_degree() const;
    std::optional<Exponent> degree_in(std::size_t var) const;
    Integer height() const;
    /// Coefficient of the lex-largest monomial; requires a nonzero polynomial.
    const Integer &leading_coef() const;

    Integer evaluate(std::span<const Integer> point) const;

    MultiPoly operator-() const;

    friend bool operator==(const MultiPoly &a, const MultiPoly &b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    std::size_t nvars_;
    std::vector<MultiTerm> terms_;
};

/// gcd of all coefficients (0 for the zero polynomial).
Integer content(const MultiPoly &p);

// ---------------------------------------------------------------------------
// Rational functions.

/// num/den in canonical form: den != 0, the joint integer content of num and
/// den is 1, and the leading (lex-largest) coefficient of den is positive.
/// Only canonicalize() constructs non-trivial instances.
class RationalFunction {
public:
    RationalFunction() : RationalFunction(1) {}
    explicit RationalFunction(std::size_t nvars);

    const MultiPoly &num() const noexcept { return num_; }
    const MultiPoly &den() const noexcept { return den_; }
    std::size_t nvars() const noexcept { return num_.nvars(); }

    /// max(#num, #den)
    std::size_t terms() const noexcept { return std::max(num_.size(), den_.size()); }
    /// max(deg num, deg den); 0 when both are constants or num is zero.
    Exponent total_degree() const;
    Integer height() const;

    friend bool operator==(const RationalFunction &a, const RationalFunction &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    friend RationalFunction canonicalize(MultiPoly f, MultiPoly g);

    MultiPoly num_;
    MultiPoly den_;
};

/// Divides f and g by their joint integer content, with the sign chosen so
/// the leading coefficient of the denominator is positive. A zero numerator
/// yields 0/1. The polynomial part of gcd(f, g) is assumed trivial.
/// Throws ZeroDenominator when g is zero.
RationalFunction canonicalize(MultiPoly f, MultiPoly g);
RationalFunction canonicalize(const UniPoly &f, const UniPoly &g);

/// Exact value of h at point. Throws Pole when the denominator vanishes.
Rational eval_rational(const RationalFunction &h, std::span<const Integer> point);

// ---------------------------------------------------------------------------
// Parameters shared by the interpolators.

struct Bounds {
    std::size_t terms = 1;                    // T
    std::optional<Exponent> degree;           // D
    std::optional<Exponent> last_degree;      // Dn, degree bound in x_n
    Integer coef = 1;                         // C
    std::uint64_t shift_range = 1;            // N
    std::uint64_t max_iter = 10'000'000;

    /// Throws InvalidArgument when any bound is out of range.
    void validate() const;
};

enum class ExpBase {
    DegreePlusOne,       // (D+1)^(i-1)
    TwiceDegreePlusOne,  // (2D+1)^(i-1)
};

/// Kronecker evaluation points beta_i = (beta + c_i)^(base^(i-1)).
struct SubstitutionChain {
    Integer beta;
    std::vector<std::uint64_t> shifts;
    Exponent degree = 0;
    ExpBase base = ExpBase::DegreePlusOne;
    std::vector<Integer> points;

    std::size_t nvars() const noexcept { return points.size(); }
    /// Same chain with the last point replaced by beta_n + 1.
    SubstitutionChain shifted_last() const;
};

// ---------------------------------------------------------------------------
// Black boxes.

/// Query access to an unknown rational function. Counts successful queries.
class BlackBox {
public:
    virtual ~BlackBox() = default;

    virtual std::size_t nvars() const = 0;

    Rational query(std::span<const Integer> point);
    std::size_t queries() const noexcept { return queries_; }

protected:
    virtual Rational evaluate(std::span<const Integer> point) = 0;

private:
    std::size_t queries_ = 0;
};

/// Black box backed by an arbitrary callable.
class FunctionBlackBox final : public BlackBox {
public:
    using Fn = std::function<Rational(std::span<const Integer>)>;

    FunctionBlackBox(std::size_t nvars, Fn fn) : nvars_(nvars), fn_(std::move(fn)) {}

    std::size_t nvars() const override { return nvars_; }

protected:
    Rational evaluate(std::span<const Integer> point) override { return fn_(point); }

private:
    std::size_t nvars_;
    Fn fn_;
};

} // namespace ratinterp

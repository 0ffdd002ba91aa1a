#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ratinterp/core.hpp"
#include "ratinterp/unipoly.hpp"

namespace ratinterp {

/// One recorded black-box query.
struct Observation {
    std::vector<Integer> point;
    Rational value;
};

/// Black box over a known pair num/den that records every query. The pair
/// need not be canonical, so (k f)/(k g) can be wrapped as given.
class CountingBlackBox final : public BlackBox {
public:
    explicit CountingBlackBox(const RationalFunction &target);
    CountingBlackBox(MultiPoly num, MultiPoly den);

    std::size_t nvars() const override { return num_.nvars(); }
    const MultiPoly &numerator() const noexcept { return num_; }
    const MultiPoly &denominator() const noexcept { return den_; }
    const std::vector<Observation> &transcript() const noexcept { return transcript_; }

protected:
    Rational evaluate(std::span<const Integer> point) override;

private:
    MultiPoly num_;
    MultiPoly den_;
    std::vector<Observation> transcript_;
};

CountingBlackBox make_blackbox(const RationalFunction &h);

// ---------------------------------------------------------------------------
// Random instances.

/// Uniform nonzero integer in [-C, C]. C must be in [1, 2^61).
Integer random_coefficient(std::mt19937_64 &rng, const Integer &coef_bound);

/// Uniform exponent vector among those with total degree <= D.
std::vector<Exponent> random_monomial(std::mt19937_64 &rng, std::size_t nvars, Exponent degree);

/// Polynomial with min(terms, #monomials) distinct monomials of total degree
/// <= D and nonzero coefficients in [-C, C].
MultiPoly random_poly(std::mt19937_64 &rng, std::size_t nvars, std::size_t terms, Exponent degree,
                      const Integer &coef_bound);
UniPoly random_unipoly(std::mt19937_64 &rng, std::size_t terms, Exponent degree, const Integer &coef_bound);

struct InstanceSpec {
    std::size_t n = 1;
    std::size_t T = 1;
    Exponent D = 0;
    Integer C = 1;
    std::uint64_t seed = 0;
};

/// Canonical coprime f/g with #f, #g = min(T, #monomials), total degree
/// <= D and coefficients in [-C, C]. Throws GenerationFailed after 1000
/// rejected draws.
RationalFunction random_instance(const InstanceSpec &spec);

/// True when f and g share no nonconstant factor. Exact for one variable
/// (remainder sequence mod a 61-bit prime); for several variables the
/// univariate images under x_i -> (x + c_i)^((D+1)^(i-1)) are compared at
/// up to three random shift vectors. Never accepts a non-coprime pair.
/// Content is not checked.
bool coprime_certificate(const MultiPoly &f, const MultiPoly &g, Exponent degree, std::mt19937_64 &rng);

// ---------------------------------------------------------------------------
// Independent oracles.

/// Determinant of the Sylvester matrix of f and g (coefficients taken
/// densely, highest first), by fraction-free elimination. Degrees above 64
/// throw OracleScale.
Integer resultant(const UniPoly &f, const UniPoly &g);

/// Digit-by-digit balanced base-beta expansion of rho with no sparsity
/// shortcuts. Same semantics as upoly_decode; expansions longer than 201
/// digits fail with DegreeOverflow.
DecodeResult dense_decode_oracle(const Integer &rho, const Integer &beta, const Integer &coef_bound);

/// Largest e with beta^e | rho, by trial division.
Exponent trial_min_deg(const Integer &rho, const Integer &beta);

} // namespace ratinterp

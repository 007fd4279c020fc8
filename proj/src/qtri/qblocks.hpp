#pragma once

#include <cstdint>
#include <optional>

#include "qtri/series.hpp"

namespace qtri {

/// sign * q^exp; sign 0 encodes the argument 0.
struct MonomialArg {
  int sign = 1;
  HalfExp exp;

  LaurentSeries value() const { return LaurentSeries::monomial(exp, sign); }
};

/// (arg; step)_length, with an empty length standing for the infinite product.
struct PochSpec {
  MonomialArg arg;
  HalfExp step = HalfExp::q(1);
  std::optional<std::int64_t> length;
};

/// prod_{k=0}^{n-1} (1 - arg * step^k), exact. n = 0 gives 1.
LaurentSeries poch_finite(const PochSpec& spec);

/// The infinite product expanded through `cutoff`. Requires a positive
/// exponent on the argument (or a zero argument) and a positive step.
LaurentSeries poch_infinite(const PochSpec& spec, HalfExp cutoff);

/// 1 / (arg; step)_inf through `cutoff`, one geometric series per factor.
/// Same convergence requirement as poch_infinite.
LaurentSeries inv_poch_infinite(const PochSpec& spec, HalfExp cutoff);

/// (q^step; q^step)_n.
LaurentSeries q_factorial(std::int64_t n, HalfExp step = HalfExp::q(1));

/// 1 / (q^step; q^step)_n through `cutoff`; the zero series when n < 0.
LaurentSeries inv_poch_series(std::int64_t n, HalfExp step, HalfExp cutoff);

/// Gaussian binomial [top choose bottom] in base q^step. Zero unless
/// 0 <= bottom <= top. With a cutoff, only the coefficients through it are
/// produced.
LaurentSeries gaussian_binomial(std::int64_t top, std::int64_t bottom,
                                HalfExp step = HalfExp::q(1),
                                std::optional<HalfExp> cutoff = std::nullopt);

/// Quotient of two exact Laurent polynomials. Throws NotDivisible when the
/// remainder is non-zero.
LaurentSeries exact_divide(const LaurentSeries& num, const LaurentSeries& den);

/// q^(numerator * step / 2) for prefactors such as q^(i^2/2) written in base
/// q^step. Throws InvalidArgument when that is not a half-integer power of q.
HalfExp scaled_half(std::int64_t numerator, HalfExp step);

}  // namespace qtri

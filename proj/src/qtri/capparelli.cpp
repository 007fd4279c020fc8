#include "qtri/capparelli.hpp"

#include <algorithm>
#include <cstdlib>

#include "qtri/identities.hpp"
#include "qtri/qblocks.hpp"

namespace qtri {

std::int64_t capparelli_quadratic(std::int64_t m, std::int64_t n) {
  return 2 * m * m + 6 * m * n + 6 * n * n;
}

LaurentSeries capparelli_double_sum(QuadraticShift linear, HalfExp cutoff) {
  LaurentSeries out = truncate(LaurentSeries{}, cutoff);
  const std::int64_t limit = cutoff.value / 2;  // whole powers of q
  auto exponent = [&](std::int64_t m, std::int64_t n) {
    return capparelli_quadratic(m, n) + linear.m * m + linear.n * n + linear.constant;
  };
  // Q(m,n) >= 2m^2 + 6n^2, so once 2m^2 + 6n^2 + shift terms pass the limit
  // every larger index does too (the quadratic dominates the linear shift).
  auto lower = [&](std::int64_t m, std::int64_t n) {
    return 2 * m * m + 6 * n * n + linear.m * m + linear.n * n + linear.constant;
  };
  std::int64_t m_dip = 0;  // min over m of 2m^2 + linear.m * m
  for (std::int64_t m = 0; m <= std::abs(linear.m); ++m) m_dip = std::min(m_dip, 2 * m * m + linear.m * m);
  for (std::int64_t n = 0;; ++n) {
    if (lower(0, n) + m_dip > limit && 12 * n + 6 + linear.n > 0) break;
    for (std::int64_t m = 0;; ++m) {
      if (lower(m, n) > limit && 4 * m + 2 + linear.m > 0) break;
      const HalfExp e = HalfExp::q(exponent(m, n));
      if (e > cutoff) continue;
      const HalfExp rest = cutoff - e;
      auto term = mul(inv_poch_series(m, HalfExp::q(1), rest), inv_poch_series(n, HalfExp::q(3), rest), rest);
      out = add(out, shift(term, e));
    }
  }
  return out;
}

LaurentSeries capparelli_product(CapparelliVariant variant, HalfExp cutoff) {
  const bool first = variant == CapparelliVariant::First;
  auto factor = [&](std::int64_t exp, std::int64_t step) {
    return poch_infinite(PochSpec{MonomialArg{-1, HalfExp::q(exp)}, HalfExp::q(step), std::nullopt}, cutoff);
  };
  auto out = mul(factor(first ? 2 : 1, 6), factor(first ? 4 : 5, 6), cutoff);
  return mul(out, factor(3, 3), cutoff);
}

}  // namespace qtri

#include "qtri/trinomials.hpp"

#include <algorithm>
#include <cstdlib>

#include "qtri/error.hpp"
#include "qtri/qblocks.hpp"

namespace qtri {

namespace {

std::int64_t floor_div2(std::int64_t x) { return (x >= 0) ? x / 2 : -((-x + 1) / 2); }

}  // namespace

LaurentSeries round_trinomial(const TrinomialParams& p, std::optional<HalfExp> cutoff) {
  if (p.L < 0) throw Error(ErrorKind::InvalidArgument, "round trinomial needs L >= 0");
  LaurentSeries out = cutoff ? truncate(LaurentSeries{}, *cutoff) : LaurentSeries{};
  // Non-zero terms need n + a >= 0 and L - 2n - a >= 0.
  for (std::int64_t n = std::max<std::int64_t>(0, -p.a); 2 * n + p.a <= p.L; ++n) {
    const HalfExp shift_by = p.step * (n * (n + p.b));
    if (cutoff) {
      if (shift_by > *cutoff) continue;
      const HalfExp rest = *cutoff - shift_by;
      auto term = mul(gaussian_binomial(p.L, n, p.step, rest),
                      gaussian_binomial(p.L - n, n + p.a, p.step, rest), rest);
      out = add(out, shift(term, shift_by));
    } else {
      auto term = mul(gaussian_binomial(p.L, n, p.step), gaussian_binomial(p.L - n, n + p.a, p.step));
      out = add(out, shift(term, shift_by));
    }
  }
  return out;
}

LaurentSeries t_trinomial(const TParams& p) {
  if (p.L < 0) throw Error(ErrorKind::InvalidArgument, "T_n needs L >= 0");
  if (std::llabs(p.a) > p.L) return {};
  const HalfExp prefactor = scaled_half(p.L * (p.L - p.n) - p.a * (p.a - p.n), p.step);
  auto round = round_trinomial(TrinomialParams{p.L, p.a - p.n, p.a, p.step});
  return shift(reverse_exponents(round), prefactor);
}

LaurentSeries refined_trinomial(const RefinedTParams& p) {
  if (p.L < 0 || p.M < 0) throw Error(ErrorKind::InvalidArgument, "refined trinomial needs L, M >= 0");
  LaurentSeries out;
  // [M choose n] bounds n by M.
  for (std::int64_t n = 0; n <= p.M; ++n) {
    const std::int64_t la = p.L - p.a - n;
    const std::int64_t lb = p.L + p.a - n;
    if (la % 2 != 0) continue;
    auto term = gaussian_binomial(p.M, n, p.step);
    term = mul(term, gaussian_binomial(p.M + p.b + floor_div2(la), p.M + p.b, p.step));
    if (term.is_zero()) continue;
    term = mul(term, gaussian_binomial(p.M - p.b + floor_div2(lb), p.M - p.b, p.step));
    out = add(out, shift(term, scaled_half(n * n, p.step)));
  }
  return out;
}

}  // namespace qtri

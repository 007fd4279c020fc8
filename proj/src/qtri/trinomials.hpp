#pragma once

#include <cstdint>
#include <optional>

#include "qtri/series.hpp"

namespace qtri {

/// Arguments of the round q-trinomial coefficient ((L, b; a; q^step))_2.
struct TrinomialParams {
  std::int64_t L = 0;
  std::int64_t b = 0;
  std::int64_t a = 0;
  HalfExp step = HalfExp::q(1);
};

/// Arguments of T_n(L, a; q^step).
struct TParams {
  std::int64_t n = 0;
  std::int64_t L = 0;
  std::int64_t a = 0;
  HalfExp step = HalfExp::q(1);
};

/// Arguments of the doubly bounded (refined) trinomial T(L, M; a, b; q^step).
struct RefinedTParams {
  std::int64_t L = 0;
  std::int64_t M = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  HalfExp step = HalfExp::q(1);
};

/// sum_{n>=0} q^{n(n+b)} [L choose n] [L-n choose n+a], every factor in base
/// q^step. Terms with n+a < 0 or L-2n-a < 0 vanish. With a cutoff only the
/// coefficients through it are computed.
LaurentSeries round_trinomial(const TrinomialParams& p,
                              std::optional<HalfExp> cutoff = std::nullopt);

/// q^{(L(L-n) - a(a-n))/2} times the round trinomial ((L, a-n; a)) at 1/q.
/// Zero when |a| > L.
LaurentSeries t_trinomial(const TParams& p);

/// sum over n >= 0 with n = L-a (mod 2) of
///   q^{n^2/2} [M choose n] [M+b+(L-a-n)/2 choose M+b] [M-b+(L+a-n)/2 choose M-b].
LaurentSeries refined_trinomial(const RefinedTParams& p);

}  // namespace qtri

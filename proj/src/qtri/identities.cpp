#include "qtri/identities.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>

#include "qtri/capparelli.hpp"
#include "qtri/error.hpp"
#include "qtri/qblocks.hpp"
#include "qtri/trinomials.hpp"

namespace qtri {

namespace {

constexpr HalfExp kQ1 = HalfExp::q(1);
constexpr HalfExp kQ3 = HalfExp::q(3);
constexpr std::int64_t kAny = 1'000'000;

LaurentSeries mono(HalfExp e, const Coeff& c = 1) { return LaurentSeries::monomial(e, c); }
LaurentSeries one_plus(HalfExp e) { return add(LaurentSeries::one(), mono(e)); }
LaurentSeries one_minus(HalfExp e) { return sub(LaurentSeries::one(), mono(e)); }
std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }
int sign_pow(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }

// Optional truncation threaded through side builders. Polynomial identities
// run with no cutoff; the limit checks reuse the same builders truncated.
struct Ctx {
  std::optional<HalfExp> cutoff;

  LaurentSeries zero() const { return cutoff ? truncate(LaurentSeries{}, *cutoff) : LaurentSeries{}; }
  LaurentSeries fit(const LaurentSeries& a) const { return cutoff ? truncate(a, *cutoff) : a; }
  // Cutoff left for a factor that will be multiplied by q^e.
  std::optional<HalfExp> after(HalfExp e) const {
    if (!cutoff) return std::nullopt;
    return *cutoff - e;
  }
};

std::int64_t get(const Params& p, std::string_view name) {
  auto it = p.find(name);
  if (it == p.end()) throw Error(ErrorKind::Schema, "missing parameter " + std::string(name));
  return it->second;
}

HalfExp need_cutoff(const Ctx& ctx) {
  if (!ctx.cutoff) throw Error(ErrorKind::Schema, "series identity needs a cutoff");
  return *ctx.cutoff;
}

// ---------------------------------------------------------------------------
// Shared summands.

// (q^3;q^3)_L / ((q;q)_{L-2n} (q^3;q^3)_n), a polynomial.
LaurentSeries pair_summand(std::int64_t L, std::int64_t n) {
  if (L - 2 * n < 0) return {};
  return exact_divide(q_factorial(L, kQ3), mul(q_factorial(L - 2 * n, kQ1), q_factorial(n, kQ3)));
}

// sum_n (-1)^n q^{(3n^2 + linear n)/2} pair_summand(L, n)
LaurentSeries pair_alternating(std::int64_t L, std::int64_t linear) {
  LaurentSeries out;
  for (std::int64_t n = 0; 2 * n <= L; ++n) {
    out = add(out, shift(pair_summand(L, n), HalfExp(3 * n * n + linear * n), sign_pow(n)));
  }
  return out;
}

// sum_n q^{exponent(n)} pair_summand(L, n)
LaurentSeries pair_weighted(std::int64_t L, const std::function<HalfExp(std::int64_t)>& exponent) {
  LaurentSeries out;
  for (std::int64_t n = 0; 2 * n <= L; ++n) out = add(out, shift(pair_summand(L, n), exponent(n)));
  return out;
}

// q^e * ((L, b; a; q^3))_2, honouring the context cutoff.
LaurentSeries shifted_trinomial(const Ctx& ctx, HalfExp e, std::int64_t L, std::int64_t b,
                                std::int64_t a) {
  auto t = round_trinomial(TrinomialParams{L, b, a, kQ3}, ctx.after(e));
  return shift(t, e);
}

LaurentSeries first_pair_rhs(const Ctx& ctx, std::int64_t L) {
  LaurentSeries out = ctx.zero();
  for (std::int64_t j = -L; j <= L; ++j) {
    out = add(out, shifted_trinomial(ctx, HalfExp::q(L + j + 1), L, j + 1, j));
    out = add(out, shifted_trinomial(ctx, HalfExp::q(L + 4 * j), L, j + 1, j));
  }
  return out;
}

LaurentSeries second_pair_rhs(const Ctx& ctx, std::int64_t L) {
  LaurentSeries out = ctx.zero();
  for (std::int64_t j = -L; j <= L; ++j) {
    out = add(out, shifted_trinomial(ctx, HalfExp::q(2 * L - j), L, j - 1, j));
  }
  return out;
}

LaurentSeries third_pair_rhs(const Ctx& ctx, std::int64_t L) {
  LaurentSeries out = ctx.zero();
  for (std::int64_t j = -L; j <= L; ++j) {
    out = add(out, shifted_trinomial(ctx, HalfExp::q(L - j), L, j, j));
  }
  return out;
}

LaurentSeries t_of(std::int64_t n, std::int64_t L, std::int64_t a, HalfExp step = kQ1) {
  return t_trinomial(TParams{n, L, a, step});
}

LaurentSeries t_minus_pair(std::int64_t L, std::int64_t a, HalfExp step = kQ1) {
  return add(t_of(-1, L, a, step), t_of(-1, L, a + 1, step));
}

// (q^3;q^3)_M / ((q;q)_m (q^3;q^3)_n (q^3;q^3)_{M-2n-m}) weighted by
// q^{Q(m,n) + linear}, summed over the finite support.
LaurentSeries bounded_double_sum(std::int64_t M, QuadraticShift linear) {
  LaurentSeries out;
  const auto top = q_factorial(M, kQ3);
  for (std::int64_t n = 0; 2 * n <= M; ++n) {
    for (std::int64_t m = 0; 2 * n + m <= M; ++m) {
      auto den = mul(mul(q_factorial(m, kQ1), q_factorial(n, kQ3)), q_factorial(M - 2 * n - m, kQ3));
      const std::int64_t e = capparelli_quadratic(m, n) + linear.m * m + linear.n * n + linear.constant;
      out = add(out, shift(exact_divide(top, den), HalfExp::q(e)));
    }
  }
  return out;
}

LaurentSeries neg_poch(std::int64_t exp, std::int64_t step, std::int64_t length) {
  return poch_finite(PochSpec{MonomialArg{-1, HalfExp::q(exp)}, HalfExp::q(step), length});
}

// ---------------------------------------------------------------------------
// Builders, one per id.

using Builder = std::function<LaurentSeries(const Params&, const Ctx&, Side)>;

LaurentSeries build_first_pair(const Params& p, const Ctx& ctx, Side side) {
  const auto L = get(p, "L");
  if (side == Side::Lhs) {
    return ctx.fit(add(pair_alternating(L, 1), shift(pair_alternating(L, -1), HalfExp::q(2 * L + 1))));
  }
  return first_pair_rhs(ctx, L);
}

LaurentSeries build_second_pair(const Params& p, const Ctx& ctx, Side side) {
  const auto L = get(p, "L");
  if (side == Side::Lhs) return ctx.fit(pair_alternating(L, -1));
  return second_pair_rhs(ctx, L);
}

LaurentSeries build_third_pair(const Params& p, const Ctx& ctx, Side side) {
  const auto L = get(p, "L");
  if (side == Side::Lhs) return ctx.fit(pair_alternating(L, 1));
  return third_pair_rhs(ctx, L);
}

LaurentSeries build_first_pair_dual(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  if (side == Side::Lhs) {
    auto a = pair_weighted(L, [&](std::int64_t n) { return HalfExp::q(choose2(L - 2 * n)); });
    auto b = pair_weighted(L, [&](std::int64_t n) { return HalfExp::q(choose2(L - 2 * n + 1) + n); });
    return add(a, shift(b, HalfExp::q(L + 1)));
  }
  LaurentSeries out;
  for (std::int64_t j = -L - 1; j <= L; ++j) {
    out = add(out, shift(t_minus_pair(L, j, kQ3), HalfExp(3 * j * j + j)));
  }
  return out;
}

LaurentSeries build_second_pair_dual(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  if (side == Side::Lhs) {
    return pair_weighted(L, [&](std::int64_t n) { return HalfExp::q(choose2(L - 2 * n)); });
  }
  LaurentSeries out;
  for (std::int64_t j = -L; j <= L; ++j) out = add(out, shift(t_of(1, L, j, kQ3), HalfExp(3 * j * j - j)));
  return out;
}

LaurentSeries build_third_pair_dual(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  if (side == Side::Lhs) {
    return pair_weighted(L, [&](std::int64_t n) { return HalfExp((L - 2 * n) * (L - 2 * n)); });
  }
  LaurentSeries out;
  for (std::int64_t j = -L; j <= L; ++j) out = add(out, shift(t_of(0, L, j, kQ3), HalfExp(3 * j * j + 2 * j)));
  return out;
}

LaurentSeries build_t0_sum(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  const auto a = get(p, "a");
  if (side == Side::Rhs) return shift(gaussian_binomial(2 * L, L - a), HalfExp(a * a));
  LaurentSeries out;
  for (std::int64_t i = 0; i <= L; ++i) {
    out = add(out, shift(mul(gaussian_binomial(L, i), t_of(0, i, a)), HalfExp(i * i)));
  }
  return out;
}

LaurentSeries build_t1_sum(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  const auto a = get(p, "a");
  if (side == Side::Rhs) {
    return mul(one_plus(HalfExp::q(a)), shift(gaussian_binomial(2 * L, L - a), HalfExp::q(choose2(a))));
  }
  LaurentSeries out;
  for (std::int64_t i = 0; i <= L; ++i) {
    out = add(out, shift(mul(gaussian_binomial(L, i), t_of(1, i, a)), HalfExp::q(choose2(i))));
  }
  return mul(one_plus(HalfExp::q(L)), out);
}

LaurentSeries build_tm1_sum(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  const auto a = get(p, "a");
  if (side == Side::Rhs) return shift(gaussian_binomial(2 * L + 1, L - a), HalfExp::q(choose2(a + 1)));
  LaurentSeries out;
  for (std::int64_t i = 0; i <= L; ++i) {
    out = add(out, shift(mul(gaussian_binomial(L, i), t_minus_pair(i, a)), HalfExp::q(choose2(i + 1))));
  }
  return out;
}

LaurentSeries build_bmo_transform(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  const auto a = get(p, "a");
  if (side == Side::Lhs) return mul(one_minus(HalfExp::q(L + 1)), t_minus_pair(L, a));
  return sub(t_of(1, L + 1, a), shift(t_of(0, L + 1, a), HalfExp(L + 1 - a)));
}

LaurentSeries build_binom_shift(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  const auto i = get(p, "i");
  if (side == Side::Lhs) return mul(one_minus(HalfExp::q(L + 1)), gaussian_binomial(L, i));
  return mul(one_minus(HalfExp::q(i + 1)), gaussian_binomial(L + 1, i + 1));
}

LaurentSeries build_thm71(const Params& p, const Ctx&, Side side) {
  const auto M = get(p, "M");
  if (side == Side::Lhs) return bounded_double_sum(M, {});
  LaurentSeries out;
  for (std::int64_t j = -M; j <= M; ++j) {
    out = add(out, shift(gaussian_binomial(2 * M, M + j, kQ3), HalfExp::q(3 * j * j + j)));
  }
  return out;
}

LaurentSeries build_thm72(const Params& p, const Ctx&, Side side) {
  const auto M = get(p, "M");
  if (side == Side::Lhs) return mul(one_plus(HalfExp::q(3 * M)), bounded_double_sum(M, {-2, -3, 0}));
  LaurentSeries out;
  for (std::int64_t j = -M; j <= M; ++j) {
    auto term = mul(one_plus(HalfExp::q(3 * j)), gaussian_binomial(2 * M, M + j, kQ3));
    out = add(out, shift(term, HalfExp::q(3 * j * j - 2 * j)));
  }
  return out;
}

LaurentSeries build_fincap2m(const Params& p, const Ctx&, Side side) {
  const auto M = get(p, "M");
  if (side == Side::Lhs) return add(bounded_double_sum(M, {1, 3, 0}), bounded_double_sum(M, {3, 6, 1}));
  LaurentSeries out;
  for (std::int64_t j = -M - 1; j <= M; ++j) {
    out = add(out, shift(gaussian_binomial(2 * M + 1, M - j, kQ3), HalfExp::q(3 * j * j + 2 * j)));
  }
  return out;
}

LaurentSeries build_fincap1n(const Params& p, const Ctx&, Side side) {
  const auto N = get(p, "N");
  LaurentSeries out;
  if (side == Side::Lhs) {
    for (std::int64_t n = 0; 2 * n <= N; ++n) {
      for (std::int64_t m = 0; 2 * n + m <= N; ++m) {
        const std::int64_t k = N - 2 * n - m;
        auto term = mul(gaussian_binomial(3 * k, m, kQ1), gaussian_binomial(2 * k + n, n, kQ3));
        out = add(out, shift(term, HalfExp::q(capparelli_quadratic(m, n))));
      }
    }
    return out;
  }
  for (std::int64_t l = 0; 2 * l <= N; ++l) {
    auto term = mul(gaussian_binomial(N, 2 * l, kQ3), mul(neg_poch(2, 6, l), neg_poch(4, 6, l)));
    out = add(out, shift(term, HalfExp::q(3 * choose2(N - 2 * l))));
  }
  return out;
}

LaurentSeries build_fincap2n(const Params& p, const Ctx&, Side side) {
  const auto N = get(p, "N");
  LaurentSeries out;
  if (side == Side::Lhs) {
    for (std::int64_t n = 0; 2 * n <= N; ++n) {
      for (std::int64_t m = 0; 2 * n + m <= N; ++m) {
        const std::int64_t k = N - 2 * n - m;
        const std::int64_t Q = capparelli_quadratic(m, n);
        auto a = mul(gaussian_binomial(3 * k + 2, m, kQ1), gaussian_binomial(2 * k + n + 1, n, kQ3));
        auto b = mul(gaussian_binomial(3 * k, m, kQ1), gaussian_binomial(2 * k + n, n, kQ3));
        out = add(out, shift(a, HalfExp::q(Q + m + 3 * n)));
        out = add(out, shift(b, HalfExp::q(Q + 3 * m + 6 * n + 1)));
      }
    }
    return out;
  }
  for (std::int64_t l = 0; 2 * l + 1 <= N + 1; ++l) {
    auto term = mul(gaussian_binomial(N + 1, 2 * l + 1, kQ3), mul(neg_poch(1, 6, l + 1), neg_poch(5, 6, l)));
    out = add(out, shift(term, HalfExp::q(3 * choose2(N - 2 * l))));
  }
  return out;
}

LaurentSeries build_kr1(const Params&, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  if (side == Side::Lhs) return capparelli_double_sum({}, c);
  return capparelli_product(CapparelliVariant::First, c);
}

LaurentSeries build_cap2(const Params&, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  if (side == Side::Lhs) return add(capparelli_double_sum({1, 3, 0}, c), capparelli_double_sum({3, 6, 1}, c));
  return capparelli_product(CapparelliVariant::Second, c);
}

LaurentSeries build_outlook2(const Params&, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  if (side == Side::Lhs) return capparelli_double_sum({-2, -3, 0}, c);
  return add(capparelli_product(CapparelliVariant::First, c), capparelli_product(CapparelliVariant::Second, c));
}

MonomialArg monomial_param(const Params& p, const char* sign, const char* exp) {
  return MonomialArg{static_cast<int>(get(p, sign)), HalfExp(get(p, exp))};
}

LaurentSeries build_q_binomial_theorem(const Params& p, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  const auto a = monomial_param(p, "a_sign", "a_exp");
  const auto z = monomial_param(p, "z_sign", "z_exp");
  const auto zdeg = get(p, "zdeg");
  if (z.sign == 0 || z.exp.value <= 0) throw Error(ErrorKind::Schema, "z needs a positive exponent");
  if (a.sign != 0 && a.exp.value < 0) throw Error(ErrorKind::Schema, "a needs a non-negative exponent");
  if (z.exp.value * (zdeg + 1) <= c.value) {
    throw Error(ErrorKind::Schema, "zdeg too small: neglected terms reach the cutoff");
  }
  if (side == Side::Lhs) {
    LaurentSeries out = truncate(LaurentSeries{}, c);
    for (std::int64_t n = 0; n <= zdeg; ++n) {
      const HalfExp e = z.exp * n;
      if (e > c) break;
      auto term = mul(poch_finite(PochSpec{a, kQ1, n}), inv_poch_series(n, kQ1, c - e), c - e);
      out = add(out, shift(term, e, z.sign == 1 ? 1 : sign_pow(n)));
    }
    return out;
  }
  const MonomialArg az{a.sign * z.sign, a.exp + z.exp};
  auto numerator = poch_infinite(PochSpec{az, kQ1, std::nullopt}, c);
  return mul(numerator, inv_poch_infinite(PochSpec{z, kQ1, std::nullopt}, c), c);
}

LaurentSeries build_q_exponential(const Params& p, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  const auto z = monomial_param(p, "z_sign", "z_exp");
  const auto zdeg = get(p, "zdeg");
  if (z.sign == 0 || z.exp.value <= 0) throw Error(ErrorKind::Schema, "z needs a positive exponent");
  if (z.exp.value * (zdeg + 1) + 2 * choose2(zdeg + 1) <= c.value) {
    throw Error(ErrorKind::Schema, "zdeg too small: neglected terms reach the cutoff");
  }
  if (side == Side::Lhs) {
    LaurentSeries out = truncate(LaurentSeries{}, c);
    for (std::int64_t n = 0; n <= zdeg; ++n) {
      const HalfExp e = z.exp * n + HalfExp::q(choose2(n));
      if (e > c) break;
      out = add(out, shift(inv_poch_series(n, kQ1, c - e), e, z.sign == 1 ? 1 : sign_pow(n)));
    }
    return out;
  }
  return poch_infinite(PochSpec{MonomialArg{-z.sign, z.exp}, kQ1, std::nullopt}, c);
}

LaurentSeries build_jtp(const Params& p, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  const auto z = monomial_param(p, "z_sign", "z_exp");
  if (z.sign == 0) throw Error(ErrorKind::Schema, "z must be non-zero");
  if (side == Side::Lhs) {
    // sum_j z^j q^{j^2}; exponent in halves is 2j^2 + z_exp * j.
    LaurentSeries out = truncate(LaurentSeries{}, c);
    for (std::int64_t j = 0;; ++j) {
      bool any = false;
      const std::vector<std::int64_t> signs = (j == 0) ? std::vector<std::int64_t>{0} : std::vector<std::int64_t>{j, -j};
      for (std::int64_t s : signs) {
        const HalfExp e(2 * s * s + z.exp.value * s);
        if (e <= c) {
          out = add(out, truncate(mono(e, z.sign == 1 ? 1 : sign_pow(s)), c));
          any = true;
        }
      }
      if (!any && 2 * j * j - 2 * j > c.value) break;
    }
    return out;
  }
  const HalfExp q2 = HalfExp::q(2);
  auto out = poch_infinite(PochSpec{MonomialArg{1, q2}, q2, std::nullopt}, c);
  out = mul(out, poch_infinite(PochSpec{MonomialArg{-z.sign, z.exp + kQ1}, q2, std::nullopt}, c), c);
  return mul(out, poch_infinite(PochSpec{MonomialArg{-z.sign, kQ1 - z.exp}, q2, std::nullopt}, c), c);
}

LaurentSeries build_poch_reversal(const Params& p, const Ctx&, Side side) {
  const auto n = get(p, "n");
  if (side == Side::Lhs) return reverse_exponents(q_factorial(n));
  return shift(q_factorial(n), HalfExp::q(-(n * (n + 1) / 2)), sign_pow(n));
}

// [t^k] of the product side of the bivariate generating function of a pair.
LaurentSeries pair_product_coefficient(std::int64_t pair, std::int64_t k, HalfExp c) {
  const int T = static_cast<int>(k);
  auto factor = [&](std::vector<std::tuple<int, std::int64_t, Coeff>> terms) {
    TrivariateSeries s(T, c);
    for (auto& [t, e, coeff] : terms) {
      if (HalfExp(e) <= c) s.add_term(t, 0, truncate(mono(HalfExp(e), coeff), c));
    }
    return s;
  };
  TrivariateSeries acc = factor({{0, 0, 1}});
  // (t^2 q^r; q^3)_inf, one (1 - t^2 q^{r+3i}) at a time.
  const std::int64_t r = (pair == 2) ? 1 : 2;
  for (std::int64_t e = r; HalfExp::q(e) <= c; e += 3) {
    acc = mul(acc, factor({{0, 0, 1}, {2, 2 * e, -1}}));
  }
  // 1 / (t; q)_inf as prod_i sum_s t^s q^{is}.
  for (std::int64_t i = 0; i == 0 || HalfExp::q(i) <= c; ++i) {
    std::vector<std::tuple<int, std::int64_t, Coeff>> g;
    for (int s = 0; s <= T; ++s) g.emplace_back(s, 2 * i * s, 1);
    acc = mul(acc, factor(std::move(g)));
  }
  if (pair == 1) {
    // (1 + q) / (1 + t q)
    std::vector<std::tuple<int, std::int64_t, Coeff>> g;
    for (int s = 0; s <= T; ++s) g.emplace_back(s, 2 * s, sign_pow(s));
    acc = mul(acc, factor(std::move(g)));
    acc = mul(acc, factor({{0, 0, 1}, {0, 2, 1}}));
  }
  return acc.at(T, 0);
}

LaurentSeries build_genfun_products(const Params& p, const Ctx& ctx, Side side) {
  const auto c = need_cutoff(ctx);
  const auto pair = get(p, "pair");
  const auto k = get(p, "k");
  if (side == Side::Rhs) return pair_product_coefficient(pair, k, c);
  const Ctx exact;
  LaurentSeries rhs_k;
  if (pair == 1) rhs_k = first_pair_rhs(exact, k);
  else if (pair == 2) rhs_k = second_pair_rhs(exact, k);
  else rhs_k = third_pair_rhs(exact, k);
  return mul(rhs_k, inv_poch_series(k, kQ3, c), c);
}

LaurentSeries build_outlook1(const Params& p, const Ctx&, Side side) {
  const auto L = get(p, "L");
  const auto M = get(p, "M");
  LaurentSeries out;
  if (side == Side::Lhs) {
    for (std::int64_t m = 0; m <= 3 * M; ++m) {
      if ((L - m) % 2 != 0) continue;
      if (m > L) break;  // (L-m)/2 < 0 makes the second binomial vanish
      auto term = mul(gaussian_binomial(3 * M, m, kQ1), gaussian_binomial(2 * M + (L - m) / 2, 2 * M, kQ3));
      out = add(out, shift(term, HalfExp(m * m)));
    }
    return out;
  }
  for (std::int64_t j = -M; j <= M; ++j) {
    auto t = refined_trinomial(RefinedTParams{L, M, j, j, kQ3});
    out = add(out, shift(t, HalfExp(3 * j * j + 2 * j)));
  }
  return out;
}

// Sum over i, m, n_1..n_nu of the hierarchy summand.
void hierarchy_lhs(std::int64_t nu, std::int64_t L, std::vector<std::int64_t>& n_parts,
                   LaurentSeries& out) {
  if (static_cast<std::int64_t>(n_parts.size()) < nu) {
    // Partial tail sum n_k + ... bounded by L (N_1 <= L).
    std::int64_t used = 0;
    for (auto v : n_parts) used += v;
    for (std::int64_t v = 0; used + v <= L; ++v) {
      n_parts.push_back(v);
      hierarchy_lhs(nu, L, n_parts, out);
      n_parts.pop_back();
    }
    return;
  }
  // N_k = n_k + ... + n_nu
  std::vector<std::int64_t> N(static_cast<std::size_t>(nu));
  std::int64_t run = 0;
  for (std::int64_t k = nu - 1; k >= 0; --k) {
    run += n_parts[static_cast<std::size_t>(k)];
    N[static_cast<std::size_t>(k)] = run;
  }
  std::int64_t sumN = 0, sumN2 = 0;
  for (auto v : N) {
    sumN += v;
    sumN2 += v * v;
  }
  const std::int64_t n_last = n_parts.back();
  for (std::int64_t i = 0; i <= L - N[0]; ++i) {
    LaurentSeries inner = gaussian_binomial(L - N[0], i, kQ3);
    std::int64_t prefix = 0;
    for (std::int64_t j = 0; j + 1 < nu && !inner.is_zero(); ++j) {
      prefix += N[static_cast<std::size_t>(j)];
      const std::int64_t nj = n_parts[static_cast<std::size_t>(j)];
      inner = mul(inner, gaussian_binomial(i - prefix + nj, nj, kQ3));
    }
    if (inner.is_zero()) continue;
    for (std::int64_t m = 0; m <= 3 * n_last; ++m) {
      const std::int64_t x = i - sumN - m;
      if (x % 2 != 0) continue;
      auto b = gaussian_binomial(2 * n_last + x / 2, 2 * n_last, kQ3);
      if (b.is_zero()) continue;
      auto term = mul(mul(inner, gaussian_binomial(3 * n_last, m, kQ1)), b);
      out = add(out, shift(term, HalfExp(m * m + 3 * (i * i + sumN2))));
    }
  }
}

LaurentSeries build_hierarchy(const Params& p, const Ctx&, Side side) {
  const auto nu = get(p, "nu");
  const auto L = get(p, "L");
  LaurentSeries out;
  if (side == Side::Lhs) {
    std::vector<std::int64_t> parts;
    hierarchy_lhs(nu, L, parts, out);
    return out;
  }
  const std::int64_t width = nu + 2;
  for (std::int64_t j = -L; j <= L; ++j) {
    const std::int64_t a = width * j;
    if (std::llabs(a) > L) continue;
    auto t = round_trinomial(TrinomialParams{L, a, a, kQ3});
    out = add(out, shift(t, HalfExp::q(3 * (width * (width - 1) / 2) * j * j + j)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry.

struct Entry {
  IdentityInfo info;
  Builder builder;  // empty for composite checks
};

std::vector<ParamSpec> one_param(const char* name, std::int64_t max) { return {{name, 0, max, std::nullopt}}; }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    using K = IdentityKind;
    const std::vector<ParamSpec> La{{"L", 0, 60, std::nullopt}, {"a", -kAny, kAny, std::nullopt}};
    std::vector<Entry> t{
        {{"first_pair", "polynomial identity behind 1/(q;q^3)_inf", K::Polynomial, one_param("L", 60)}, build_first_pair},
        {{"second_pair", "polynomial identity behind 1/(q^2;q^3)_inf", K::Polynomial, one_param("L", 60)}, build_second_pair},
        {{"third_pair", "second polynomial identity behind 1/(q;q^3)_inf", K::Polynomial, one_param("L", 60)}, build_third_pair},
        {{"first_pair_dual", "dual of first_pair, T_{-1} form", K::Polynomial, one_param("L", 60)}, build_first_pair_dual},
        {{"second_pair_dual", "dual of second_pair, T_1 form", K::Polynomial, one_param("L", 60)}, build_second_pair_dual},
        {{"third_pair_dual", "dual of third_pair, T_0 form", K::Polynomial, one_param("L", 60)}, build_third_pair_dual},
        {{"t0_sum", "sum q^{i^2/2}[L,i]T_0(i,a) = q^{a^2/2}[2L,L-a]", K::Polynomial, La}, build_t0_sum},
        {{"t1_sum", "T_1 summation, (1+q^L) cleared", K::Polynomial, La}, build_t1_sum},
        {{"tm1_sum", "T_{-1} pair summation", K::Polynomial, La}, build_tm1_sum},
        {{"bmo_transform", "T_{-1} pair vs T_1, T_0 at L+1, (1-q^{L+1}) cleared", K::Polynomial, La}, build_bmo_transform},
        {{"binom_shift", "(1-q^{L+1})[L,i] = (1-q^{i+1})[L+1,i+1]", K::Polynomial,
          {{"L", 0, 200, std::nullopt}, {"i", -kAny, kAny, std::nullopt}}}, build_binom_shift},
        {{"thm71", "bounded Capparelli identity in M, first family", K::Polynomial, one_param("M", 40)}, build_thm71},
        {{"thm72", "bounded identity in M behind the sum of both products", K::Polynomial, one_param("M", 40)}, build_thm72},
        {{"fincap2m", "bounded Capparelli identity in M, second family", K::Polynomial, one_param("M", 40)}, build_fincap2m},
        {{"fincap1n", "bounded Capparelli identity in N, first family", K::Polynomial, one_param("N", 30)}, build_fincap1n},
        {{"fincap2n", "bounded Capparelli identity in N, second family", K::Polynomial, one_param("N", 30)}, build_fincap2n},
        {{"kr1", "first Capparelli double sum = (-q^2,-q^4;q^6)(-q^3;q^3)", K::Series, {}}, build_kr1},
        {{"cap2", "second Capparelli double sums = (-q,-q^5;q^6)(-q^3;q^3)", K::Series, {}}, build_cap2},
        {{"outlook2", "double sum = sum of both Capparelli products", K::Series, {}}, build_outlook2},
        {{"q_binomial_theorem", "sum (a;q)_n z^n/(q;q)_n = (az;q)/(z;q), monomial a, z", K::Series,
          {{"a_sign", -1, 1, 1}, {"a_exp", 0, kAny, 2}, {"z_sign", -1, 1, 1}, {"z_exp", 1, kAny, 4}, {"zdeg", 0, 1000, 20}}},
         build_q_binomial_theorem},
        {{"q_exponential", "sum q^{n(n-1)/2} z^n/(q;q)_n = (-z;q)", K::Series,
          {{"z_sign", -1, 1, 1}, {"z_exp", 1, kAny, 4}, {"zdeg", 0, 1000, 20}}}, build_q_exponential},
        {{"jtp", "Jacobi triple product, monomial z", K::Series,
          {{"z_sign", -1, 1, 1}, {"z_exp", -1, 1, 0}}}, build_jtp},
        {{"poch_reversal", "(1/q;1/q)_n = (-1)^n q^{-n(n+1)/2} (q;q)_n", K::Polynomial, one_param("n", 200)}, build_poch_reversal},
        {{"genfun_products", "[t^k] of sum_L t^L RHS_L/(q^3;q^3)_L vs its product form", K::Series,
          {{"pair", 1, 3, std::nullopt}, {"k", 0, 20, std::nullopt}}}, build_genfun_products},
        {{"outlook1", "doubly bounded identity with refined trinomials", K::Polynomial,
          {{"L", 0, 30, std::nullopt}, {"M", 0, 30, std::nullopt}}}, build_outlook1},
        {{"hierarchy", "hierarchy of identities indexed by nu", K::Polynomial,
          {{"nu", 1, 6, std::nullopt}, {"L", 0, 20, std::nullopt}}}, build_hierarchy},
        {{"lemma31", "trivariate generating function of round trinomials", K::Check,
          {{"n", -4, 4, std::nullopt}, {"tmax", 0, 12, std::nullopt}}}, {}},
        {{"limit_first_pair", "first_pair RHS -> 1/(q;q^3)_inf", K::Check, {}}, {}},
        {{"limit_second_pair", "second_pair RHS -> 1/(q^2;q^3)_inf", K::Check, {}}, {}},
        {{"limit_third_pair", "third_pair RHS -> 1/(q;q^3)_inf", K::Check, {}}, {}},
        {{"limit_binom", "[N,m] -> 1/(q;q)_m", K::Check, one_param("m", 40)}, {}},
        {{"limit_binom2", "[2M+nu, M-j] -> 1/(q;q)_inf", K::Check,
          {{"j", 0, 40, std::nullopt}, {"nu", 0, 1, std::nullopt}}}, {}},
        {{"bailey_thm71", "kind 0 transform of the third dual reproduces thm71", K::Check, one_param("M", 30)}, {}},
        {{"bailey_thm72", "kind 1 transform of the second dual reproduces thm72", K::Check, one_param("M", 30)}, {}},
        {{"bailey_fincap2m", "kind -1 transform of the first dual reproduces fincap2m", K::Check, one_param("M", 30)}, {}},
    };
    // Series ids and the series-valued checks run truncated; the Bailey
    // checks compare exact polynomials.
    for (auto& e : t) {
      e.info.truncated = e.info.kind == K::Series || (e.info.kind == K::Check && !e.info.id.starts_with("bailey_"));
    }
    return t;
  }();
  return table;
}

const Entry& entry_for(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e;
  }
  throw Error(ErrorKind::UnknownId, "unknown identity id '" + std::string(id) + "'");
}

std::int64_t elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

VerificationReport compare(const IdentityInstance& instance, const LaurentSeries& lhs,
                           const LaurentSeries& rhs) {
  VerificationReport report{instance, true, std::nullopt, 0, std::nullopt};
  if (instance.cutoff) {
    for (const auto* s : {&lhs, &rhs}) {
      if (s->cutoff() && *s->cutoff() < *instance.cutoff) {
        throw Error(ErrorKind::Internal, "side lost precision below the requested cutoff");
      }
    }
  }
  report.first_mismatch = first_difference(lhs, rhs);
  report.match = !report.first_mismatch.has_value();
  return report;
}

AlphaSequence alpha_for_check(std::string_view id, std::int64_t M) {
  if (id == "bailey_thm71") return quadratic_alpha(2, -M, M);
  if (id == "bailey_thm72") return quadratic_alpha(-1, -M, M);
  return quadratic_alpha(1, -M - 1, M);
}

VerificationReport run_check(const IdentityInstance& inst) {
  const auto& id = inst.id;
  if (id == "lemma31") {
    auto r = verify_lemma31(static_cast<int>(get(inst.params, "n")), static_cast<int>(get(inst.params, "tmax")),
                            *inst.cutoff);
    r.instance = inst;
    return r;
  }
  if (id.starts_with("limit_")) {
    LimitTarget target = LimitTarget::FirstPair;
    std::int64_t index = 0, nu = 0;
    if (id == "limit_second_pair") target = LimitTarget::SecondPair;
    if (id == "limit_third_pair") target = LimitTarget::ThirdPair;
    if (id == "limit_binom") {
      target = LimitTarget::BinomLimit;
      index = get(inst.params, "m");
    }
    if (id == "limit_binom2") {
      target = LimitTarget::BinomLimit2;
      index = get(inst.params, "j");
      nu = get(inst.params, "nu");
    }
    auto r = verify_limit_stabilization(target, *inst.cutoff, index, nu).report;
    r.instance = inst;
    return r;
  }
  // Bailey consistency: the transform must hold and reproduce both sides of
  // the target identity.
  const std::int64_t M = get(inst.params, "M");
  const int kind = (id == "bailey_thm71") ? 0 : (id == "bailey_thm72") ? 1 : -1;
  auto [blhs, brhs] = bailey_sides(kind, alpha_for_check(id, M), M, kQ3);
  IdentityInstance target{id.substr(std::string("bailey_").size()), {{"M", M}}, std::nullopt};
  auto tlhs = compute_side(target, Side::Lhs);
  auto trhs = compute_side(target, Side::Rhs);
  for (const auto& [x, y] : {std::pair{&blhs, &brhs}, std::pair{&blhs, &tlhs}, std::pair{&brhs, &trhs}}) {
    if (auto m = first_difference(*x, *y)) return VerificationReport{inst, false, m, 0, std::nullopt};
  }
  return VerificationReport{inst, true, std::nullopt, 0, std::nullopt};
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> catalog = [] {
    std::vector<IdentityInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

const IdentityInfo* find_identity(std::string_view id) {
  for (const auto& info : identity_catalog()) {
    if (info.id == id) return &info;
  }
  return nullptr;
}

IdentityInstance normalize(const IdentityInstance& instance) {
  const auto& info = entry_for(instance.id).info;
  IdentityInstance out{instance.id, {}, instance.cutoff};
  for (const auto& [name, value] : instance.params) {
    bool known = false;
    for (const auto& spec : info.params) known = known || spec.name == name;
    if (!known) throw Error(ErrorKind::Schema, instance.id + " has no parameter '" + name + "'");
  }
  for (const auto& spec : info.params) {
    auto it = instance.params.find(spec.name);
    std::int64_t value;
    if (it != instance.params.end()) {
      value = it->second;
    } else if (spec.fallback) {
      value = *spec.fallback;
    } else {
      throw Error(ErrorKind::Schema, instance.id + " needs parameter '" + spec.name + "'");
    }
    if (value < spec.min || value > spec.max) {
      throw Error(ErrorKind::Schema, "parameter " + spec.name + "=" + std::to_string(value) + " outside [" +
                                         std::to_string(spec.min) + ", " + std::to_string(spec.max) + "]");
    }
    out.params.emplace(spec.name, value);
  }
  if (info.truncated && !out.cutoff) throw Error(ErrorKind::Schema, instance.id + " is a series identity and needs a cutoff");
  if (!info.truncated && out.cutoff) throw Error(ErrorKind::Schema, instance.id + " is compared exactly; drop the cutoff");
  if (out.cutoff && out.cutoff->value < 0) throw Error(ErrorKind::Schema, "cutoff must be non-negative");
  return out;
}

LaurentSeries compute_side(const IdentityInstance& instance, Side side) {
  const auto inst = normalize(instance);
  const auto& e = entry_for(inst.id);
  if (!e.builder) throw Error(ErrorKind::Schema, inst.id + " is a composite check without separate sides");
  auto out = e.builder(inst.params, Ctx{inst.cutoff}, side);
  return inst.cutoff ? truncate(out, *inst.cutoff) : out;
}

VerificationReport verify_identity(const IdentityInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  const auto inst = normalize(instance);
  const auto& e = entry_for(inst.id);
  VerificationReport report;
  if (e.builder) {
    report = compare(inst, compute_side(inst, Side::Lhs), compute_side(inst, Side::Rhs));
  } else {
    report = run_check(inst);
  }
  report.elapsed_ms = elapsed_since(start);
  return report;
}

// ---------------------------------------------------------------------------

void AlphaSequence::set(std::int64_t a, LaurentSeries value) {
  if (!value.is_exact()) throw Error(ErrorKind::InvalidArgument, "alpha entries must be exact");
  if (value.is_zero()) {
    values_.erase(a);
  } else {
    values_[a] = std::move(value);
  }
}

AlphaSequence quadratic_alpha(std::int64_t linear, std::int64_t lo, std::int64_t hi) {
  AlphaSequence alpha;
  for (std::int64_t j = lo; j <= hi; ++j) alpha.set(j, mono(HalfExp(3 * j * j + linear * j)));
  return alpha;
}

std::pair<LaurentSeries, LaurentSeries> bailey_sides(int kind, const AlphaSequence& alpha,
                                                     std::int64_t L, HalfExp step) {
  if (kind < -1 || kind > 1) throw Error(ErrorKind::InvalidArgument, "Bailey kind must be -1, 0 or 1");
  if (L < 0) throw Error(ErrorKind::InvalidArgument, "Bailey transform needs L >= 0");
  auto F = [&](std::int64_t i) {
    LaurentSeries f;
    for (const auto& [a, value] : alpha.support()) {
      auto t = (kind == -1) ? t_minus_pair(i, a, step) : t_of(kind, i, a, step);
      if (!t.is_zero()) f = add(f, mul(value, t));
    }
    return f;
  };
  auto weight = [&](std::int64_t x) -> HalfExp {
    if (kind == 0) return scaled_half(x * x, step);
    if (kind == 1) return step * choose2(x);
    return step * choose2(x + 1);
  };

  LaurentSeries lhs;
  for (std::int64_t i = 0; i <= L; ++i) {
    lhs = add(lhs, shift(mul(gaussian_binomial(L, i, step), F(i)), weight(i)));
  }
  if (kind == 1) lhs = mul(one_plus(step * L), lhs);

  LaurentSeries rhs;
  for (const auto& [a, value] : alpha.support()) {
    LaurentSeries g = (kind == -1) ? gaussian_binomial(2 * L + 1, L - a, step) : gaussian_binomial(2 * L, L - a, step);
    if (kind == 1) g = mul(one_plus(step * a), g);
    rhs = add(rhs, shift(mul(value, g), weight(a)));
  }
  return {lhs, rhs};
}

VerificationReport apply_bailey_transform(int kind, const AlphaSequence& alpha, std::int64_t L, HalfExp step) {
  const auto start = std::chrono::steady_clock::now();
  auto [lhs, rhs] = bailey_sides(kind, alpha, L, step);
  IdentityInstance inst{"bailey", {{"kind", kind}, {"L", L}}, std::nullopt};
  auto report = compare(inst, lhs, rhs);
  report.elapsed_ms = elapsed_since(start);
  return report;
}

// ---------------------------------------------------------------------------

TrivariateSeries lemma31_lhs(int n, int t_cutoff, HalfExp q_cutoff) {
  TrivariateSeries out(t_cutoff, q_cutoff);
  for (int L = 0; L <= t_cutoff; ++L) {
    for (std::int64_t j = -L; j <= L; ++j) {
      auto tri = round_trinomial(TrinomialParams{L, j - n, j, kQ1});
      if (tri.is_zero()) continue;
      const HalfExp need = q_cutoff - std::min(tri.min_exp(), HalfExp{});
      out.add_term(L, j, truncate(mul(tri, inv_poch_series(L, kQ1, need)), q_cutoff));
    }
  }
  return out;
}

TrivariateSeries lemma31_rhs(int n, int t_cutoff, HalfExp q_cutoff) {
  // Each factor may carry q^{-n k} with k <= t_cutoff; widen the working
  // cutoff so the product is still known through q_cutoff.
  const HalfExp work = q_cutoff + HalfExp::q(2 * std::abs(n) * t_cutoff);
  auto series = [&](auto&& term) {
    TrivariateSeries s(t_cutoff, work);
    for (int k = 0; k <= t_cutoff; ++k) term(s, k);
    return s;
  };
  // (t^2 q^{-n}; q)_inf = sum_k (-1)^k q^{k(k-1)/2 - nk} t^{2k} / (q;q)_k
  auto numerator = series([&](TrivariateSeries& s, int k) {
    if (2 * k > t_cutoff) return;
    const HalfExp e = HalfExp::q(choose2(k) - static_cast<std::int64_t>(n) * k);
    s.add_term(2 * k, 0, shift(inv_poch_series(k, kQ1, work - e), e, sign_pow(k)));
  });
  // 1/(z;q)_inf = sum_k z^k / (q;q)_k for z = t, t x^{-1} q^{-n}, t x.
  auto plain = series([&](TrivariateSeries& s, int k) { s.add_term(k, 0, inv_poch_series(k, kQ1, work)); });
  auto over_x = series([&](TrivariateSeries& s, int k) {
    const HalfExp e = HalfExp::q(-static_cast<std::int64_t>(n) * k);
    s.add_term(k, -k, shift(inv_poch_series(k, kQ1, work - e), e));
  });
  auto times_x = series([&](TrivariateSeries& s, int k) { s.add_term(k, k, inv_poch_series(k, kQ1, work)); });
  auto product = mul(mul(mul(numerator, plain), over_x), times_x);
  if (product.q_cutoff() < q_cutoff) throw Error(ErrorKind::Internal, "lemma31 product lost precision");
  return product.restrict_to(q_cutoff);
}

VerificationReport verify_lemma31(int n, int t_cutoff, HalfExp q_cutoff) {
  const auto start = std::chrono::steady_clock::now();
  IdentityInstance inst{"lemma31", {{"n", n}, {"tmax", t_cutoff}}, q_cutoff};
  auto d = first_difference(lemma31_lhs(n, t_cutoff, q_cutoff), lemma31_rhs(n, t_cutoff, q_cutoff));
  VerificationReport report{inst, !d, std::nullopt, 0, std::nullopt};
  if (d) report.first_mismatch = d->at;
  report.elapsed_ms = elapsed_since(start);
  return report;
}

// ---------------------------------------------------------------------------

LimitReport verify_limit_stabilization(LimitTarget target, HalfExp window, std::int64_t index,
                                       std::int64_t nu) {
  const auto start = std::chrono::steady_clock::now();
  if (window.value < 0) throw Error(ErrorKind::InvalidArgument, "window must be non-negative");
  const Ctx ctx{window};
  LaurentSeries limit;
  std::function<LaurentSeries(std::int64_t)> member;
  std::int64_t first = 0;
  const char* name = "limit";
  switch (target) {
    case LimitTarget::FirstPair:
    case LimitTarget::ThirdPair:
      limit = inv_poch_infinite(PochSpec{MonomialArg{1, kQ1}, kQ3, std::nullopt}, window);
      member = (target == LimitTarget::FirstPair) ? std::function([&](std::int64_t L) { return first_pair_rhs(ctx, L); })
                                                  : std::function([&](std::int64_t L) { return third_pair_rhs(ctx, L); });
      name = (target == LimitTarget::FirstPair) ? "limit_first_pair" : "limit_third_pair";
      break;
    case LimitTarget::SecondPair:
      limit = inv_poch_infinite(PochSpec{MonomialArg{1, HalfExp::q(2)}, kQ3, std::nullopt}, window);
      member = [&](std::int64_t L) { return second_pair_rhs(ctx, L); };
      name = "limit_second_pair";
      break;
    case LimitTarget::BinomLimit:
      if (index < 0) throw Error(ErrorKind::InvalidArgument, "m must be non-negative");
      limit = inv_poch_series(index, kQ1, window);
      member = [&](std::int64_t N) { return gaussian_binomial(N, index, kQ1, window); };
      first = index;
      name = "limit_binom";
      break;
    case LimitTarget::BinomLimit2:
      if (index < 0 || (nu != 0 && nu != 1)) throw Error(ErrorKind::InvalidArgument, "need j >= 0 and nu in {0,1}");
      limit = inv_poch_infinite(PochSpec{MonomialArg{1, kQ1}, kQ1, std::nullopt}, window);
      member = [&](std::int64_t M) { return gaussian_binomial(2 * M + nu, M - index, kQ1, window); };
      first = index;
      name = "limit_binom2";
      break;
  }
  Params params;
  if (target == LimitTarget::BinomLimit) params = {{"m", index}};
  if (target == LimitTarget::BinomLimit2) params = {{"j", index}, {"nu", nu}};
  IdentityInstance inst{name, params, window};

  // Scan downward from the search bound for the start of the agreeing run.
  std::optional<std::int64_t> stable_from;
  std::optional<Mismatch> last_mismatch;
  for (std::int64_t L = kLimitSearchMax; L >= first; --L) {
    auto d = first_difference(truncate(member(L), window), limit);
    if (d) {
      if (L == kLimitSearchMax) last_mismatch = d;
      break;
    }
    stable_from = L;
  }
  LimitReport out{VerificationReport{inst, stable_from.has_value(), last_mismatch, 0, std::nullopt}, stable_from};
  // No agreement even at the search bound means the window outgrew it.
  if (!stable_from || *stable_from > kLimitSearchMax - kLimitConfirmRun) {
    throw Error(ErrorKind::InvalidArgument, "window too large for the limit search bound");
  }
  out.report.elapsed_ms = elapsed_since(start);
  return out;
}

}  // namespace qtri

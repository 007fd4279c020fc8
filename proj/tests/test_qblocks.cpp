#include "doctest.h"
#include "oracle.hpp"
#include "qtri/error.hpp"
#include "qtri/qblocks.hpp"

using namespace qtri;

namespace {

LaurentSeries poly(std::initializer_list<long> c, std::optional<HalfExp> cut = std::nullopt) {
  return LaurentSeries::from_coeffs(c, cut);
}

constexpr HalfExp Q1 = HalfExp::q(1);
constexpr HalfExp Q3 = HalfExp::q(3);

}  // namespace

TEST_CASE("finite Pochhammer") {
  CHECK(poch_finite({{1, Q1}, Q1, 0}) == LaurentSeries::one());
  CHECK(poch_finite({{1, Q1}, Q1, 2}) == poly({1, -1, -1, 1}));
  CHECK(poch_finite({{-1, Q3}, Q3, 1}) == poly({1, 0, 0, 1}));
  CHECK(poch_finite({{0, Q1}, Q1, 5}) == LaurentSeries::one());
  CHECK_THROWS_AS(poch_finite({{1, Q1}, Q1, -1}), Error);
  CHECK_THROWS_AS(poch_finite({{1, Q1}, HalfExp(0), 1}), Error);
}

TEST_CASE("infinite Pochhammer") {
  CHECK(poch_infinite({{1, Q1}, Q1, {}}, HalfExp::q(5)) == poly({1, -1, -1, 0, 0, 1}, HalfExp::q(5)));
  CHECK(poch_infinite({{0, Q1}, Q1, {}}, HalfExp::q(5)) == poly({1}, HalfExp::q(5)));
  CHECK(poch_infinite({{-1, Q1}, Q1, {}}, HalfExp::q(3)) == poly({1, 1, 1, 2}, HalfExp::q(3)));
  CHECK_THROWS_AS(poch_infinite({{1, HalfExp(0)}, Q1, {}}, HalfExp::q(3)), Error);
  CHECK_THROWS_AS(poch_infinite({{-1, HalfExp(-2)}, Q1, {}}, HalfExp::q(3)), Error);
  SUBCASE("Euler pentagonal numbers") {
    auto e = poch_infinite({{1, Q1}, Q1, {}}, HalfExp::q(40));
    for (std::int64_t k = -5; k <= 5; ++k) {
      const std::int64_t pent = k * (3 * k - 1) / 2;
      if (pent <= 40) CHECK(e.coeff_at(HalfExp::q(pent)) == ((k % 2 == 0) ? 1 : -1));
    }
    CHECK(e.size() == 11);  // 0, 1, 2, 5, 7, 12, 15, 22, 26, 35, 40
  }
  SUBCASE("reciprocal") {
    auto c = HalfExp::q(30);
    auto p = poch_infinite({{1, HalfExp::q(2)}, Q3, {}}, c);
    auto ip = inv_poch_infinite({{1, HalfExp::q(2)}, Q3, {}}, c);
    CHECK(mul(p, ip, c) == truncate(LaurentSeries::one(), c));
  }
}

TEST_CASE("inverse finite Pochhammer series") {
  CHECK(inv_poch_series(-1, Q1, HalfExp::q(5)).is_zero());
  CHECK(inv_poch_series(1, Q1, HalfExp::q(3)) == poly({1, 1, 1, 1}, HalfExp::q(3)));
  CHECK(inv_poch_series(2, Q1, HalfExp::q(3)) == poly({1, 1, 2, 2}, HalfExp::q(3)));
  for (std::int64_t n = 0; n <= 6; ++n) {
    auto c = HalfExp::q(25);
    CHECK(mul(inv_poch_series(n, Q1, c), q_factorial(n, Q1), c) == truncate(LaurentSeries::one(), c));
  }
}

TEST_CASE("Gaussian binomial") {
  CHECK(gaussian_binomial(4, 2) == poly({1, 1, 2, 1, 1}));
  CHECK(gaussian_binomial(7, 0) == LaurentSeries::one());
  CHECK(gaussian_binomial(3, 5).is_zero());
  CHECK(gaussian_binomial(3, -1).is_zero());
  CHECK(gaussian_binomial(-2, 0).is_zero());
  CHECK(gaussian_binomial(2, 1, Q3) == poly({1, 0, 0, 1}));
  SUBCASE("matches the subset-sum oracle, symmetry, degree and q = 1") {
    std::int64_t pascal[13][13] = {};
    for (int n = 0; n <= 12; ++n) {
      pascal[n][0] = 1;
      for (int k = 1; k <= n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + (k <= n - 1 ? pascal[n - 1][k] : 0);
    }
    for (std::int64_t n = 0; n <= 12; ++n) {
      for (std::int64_t k = 0; k <= n; ++k) {
        auto g = gaussian_binomial(n, k);
        CHECK(oracle::to_poly(g) == oracle::gaussian(n, k));
        CHECK(g == gaussian_binomial(n, n - k));
        CHECK(g.max_exp() == HalfExp::q(k * (n - k)));
        CHECK(eval_at_one(g) == pascal[n][k]);
        for (const auto& t : g.terms()) CHECK(t.coeff > 0);
        CHECK(oracle::to_poly(gaussian_binomial(n, k, Q3)) == oracle::gaussian(n, k, 6));
      }
    }
  }
  SUBCASE("truncated form agrees with the exact one") {
    auto c = HalfExp::q(7);
    CHECK(gaussian_binomial(10, 4, Q1, c) == truncate(gaussian_binomial(10, 4), c));
  }
}

TEST_CASE("exact division") {
  CHECK(exact_divide(poly({1, 0, 0, -1}), poly({1, -1})) == poly({1, 1, 1}));
  auto p = poly({3, 0, -2, 5});
  CHECK(exact_divide(p, p) == LaurentSeries::one());
  CHECK(exact_divide(q_factorial(2, Q3), q_factorial(2, Q1)) == mul(poly({1, 1, 1}), poly({1, 0, 1, 0, 1})));
  CHECK_THROWS_AS(exact_divide(poly({1, 0, -1}), poly({1, 0, 0, -1})), Error);
  CHECK_THROWS_AS(exact_divide(p, LaurentSeries{}), Error);
  CHECK_THROWS_AS(exact_divide(truncate(p, HalfExp(4)), p), Error);
  try {
    exact_divide(poly({1, 0, -1}), poly({1, 0, 0, -1}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
}

TEST_CASE("Pochhammer reversal: minus-sign form holds, printed plus-sign form does not") {
  for (std::int64_t n = 0; n <= 10; ++n) {
    auto lhs = reverse_exponents(q_factorial(n));
    const int sign = (n % 2 == 0) ? 1 : -1;
    CHECK(lhs == shift(q_factorial(n), HalfExp::q(-n * (n + 1) / 2), sign));
    if (n >= 1) CHECK(lhs != shift(q_factorial(n), HalfExp::q(n * (n + 1) / 2), sign));
  }
}

TEST_CASE("Gaussian binomial stabilization") {
  auto c = HalfExp::q(10);
  for (std::int64_t m = 0; m <= 4; ++m) {
    // [N choose m] agrees with 1/(q;q)_m below q^10 once N - m > 10.
    for (std::int64_t N = m + 11; N <= m + 14; ++N) {
      CHECK(gaussian_binomial(N, m, Q1, c) == inv_poch_series(m, Q1, c));
    }
  }
}

TEST_CASE("scaled_half") {
  CHECK(scaled_half(3, Q1) == HalfExp(3));
  CHECK(scaled_half(3, Q3) == HalfExp(9));
  CHECK_THROWS_AS(scaled_half(1, HalfExp(1)), Error);
}

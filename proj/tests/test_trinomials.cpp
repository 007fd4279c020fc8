#include "doctest.h"
#include "oracle.hpp"
#include "qtri/qblocks.hpp"
#include "qtri/trinomials.hpp"

using namespace qtri;

namespace {

LaurentSeries poly(std::initializer_list<long> c) { return LaurentSeries::from_coeffs(c); }

constexpr HalfExp Q1 = HalfExp::q(1);
constexpr HalfExp Q3 = HalfExp::q(3);

}  // namespace

TEST_CASE("round trinomial small values") {
  CHECK(round_trinomial({2, 0, 0}) == poly({1, 1, 1}));
  CHECK(eval_at_one(round_trinomial({4, 3, 0})) == 19);
  CHECK(round_trinomial({1, 5, 2}).is_zero());
  CHECK(eval_at_one(round_trinomial({4, 0, -1})) == 16);
  CHECK(round_trinomial({0, 0, 0}) == LaurentSeries::one());
}

TEST_CASE("round trinomial matches the definition oracle") {
  for (std::int64_t L = 0; L <= 8; ++L) {
    for (std::int64_t a = -L - 1; a <= L + 1; ++a) {
      for (std::int64_t b = -3; b <= 3; ++b) {
        CHECK(oracle::to_poly(round_trinomial({L, b, a})) == oracle::round_trinomial(L, b, a));
      }
      CHECK(oracle::to_poly(round_trinomial({L, a, a, Q3})) == oracle::round_trinomial(L, a, a, 6));
    }
  }
}

TEST_CASE("q = 1 triangle laws") {
  for (std::int64_t L = 0; L <= 7; ++L) {
    for (std::int64_t b = -2; b <= 2; ++b) {
      Coeff row = 0;
      for (std::int64_t a = -L; a <= L; ++a) {
        const auto v = eval_at_one(round_trinomial({L, b, a}));
        CHECK(v == oracle::trinomial_at_one(L, a));
        CHECK(v == eval_at_one(round_trinomial({L, b, -a})));
        row += v;
      }
      Coeff three = 1;
      for (std::int64_t i = 0; i < L; ++i) three *= 3;
      CHECK(row == three);
    }
  }
}

TEST_CASE("truncated round trinomial agrees with the exact one") {
  for (std::int64_t b : {-4, 0, 2}) {
    auto c = HalfExp::q(9);
    CHECK(round_trinomial({9, b, 1}, c) == truncate(round_trinomial({9, b, 1}), c));
  }
}

TEST_CASE("T_n trinomials") {
  for (std::int64_t L = 0; L <= 6; ++L) CHECK(t_trinomial({1, L, L}) == LaurentSeries::one());
  CHECK(t_trinomial({0, 1, 0}) == LaurentSeries::monomial(HalfExp(1)));
  CHECK(t_trinomial({0, 3, 4}).is_zero());
  CHECK(t_trinomial({-1, 2, -3}).is_zero());
  for (std::int64_t n = -1; n <= 1; ++n) {
    for (std::int64_t L = 0; L <= 7; ++L) {
      for (std::int64_t a = -L; a <= L; ++a) {
        auto t = t_trinomial({n, L, a});
        auto r = round_trinomial({L, a - n, a});
        if (t.is_zero()) {
          CHECK(r.is_zero());
          continue;
        }
        CHECK(t.min_exp().value >= 0);
        // All exponents share a parity.
        for (const auto& term : t.terms()) CHECK((term.exp.value - t.min_exp().value) % 2 == 0);
        // Reversal keeps the multiset of coefficients.
        std::vector<Coeff> ct, cr;
        for (const auto& term : t.terms()) ct.push_back(term.coeff);
        for (const auto& term : r.terms()) cr.push_back(term.coeff);
        std::sort(ct.begin(), ct.end());
        std::sort(cr.begin(), cr.end());
        CHECK(ct == cr);
      }
    }
  }
}

TEST_CASE("refined trinomial") {
  for (std::int64_t M = 0; M <= 3; ++M) CHECK(refined_trinomial({0, M, 0, 0}) == LaurentSeries::one());
  CHECK(refined_trinomial({1, 1, 1, 1}) == LaurentSeries::one());
  CHECK(refined_trinomial({0, 1, 1, 0}).is_zero());
}

TEST_CASE("exploratory: refined trinomial for large M") {
  // For fixed L and growing M the coefficients settle below a window; the
  // settled series is T_0(L, a) / (q;q)_L. Informational, not a gate.
  const HalfExp window = HalfExp::q(8);
  for (std::int64_t L = 0; L <= 4; ++L) {
    for (std::int64_t a = -L; a <= L; ++a) {
      auto big = truncate(refined_trinomial({L, 20, a, a}), window);
      auto bigger = truncate(refined_trinomial({L, 24, a, a}), window);
      CHECK(big == bigger);
      auto guess = mul(t_trinomial({0, L, a}), inv_poch_series(L, Q1, window), window);
      CHECK(big == guess);
    }
  }
}

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "qtri/error.hpp"
#include "qtri/series.hpp"

using namespace qtri;

namespace {

LaurentSeries poly(std::initializer_list<long> c) { return LaurentSeries::from_coeffs(c); }

LaurentSeries random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 6), exp(-4, 8), coeff(-5, 5);
  std::vector<LaurentSeries::Term> terms;
  for (int i = len(rng); i > 0; --i) terms.push_back({HalfExp(exp(rng)), coeff(rng)});
  return LaurentSeries::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("construction drops zeros and merges repeated exponents") {
  auto s = LaurentSeries::from_terms({{HalfExp(2), 3}, {HalfExp(0), 1}, {HalfExp(2), -3}, {HalfExp(1), 0}});
  CHECK(s == LaurentSeries::one());
  CHECK(s.is_exact());
  CHECK(LaurentSeries{}.is_zero());
}

TEST_CASE("add") {
  CHECK(add(poly({1, 1}), poly({0, 1})) == poly({1, 2}));
  CHECK(add(poly({1, 2, 3}), LaurentSeries{}) == poly({1, 2, 3}));
  SUBCASE("cutoff is the smaller present cutoff") {
    auto a = LaurentSeries::from_coeffs({1, -1}, HalfExp::q(1));
    auto r = add(a, poly({0, 0, 1}));
    CHECK(r == LaurentSeries::from_coeffs({1, -1}, HalfExp::q(1)));
    CHECK(r.cutoff() == HalfExp::q(1));
  }
}

TEST_CASE("mul") {
  CHECK(mul(poly({1, -1}), poly({1, 1})) == poly({1, 0, -1}));
  CHECK(mul(poly({1, 1, 1}), LaurentSeries::one()) == poly({1, 1, 1}));
  CHECK(mul(poly({1, 1, 1}), poly({1, 0, 1, 0, 1})) == poly({1, 1, 2, 1, 2, 1, 1}));
  SUBCASE("truncated factors bound the result") {
    auto a = LaurentSeries::from_coeffs({1, 1, 1}, HalfExp::q(2));
    auto r = mul(a, poly({1, 1}));
    CHECK(r.cutoff() == HalfExp::q(2));
    CHECK(r == LaurentSeries::from_coeffs({1, 2, 2}, HalfExp::q(2)));
  }
  SUBCASE("exact zero annihilates truncation") {
    auto a = LaurentSeries::from_coeffs({1, 1}, HalfExp::q(1));
    CHECK(mul(a, LaurentSeries{}).is_exact());
  }
  SUBCASE("a factor starting at q^-1 lowers the known region") {
    auto a = LaurentSeries::from_coeffs({1, 1, 1}, HalfExp::q(2));
    auto r = mul(a, LaurentSeries::monomial(HalfExp::q(-1)));
    CHECK(r.cutoff() == HalfExp::q(1));
  }
}

TEST_CASE("scale, reverse, truncate") {
  CHECK(scale_exponents(poly({1, 1}), 3) == poly({1, 0, 0, 1}));
  CHECK(scale_exponents(poly({1, 1, 1}), 2) == poly({1, 0, 1, 0, 1}));
  CHECK(scale_exponents(poly({4, 5}), 1) == poly({4, 5}));
  CHECK(reverse_exponents(poly({1, 1})) == add(LaurentSeries::one(), LaurentSeries::monomial(HalfExp::q(-1))));
  CHECK(reverse_exponents(LaurentSeries::monomial(HalfExp(3))) == LaurentSeries::monomial(HalfExp(-3)));
  CHECK_THROWS_AS(reverse_exponents(truncate(poly({1}), HalfExp(4))), Error);

  auto t = truncate(poly({1, 1, 0, 0, 0, 1}), HalfExp::q(2));
  CHECK(t == LaurentSeries::from_coeffs({1, 1}, HalfExp::q(2)));
  CHECK(truncate(LaurentSeries{}, HalfExp(7)).is_zero());
  CHECK(truncate(poly({1}), HalfExp(9)).cutoff() == HalfExp(9));
}

TEST_CASE("coeff_at and eval_at_one") {
  auto p = poly({1, 0, 2});
  CHECK(p.coeff_at(HalfExp::q(2)) == 2);
  CHECK(p.coeff_at(HalfExp::q(1)) == 0);
  auto t = truncate(p, HalfExp::q(3));
  CHECK_THROWS_AS(t.coeff_at(HalfExp::q(4)), Error);
  CHECK(eval_at_one(poly({1, 1, 1})) == 3);
  CHECK(eval_at_one(LaurentSeries{}) == 0);
  CHECK_THROWS_AS(eval_at_one(t), Error);
}

TEST_CASE("ring laws against the oracle on random polynomials") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(oracle::to_poly(mul(a, b)) == oracle::mul(oracle::to_poly(a), oracle::to_poly(b)));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    CHECK(reverse_exponents(reverse_exponents(a)) == a);
    CHECK(eval_at_one(reverse_exponents(a)) == eval_at_one(a));
    CHECK(scale_exponents(mul(a, b), 3) == mul(scale_exponents(a, 3), scale_exponents(b, 3)));
  }
}

TEST_CASE("truncation coherence") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    // Non-negative exponents so the truncated product is fully determined.
    auto a = truncate(shift(random_poly(rng), HalfExp(4)), HalfExp(40));
    auto b = truncate(shift(random_poly(rng), HalfExp(4)), HalfExp(40));
    a = LaurentSeries::from_terms(std::vector<LaurentSeries::Term>(a.terms().begin(), a.terms().end()));
    b = LaurentSeries::from_terms(std::vector<LaurentSeries::Term>(b.terms().begin(), b.terms().end()));
    for (std::int64_t c : {0, 3, 6, 11, 20}) {
      const HalfExp cut(c);
      auto direct = truncate(mul(a, b), cut);
      CHECK(truncate(mul(truncate(a, cut), truncate(b, cut)), cut) == direct);
      CHECK(mul(a, b, cut) == direct);
    }
  }
}

TEST_CASE("dense and sparse multiplication agree") {
  // A wide sparse product and a dense one go down different paths.
  auto sparse = add(LaurentSeries::one(), LaurentSeries::monomial(HalfExp(100000)));
  auto dense = poly({1, 2, 3, 4, 5, 6, 7, 8});
  auto r = mul(sparse, dense);
  CHECK(r == add(dense, shift(dense, HalfExp(100000))));
  CHECK(oracle::to_poly(mul(dense, dense)) == oracle::mul(oracle::to_poly(dense), oracle::to_poly(dense)));
}

TEST_CASE("first_difference locates the lowest mismatch") {
  auto a = poly({1, 2, 3});
  auto b = poly({1, 2, 4});
  auto d = first_difference(a, b);
  REQUIRE(d.has_value());
  CHECK(d->exp == HalfExp::q(2));
  CHECK(d->lhs == 3);
  CHECK(d->rhs == 4);
  CHECK_FALSE(first_difference(a, a));
  // Differences above a cutoff are not mismatches.
  CHECK_FALSE(first_difference(truncate(a, HalfExp::q(1)), b));
}

TEST_CASE("to_string") {
  CHECK(poly({1, -1, 0, 2}).to_string() == "1 - q + 2*q^3");
  CHECK(LaurentSeries{}.to_string() == "0");
  CHECK(LaurentSeries::monomial(HalfExp(1)).to_string() == "q^(1/2)");
}

TEST_CASE("trivariate product and restriction") {
  TrivariateSeries a(3, HalfExp::q(4));
  a.add_term(0, 0, truncate(LaurentSeries::one(), HalfExp::q(4)));
  a.add_term(1, 1, truncate(poly({0, 1}), HalfExp::q(4)));
  auto sq = mul(a, a);
  CHECK(sq.at(2, 2) == truncate(poly({0, 0, 1}), HalfExp::q(4)));
  CHECK(sq.at(1, 1) == truncate(poly({0, 2}), HalfExp::q(4)));
  CHECK(sq.at(3, 0).is_zero());
  auto r = sq.restrict_to(HalfExp::q(1));
  CHECK(r.at(2, 2).is_zero());
  CHECK_THROWS_AS(a.add_term(0, 0, truncate(poly({1}), HalfExp::q(2))), Error);
}

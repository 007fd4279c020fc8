#include "doctest.h"
#include "oracle.hpp"
#include "qtri/capparelli.hpp"
#include "qtri/error.hpp"
#include "qtri/identities.hpp"
#include "qtri/qblocks.hpp"
#include "qtri/trinomials.hpp"

using namespace qtri;

namespace {

LaurentSeries poly(std::initializer_list<long> c) { return LaurentSeries::from_coeffs(c); }

VerificationReport verify(std::string id, Params p, std::optional<HalfExp> c = std::nullopt) {
  return verify_identity({std::move(id), std::move(p), c});
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("catalog is complete and well formed") {
  for (const char* id : {"first_pair", "second_pair", "third_pair", "first_pair_dual", "second_pair_dual",
                         "third_pair_dual", "t0_sum", "t1_sum", "tm1_sum", "bmo_transform", "binom_shift", "thm71",
                         "kr1", "fincap1n", "thm72", "outlook2", "fincap2m", "cap2", "fincap2n",
                         "q_binomial_theorem", "q_exponential", "jtp", "poch_reversal", "genfun_products", "outlook1",
                         "hierarchy"}) {
    CAPTURE(id);
    CHECK(find_identity(id) != nullptr);
  }
  CHECK(find_identity("nope") == nullptr);
}

TEST_CASE("compute_side examples") {
  CHECK(compute_side({"third_pair", {{"L", 0}}, {}}, Side::Lhs) == LaurentSeries::one());
  CHECK(compute_side({"thm71", {{"M", 1}}, {}}, Side::Lhs) == poly({1, 0, 1, 1, 1}));
  CHECK(compute_side({"thm71", {{"M", 1}}, {}}, Side::Rhs) == poly({1, 0, 1, 1, 1}));
  auto kr1 = compute_side({"kr1", {}, HalfExp::q(6)}, Side::Rhs);
  CHECK(kr1.coeff_at(HalfExp::q(6)) == 2);
  CHECK(kr1.cutoff() == HalfExp::q(6));
  CHECK(compute_side({"first_pair", {{"L", 4}}, {}}, Side::Rhs).is_exact());
}

TEST_CASE("frozen double-sum coefficients") {
  const std::vector<long> kr1 = {1, 0, 1, 1, 1, 1, 2, 1, 2, 3, 3, 3, 5, 4, 6, 7, 7, 8, 11, 10};
  auto s = capparelli_double_sum({}, HalfExp::q(19));
  for (std::size_t i = 0; i < kr1.size(); ++i) CHECK(s.coeff_at(HalfExp::q(static_cast<std::int64_t>(i))) == kr1[i]);
  auto o2 = compute_side({"outlook2", {}, HalfExp::q(4)}, Side::Lhs);
  CHECK(o2 == LaurentSeries::from_coeffs({2, 1, 1, 2, 2}, HalfExp::q(4)));
}

TEST_CASE("schema and mode errors") {
  CHECK(kind_of([] { verify("nope", {}); }) == ErrorKind::UnknownId);
  CHECK(kind_of([] { verify("third_pair", {}); }) == ErrorKind::Schema);
  CHECK(kind_of([] { verify("third_pair", {{"L", -1}}); }) == ErrorKind::Schema);
  CHECK(kind_of([] { verify("third_pair", {{"L", 2}, {"M", 1}}); }) == ErrorKind::Schema);
  CHECK(kind_of([] { verify("third_pair", {{"L", 2}}, HalfExp(10)); }) == ErrorKind::Schema);
  CHECK(kind_of([] { verify("kr1", {}); }) == ErrorKind::Schema);
  CHECK(kind_of([] { verify("hierarchy", {{"nu", 0}, {"L", 2}}); }) == ErrorKind::Schema);
  // z-degree too small to reach the cutoff
  CHECK(kind_of([] { verify("q_binomial_theorem", {{"zdeg", 2}}, HalfExp::q(40)); }) == ErrorKind::Schema);
  // defaults fill in
  auto n = normalize({"q_binomial_theorem", {}, HalfExp::q(10)});
  CHECK(n.params.at("zdeg") == 20);
  CHECK(n.params.at("z_exp") == 4);
}

TEST_CASE("polynomial identities hold") {
  for (std::int64_t L = 0; L <= 8; ++L) {
    for (const char* id : {"first_pair", "second_pair", "third_pair", "first_pair_dual", "second_pair_dual",
                           "third_pair_dual"}) {
      CAPTURE(id);
      CAPTURE(L);
      CHECK(verify(id, {{"L", L}}).match);
    }
  }
  for (std::int64_t M = 0; M <= 5; ++M) {
    for (const char* id : {"thm71", "thm72", "fincap2m"}) CHECK(verify(id, {{"M", M}}).match);
    for (const char* id : {"fincap1n", "fincap2n"}) CHECK(verify(id, {{"N", M}}).match);
  }
  for (std::int64_t L = 0; L <= 5; ++L) {
    for (std::int64_t a = -L - 1; a <= L + 1; ++a) {
      for (const char* id : {"t0_sum", "t1_sum", "tm1_sum", "bmo_transform"}) {
        CAPTURE(id);
        CHECK(verify(id, {{"L", L}, {"a", a}}).match);
      }
    }
  }
  for (std::int64_t n = 0; n <= 8; ++n) CHECK(verify("poch_reversal", {{"n", n}}).match);
}

TEST_CASE("first_pair as printed fails; the corrected form holds") {
  // Printed second term q^{L+4j} ((L, j; j-1))_2 in base q^3.
  for (std::int64_t L = 0; L <= 4; ++L) {
    LaurentSeries printed;
    for (std::int64_t j = -L; j <= L + 1; ++j) {
      printed = add(printed, shift(round_trinomial({L, j + 1, j, HalfExp::q(3)}), HalfExp::q(L + j + 1)));
      printed = add(printed, shift(round_trinomial({L, j, j - 1, HalfExp::q(3)}), HalfExp::q(L + 4 * j)));
    }
    auto lhs = compute_side({"first_pair", {{"L", L}}, {}}, Side::Lhs);
    CHECK(first_difference(lhs, printed).has_value());
    CHECK(lhs == compute_side({"first_pair", {{"L", L}}, {}}, Side::Rhs));
  }
}

TEST_CASE("a perturbed side is reported with its location") {
  auto lhs = compute_side({"first_pair", {{"L", 3}}, {}}, Side::Lhs);
  auto rhs = add(compute_side({"first_pair", {{"L", 3}}, {}}, Side::Rhs), LaurentSeries::monomial(HalfExp::q(5), 7));
  auto d = first_difference(lhs, rhs);
  REQUIRE(d.has_value());
  CHECK(d->exp == HalfExp::q(5));
  CHECK(d->rhs - d->lhs == 7);
}

TEST_CASE("series identities hold through moderate cutoffs") {
  const auto c = HalfExp::q(30);
  for (const char* id : {"kr1", "cap2", "outlook2"}) CHECK(verify(id, {}, c).match);
  CHECK(verify("q_binomial_theorem", {}, c).match);
  CHECK(verify("q_binomial_theorem", {{"a_sign", -1}, {"a_exp", 3}, {"z_sign", -1}, {"z_exp", 2}, {"zdeg", 40}}, c).match);
  CHECK(verify("q_exponential", {{"z_exp", 1}}, c).match);
  CHECK(verify("jtp", {{"z_sign", -1}, {"z_exp", 1}}, c).match);
  for (std::int64_t pair = 1; pair <= 3; ++pair) {
    for (std::int64_t k = 0; k <= 4; ++k) CHECK(verify("genfun_products", {{"pair", pair}, {"k", k}}, c).match);
  }
}

TEST_CASE("series cutoffs are honoured exactly") {
  for (std::int64_t halves : {0, 1, 7, 20}) {
    auto s = compute_side({"kr1", {}, HalfExp(halves)}, Side::Lhs);
    CHECK(s.cutoff() == HalfExp(halves));
  }
}

TEST_CASE("Bailey transform") {
  SUBCASE("alpha at 0 only, kind 0, L = 1") {
    AlphaSequence alpha;
    alpha.set(0, LaurentSeries::one());
    auto [lhs, rhs] = bailey_sides(0, alpha, 1);
    CHECK(lhs == poly({1, 1}));
    CHECK(rhs == poly({1, 1}));
    CHECK(apply_bailey_transform(0, alpha, 1).match);
  }
  SUBCASE("empty alpha") {
    for (int kind : {-1, 0, 1}) {
      auto r = apply_bailey_transform(kind, AlphaSequence{}, 3);
      CHECK(r.match);
    }
  }
  SUBCASE("third dual alpha reproduces thm71") {
    for (std::int64_t M = 0; M <= 4; ++M) {
      auto [lhs, rhs] = bailey_sides(0, quadratic_alpha(2, -M, M), M, HalfExp::q(3));
      CHECK(lhs == compute_side({"thm71", {{"M", M}}, {}}, Side::Lhs));
      CHECK(rhs == compute_side({"thm71", {{"M", M}}, {}}, Side::Rhs));
    }
  }
  SUBCASE("arbitrary alphas satisfy every kind") {
    AlphaSequence alpha;
    alpha.set(-1, poly({2, 0, -1}));
    alpha.set(2, LaurentSeries::monomial(HalfExp(3), 5));
    for (int kind : {-1, 0, 1}) {
      for (std::int64_t L = 0; L <= 4; ++L) CHECK(apply_bailey_transform(kind, alpha, L).match);
    }
  }
  CHECK_THROWS_AS(apply_bailey_transform(2, AlphaSequence{}, 1), Error);
  CHECK(verify("bailey_thm72", {{"M", 3}}).match);
  CHECK(verify("bailey_fincap2m", {{"M", 3}}).match);
}

TEST_CASE("trivariate round trinomial generating function") {
  auto r0 = verify_lemma31(0, 0, HalfExp::q(5));
  CHECK(r0.match);
  auto lhs = lemma31_lhs(0, 0, HalfExp::q(5));
  CHECK(lhs.at(0, 0) == truncate(LaurentSeries::one(), HalfExp::q(5)));
  CHECK(verify_lemma31(0, 6, HalfExp::q(20)).match);
  for (int n = -2; n <= 2; ++n) CHECK(verify_lemma31(n, 6, HalfExp(24)).match);
}

TEST_CASE("limit stabilization") {
  auto third = verify_limit_stabilization(LimitTarget::ThirdPair, HalfExp::q(10));
  CHECK(third.report.match);
  REQUIRE(third.stable_from.has_value());
  CHECK(*third.stable_from <= 12);
  CHECK(verify_limit_stabilization(LimitTarget::SecondPair, HalfExp::q(10)).report.match);
  CHECK(verify_limit_stabilization(LimitTarget::FirstPair, HalfExp::q(10)).report.match);
  auto trivial = verify_limit_stabilization(LimitTarget::ThirdPair, HalfExp(0));
  CHECK(trivial.report.match);
  CHECK(trivial.stable_from == 0);
  CHECK(verify_limit_stabilization(LimitTarget::BinomLimit, HalfExp::q(10), 3).report.match);
  CHECK(verify_limit_stabilization(LimitTarget::BinomLimit2, HalfExp::q(10), 2, 1).report.match);
  CHECK_THROWS_AS(verify_limit_stabilization(LimitTarget::ThirdPair, HalfExp::q(200)), Error);
}

TEST_CASE("doubly bounded identity and hierarchy") {
  for (std::int64_t L = 0; L <= 4; ++L) {
    for (std::int64_t M = 0; M <= 4; ++M) CHECK(verify("outlook1", {{"L", L}, {"M", M}}).match);
    for (std::int64_t nu = 1; nu <= 3; ++nu) CHECK(verify("hierarchy", {{"nu", nu}, {"L", L}}).match);
  }
}

TEST_CASE("exploratory: bounded left-hand sides have non-negative coefficients") {
  for (std::int64_t M = 0; M <= 8; ++M) {
    for (const char* id : {"thm71", "fincap2m"}) {
      const auto lhs = compute_side({id, {{"M", M}}, {}}, Side::Lhs);
      for (const auto& t : lhs.terms()) CHECK(t.coeff >= 0);
    }
  }
}

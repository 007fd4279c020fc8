#include "doctest.h"
#include "oracle.hpp"
#include "qtri/error.hpp"
#include "qtri/partitions.hpp"

using namespace qtri;

namespace {
constexpr auto First = CapparelliVariant::First;
constexpr auto Second = CapparelliVariant::Second;
}  // namespace

TEST_CASE("congruence side") {
  CHECK(congruence_side_count(0, First) == 1);
  CHECK(congruence_side_count(6, First) == 2);
  CHECK(congruence_side_count(1, First) == 0);
  CHECK(congruence_side_count(-3, Second) == 0);
}

TEST_CASE("difference side") {
  CHECK(difference_side_count(6, First) == 2);
  CHECK(difference_side_count(0, First) == 1);
  CHECK(difference_side_count(0, Second) == 1);
  CHECK(difference_side_count(2, First) == 1);
  CHECK(difference_side_count(2, Second) == 0);
  CHECK(difference_side_count(-1, First) == 0);
  auto parts = difference_side_partitions(6, First);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].parts == std::vector<std::int64_t>{6});
  CHECK(parts[1].parts == std::vector<std::int64_t>{4, 2});
  CHECK(parts[1].weight() == 6);
}

TEST_CASE("gap rule") {
  CHECK(difference_gap_allowed(4, 2));   // 3k-1, 3k+1
  CHECK_FALSE(difference_gap_allowed(5, 3));
  CHECK(difference_gap_allowed(6, 3));   // 3k, 3k+3
  CHECK_FALSE(difference_gap_allowed(7, 4));
  CHECK(difference_gap_allowed(9, 5));
  CHECK_FALSE(difference_gap_allowed(3, 2));
  CHECK_FALSE(difference_gap_allowed(3, 3));
}

TEST_CASE("counts agree with brute force") {
  for (std::int64_t n = 0; n <= 30; ++n) {
    for (bool first : {true, false}) {
      const auto v = first ? First : Second;
      CHECK(static_cast<std::int64_t>(congruence_side_count(n, v)) == oracle::capparelli_congruence(n, first));
      CHECK(static_cast<std::int64_t>(difference_side_count(n, v)) == oracle::capparelli_difference(n, first));
    }
  }
}

TEST_CASE("removing the largest part keeps a partition valid") {
  for (std::int64_t n = 0; n <= 30; ++n) {
    for (auto v : {First, Second}) {
      for (const auto& p : difference_side_partitions(n, v)) {
        if (p.parts.empty()) continue;
        const std::int64_t rest = p.weight() - p.parts.front();
        std::vector<std::int64_t> tail(p.parts.begin() + 1, p.parts.end());
        bool found = false;
        for (const auto& q : difference_side_partitions(rest, v)) found = found || q.parts == tail;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("product and double-sum coefficients") {
  auto p1 = product_coefficients(First, 40);
  auto p2 = product_coefficients(Second, 40);
  CHECK(p1[6] == 2);
  CHECK(p1[0] == 1);
  CHECK(p2[0] == 1);
  CHECK(p2[2] == 0);
  auto kr1 = doublesum_coefficients(DoubleSum::Kr1, 40);
  auto cap2 = doublesum_coefficients(DoubleSum::Cap2, 40);
  auto o2 = doublesum_coefficients(DoubleSum::Outlook2, 40);
  CHECK(kr1[0] == 1);
  CHECK(kr1[6] == 2);
  CHECK(o2[0] == 2);
  for (std::int64_t n = 0; n <= 40; ++n) {
    const auto k = static_cast<std::size_t>(n);
    CHECK(p1[k] == congruence_side_count(n, First));
    CHECK(p2[k] == congruence_side_count(n, Second));
    CHECK(kr1[k] == p1[k]);
    CHECK(cap2[k] == p2[k]);
    CHECK(o2[k] == p1[k] + p2[k]);
    CHECK(p1[k] >= 0);
  }
  CHECK_THROWS_AS(parse_double_sum("nope"), Error);
  CHECK(product_coefficients(First, -1).empty());
}

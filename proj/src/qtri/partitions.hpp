#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qtri/capparelli.hpp"
#include "qtri/series.hpp"

namespace qtri {

/// Parts in non-increasing order.
struct Partition {
  std::vector<std::int64_t> parts;

  std::int64_t weight() const;
};

/// Distinct parts avoiding the variant's forbidden residues mod 6
/// (+-1 for the first variant, +-2 for the second). Zero for n < 0.
std::uint64_t congruence_side_count(std::int64_t n, CapparelliVariant v);

/// Parts differ by at least 2; a difference of 2 is only allowed between
/// 3k-1 and 3k+1, a difference of 3 only between 3k and 3k+3, otherwise at
/// least 4. The first variant excludes the part 1, the second the part 2.
/// Zero for n < 0.
std::uint64_t difference_side_count(std::int64_t n, CapparelliVariant v);

/// Every partition of n satisfying the difference conditions.
std::vector<Partition> difference_side_partitions(std::int64_t n, CapparelliVariant v);

/// True when consecutive parts `larger` > `smaller` may sit next to each other.
bool difference_gap_allowed(std::int64_t larger, std::int64_t smaller);

/// Coefficients of q^0..q^n_max of the variant's product.
std::vector<Coeff> product_coefficients(CapparelliVariant v, std::int64_t n_max);

enum class DoubleSum { Kr1, Cap2, Outlook2 };

/// Parses "kr1", "cap2" or "outlook2"; throws InvalidArgument otherwise.
DoubleSum parse_double_sum(std::string_view name);

/// Coefficients of q^0..q^n_max of the double sum.
std::vector<Coeff> doublesum_coefficients(DoubleSum which, std::int64_t n_max);

}  // namespace qtri

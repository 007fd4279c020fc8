#include "qtri/partitions.hpp"

#include <numeric>

#include "qtri/error.hpp"

namespace qtri {

namespace {

struct VariantData {
  std::int64_t forbidden_residue;  // r and 6 - r are excluded
  std::int64_t excluded_part;
};

VariantData data_for(CapparelliVariant v) {
  return v == CapparelliVariant::First ? VariantData{1, 1} : VariantData{2, 2};
}

bool residue_allowed(std::int64_t part, const VariantData& d) {
  const std::int64_t r = part % 6;
  return r != d.forbidden_residue && r != 6 - d.forbidden_residue;
}

// Distinct-part count by a 0/1 knapsack over allowed parts.
std::uint64_t count_distinct(std::int64_t n, const VariantData& d) {
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(n + 1));
  ways[0] = 1;
  for (std::int64_t part = 1; part <= n; ++part) {
    if (!residue_allowed(part, d)) continue;
    for (std::int64_t w = n; w >= part; --w) ways[static_cast<std::size_t>(w)] += ways[static_cast<std::size_t>(w - part)];
  }
  return ways[static_cast<std::size_t>(n)];
}

// Descending enumeration: pick the next smaller part below `prev`.
template <typename Visit>
void enumerate(std::int64_t remaining, std::int64_t prev, const VariantData& d,
               std::vector<std::int64_t>& parts, Visit&& visit) {
  if (remaining == 0) {
    visit(parts);
    return;
  }
  const std::int64_t top = (prev == 0) ? remaining : std::min(remaining, prev - 2);
  for (std::int64_t part = top; part >= 1; --part) {
    if (part == d.excluded_part) continue;
    if (prev != 0 && !difference_gap_allowed(prev, part)) continue;
    parts.push_back(part);
    enumerate(remaining - part, part, d, parts, visit);
    parts.pop_back();
  }
}

}  // namespace

std::int64_t Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), std::int64_t{0}); }

bool difference_gap_allowed(std::int64_t larger, std::int64_t smaller) {
  const std::int64_t gap = larger - smaller;
  if (gap >= 4) return true;
  if (gap == 2) return smaller % 3 == 2;  // {3k-1, 3k+1}
  if (gap == 3) return smaller % 3 == 0;  // {3k, 3k+3}
  return false;
}

std::uint64_t congruence_side_count(std::int64_t n, CapparelliVariant v) {
  if (n < 0) return 0;
  return count_distinct(n, data_for(v));
}

std::uint64_t difference_side_count(std::int64_t n, CapparelliVariant v) {
  if (n < 0) return 0;
  std::uint64_t count = 0;
  std::vector<std::int64_t> parts;
  enumerate(n, 0, data_for(v), parts, [&](const auto&) { ++count; });
  return count;
}

std::vector<Partition> difference_side_partitions(std::int64_t n, CapparelliVariant v) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<std::int64_t> parts;
  enumerate(n, 0, data_for(v), parts, [&](const auto& p) { out.push_back(Partition{p}); });
  return out;
}

namespace {

std::vector<Coeff> dense_prefix(const LaurentSeries& s, std::int64_t n_max) {
  std::vector<Coeff> out(static_cast<std::size_t>(n_max + 1));
  for (const auto& t : s.terms()) {
    if (t.exp.value < 0 || t.exp.value % 2 != 0) throw Error(ErrorKind::Internal, "unexpected exponent");
    const std::int64_t e = t.exp.value / 2;
    if (e <= n_max) out[static_cast<std::size_t>(e)] = t.coeff;
  }
  return out;
}

}  // namespace

std::vector<Coeff> product_coefficients(CapparelliVariant v, std::int64_t n_max) {
  if (n_max < 0) return {};
  return dense_prefix(capparelli_product(v, HalfExp::q(n_max)), n_max);
}

DoubleSum parse_double_sum(std::string_view name) {
  if (name == "kr1") return DoubleSum::Kr1;
  if (name == "cap2") return DoubleSum::Cap2;
  if (name == "outlook2") return DoubleSum::Outlook2;
  throw Error(ErrorKind::InvalidArgument, "unknown double sum '" + std::string(name) + "'");
}

std::vector<Coeff> doublesum_coefficients(DoubleSum which, std::int64_t n_max) {
  if (n_max < 0) return {};
  const HalfExp c = HalfExp::q(n_max);
  LaurentSeries s;
  switch (which) {
    case DoubleSum::Kr1:
      s = capparelli_double_sum({}, c);
      break;
    case DoubleSum::Cap2:
      s = add(capparelli_double_sum({1, 3, 0}, c), capparelli_double_sum({3, 6, 1}, c));
      break;
    case DoubleSum::Outlook2:
      s = capparelli_double_sum({-2, -3, 0}, c);
      break;
  }
  return dense_prefix(s, n_max);
}

}  // namespace qtri

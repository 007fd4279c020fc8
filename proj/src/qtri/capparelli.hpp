#pragma once

#include <cstdint>

#include "qtri/series.hpp"

namespace qtri {

enum class CapparelliVariant { First, Second };

/// Linear shift applied to 2m^2 + 6mn + 6n^2 in a double sum.
struct QuadraticShift {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t constant = 0;
};

/// sum_{m,n>=0} q^{Q(m,n) + shift} / ((q;q)_m (q^3;q^3)_n) through `cutoff`.
LaurentSeries capparelli_double_sum(QuadraticShift shift, HalfExp cutoff);

/// (-q^2,-q^4;q^6)_inf (-q^3;q^3)_inf for the first variant,
/// (-q,-q^5;q^6)_inf (-q^3;q^3)_inf for the second.
LaurentSeries capparelli_product(CapparelliVariant variant, HalfExp cutoff);

}  // namespace qtri

#include "qtri/qblocks.hpp"

#include <numeric>
#include <vector>

#include "qtri/error.hpp"

namespace qtri {

namespace {

void require_positive_step(HalfExp step) {
  if (step.value <= 0) throw Error(ErrorKind::InvalidArgument, "Pochhammer step must be positive");
}

LaurentSeries one_minus(const MonomialArg& arg, HalfExp extra) {
  return sub(LaurentSeries::one(), LaurentSeries::monomial(arg.exp + extra, arg.sign));
}

// Dense coefficient vector in units of `unit`, starting at exponent 0.
struct Dense {
  std::int64_t unit;
  std::vector<Coeff> c;

  LaurentSeries to_series(std::optional<HalfExp> cutoff) const {
    std::vector<LaurentSeries::Term> terms;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (sgn(c[i]) != 0) terms.push_back({HalfExp(static_cast<std::int64_t>(i) * unit), c[i]});
    }
    return LaurentSeries::from_terms(std::move(terms), cutoff);
  }
};

// In-place multiplication by (1 - u^k), truncated to the vector length.
void times_one_minus(std::vector<Coeff>& c, std::size_t k) {
  for (std::size_t i = c.size(); i-- > k;) c[i] -= c[i - k];
}

// In-place division by (1 - u^k) as a power series.
void over_one_minus(std::vector<Coeff>& c, std::size_t k) {
  for (std::size_t i = k; i < c.size(); ++i) c[i] += c[i - k];
}

}  // namespace

HalfExp scaled_half(std::int64_t numerator, HalfExp step) {
  const std::int64_t twice = numerator * step.value;
  if (twice % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "exponent is not a half-integer power of q for this step");
  }
  return HalfExp(twice / 2);
}

LaurentSeries poch_finite(const PochSpec& spec) {
  require_positive_step(spec.step);
  if (!spec.length) throw Error(ErrorKind::InvalidArgument, "poch_finite needs a finite length");
  if (*spec.length < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative Pochhammer length is only defined for 1/(q;q)_n");
  }
  LaurentSeries out = LaurentSeries::one();
  if (spec.arg.sign == 0) return out;
  for (std::int64_t k = 0; k < *spec.length; ++k) out = mul(out, one_minus(spec.arg, spec.step * k));
  return out;
}

LaurentSeries poch_infinite(const PochSpec& spec, HalfExp cutoff) {
  require_positive_step(spec.step);
  if (spec.arg.sign == 0) return truncate(LaurentSeries::one(), cutoff);
  if (spec.arg.exp.value <= 0) {
    throw Error(ErrorKind::InvalidArgument,
                "infinite Pochhammer product does not converge for a non-positive exponent");
  }
  LaurentSeries out = truncate(LaurentSeries::one(), cutoff);
  for (std::int64_t k = 0; spec.arg.exp + spec.step * k <= cutoff; ++k) {
    out = mul(out, one_minus(spec.arg, spec.step * k), cutoff);
  }
  return out;
}

LaurentSeries inv_poch_infinite(const PochSpec& spec, HalfExp cutoff) {
  require_positive_step(spec.step);
  if (spec.arg.sign == 0) return truncate(LaurentSeries::one(), cutoff);
  if (spec.arg.exp.value <= 0) {
    throw Error(ErrorKind::InvalidArgument,
                "infinite Pochhammer product does not converge for a non-positive exponent");
  }
  LaurentSeries out = truncate(LaurentSeries::one(), cutoff);
  for (std::int64_t k = 0; spec.arg.exp + spec.step * k <= cutoff; ++k) {
    const HalfExp e = spec.arg.exp + spec.step * k;
    std::vector<LaurentSeries::Term> geometric;
    Coeff c = 1;
    for (HalfExp power{}; power <= cutoff; power += e) {
      geometric.push_back({power, c});
      c *= spec.arg.sign;
    }
    out = mul(out, LaurentSeries::from_terms(std::move(geometric), cutoff), cutoff);
  }
  return out;
}

LaurentSeries q_factorial(std::int64_t n, HalfExp step) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "q-factorial of a negative integer");
  require_positive_step(step);
  Dense d{step.value, std::vector<Coeff>(static_cast<std::size_t>(n * (n + 1) / 2 + 1))};
  d.c[0] = 1;
  for (std::int64_t k = 1; k <= n; ++k) times_one_minus(d.c, static_cast<std::size_t>(k));
  return d.to_series(std::nullopt);
}

LaurentSeries inv_poch_series(std::int64_t n, HalfExp step, HalfExp cutoff) {
  require_positive_step(step);
  if (n < 0) return LaurentSeries{};
  if (cutoff.value < 0) return truncate(LaurentSeries{}, cutoff);
  Dense d{step.value, std::vector<Coeff>(static_cast<std::size_t>(cutoff.value / step.value + 1))};
  d.c[0] = 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (static_cast<std::size_t>(k) >= d.c.size()) break;
    over_one_minus(d.c, static_cast<std::size_t>(k));
  }
  return d.to_series(cutoff);
}

LaurentSeries gaussian_binomial(std::int64_t top, std::int64_t bottom, HalfExp step,
                                std::optional<HalfExp> cutoff) {
  require_positive_step(step);
  if (bottom < 0 || top < 0 || bottom > top) {
    return cutoff ? truncate(LaurentSeries{}, *cutoff) : LaurentSeries{};
  }
  const std::int64_t k = std::min(bottom, top - bottom);
  std::int64_t degree = k * (top - k);
  if (cutoff) {
    if (cutoff->value < 0) return truncate(LaurentSeries{}, *cutoff);
    degree = std::min(degree, cutoff->value / step.value);
  }
  // prod_{i=1}^{k} (1 - u^{top-k+i}) / (1 - u^i); every partial product is
  // itself a Gaussian binomial, so each division is exact.
  Dense d{step.value, std::vector<Coeff>(static_cast<std::size_t>(degree + 1))};
  d.c[0] = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    times_one_minus(d.c, static_cast<std::size_t>(top - k + i));
    over_one_minus(d.c, static_cast<std::size_t>(i));
  }
  return d.to_series(cutoff);
}

LaurentSeries exact_divide(const LaurentSeries& num, const LaurentSeries& den) {
  if (!num.is_exact() || !den.is_exact()) {
    throw Error(ErrorKind::Truncation, "exact_divide needs exact operands");
  }
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  if (num.is_zero()) return {};

  const auto dt = den.terms();
  const std::int64_t dlo = den.min_exp().value;
  const std::int64_t nlo = num.min_exp().value;
  const std::int64_t qlo = nlo - dlo;
  const std::int64_t qhi = num.max_exp().value - den.max_exp().value;
  auto not_divisible = [] {
    return Error(ErrorKind::NotDivisible, "exact_divide: non-zero remainder");
  };
  if (qhi < qlo) throw not_divisible();

  std::int64_t stride = 0;
  for (const auto& t : num.terms()) stride = std::gcd(stride, t.exp.value - nlo);
  for (const auto& t : dt) stride = std::gcd(stride, t.exp.value - dlo);
  if (stride == 0) stride = 1;

  // Ascending long division on a strided dense remainder.
  const std::int64_t span = (num.max_exp().value - nlo) / stride + 1;
  std::vector<Coeff> rem(static_cast<std::size_t>(span));
  for (const auto& t : num.terms()) rem[static_cast<std::size_t>((t.exp.value - nlo) / stride)] = t.coeff;

  const Coeff& lead = dt.front().coeff;
  const std::int64_t qslots = (qhi - qlo) / stride + 1;
  std::vector<LaurentSeries::Term> quotient;
  Coeff q, r;
  for (std::int64_t i = 0; i < qslots; ++i) {
    auto& cur = rem[static_cast<std::size_t>(i)];
    if (sgn(cur) == 0) continue;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cur.get_mpz_t(), lead.get_mpz_t());
    if (sgn(r) != 0) throw not_divisible();
    for (const auto& t : dt) {
      const std::int64_t j = i + (t.exp.value - dlo) / stride;
      mpz_submul(rem[static_cast<std::size_t>(j)].get_mpz_t(), q.get_mpz_t(), t.coeff.get_mpz_t());
    }
    quotient.push_back({HalfExp(qlo + i * stride), q});
  }
  for (const auto& c : rem) {
    if (sgn(c) != 0) throw not_divisible();
  }
  return LaurentSeries::from_terms(std::move(quotient));
}

}  // namespace qtri

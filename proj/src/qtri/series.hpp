#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qtri {

using Coeff = mpz_class;

/// Exponent of q counted in units of q^(1/2): q^3 is HalfExp{6}, q^(1/2) is
/// HalfExp{1}. Every exponent the library deals with is a half-integer, so
/// this keeps all exponent arithmetic integral.
struct HalfExp {
  std::int64_t value = 0;

  constexpr HalfExp() = default;
  constexpr explicit HalfExp(std::int64_t halves) : value(halves) {}

  /// Whole power of q.
  static constexpr HalfExp q(std::int64_t power) { return HalfExp(2 * power); }

  constexpr auto operator<=>(const HalfExp&) const = default;

  constexpr HalfExp operator+(HalfExp o) const { return HalfExp(value + o.value); }
  constexpr HalfExp operator-(HalfExp o) const { return HalfExp(value - o.value); }
  constexpr HalfExp operator-() const { return HalfExp(-value); }
  constexpr HalfExp operator*(std::int64_t k) const { return HalfExp(value * k); }
  HalfExp& operator+=(HalfExp o) {
    value += o.value;
    return *this;
  }
};

/// Laurent polynomial or upper-truncated Laurent series in q with
/// arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by exponent with no stored zeros. A present cutoff
/// means every coefficient at an exponent <= cutoff is known exactly and
/// nothing is known above it; an absent cutoff means the value is an exact
/// Laurent polynomial.
class LaurentSeries {
 public:
  struct Term {
    HalfExp exp;
    Coeff coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  /// The exact zero polynomial.
  LaurentSeries() = default;

  static LaurentSeries one() { return monomial(HalfExp{}); }
  static LaurentSeries monomial(HalfExp exp, Coeff coeff = 1);

  /// Combines repeated exponents, drops zeros and anything above `cutoff`.
  static LaurentSeries from_terms(std::vector<Term> terms,
                                  std::optional<HalfExp> cutoff = std::nullopt);

  /// c[0] + c[1] q + c[2] q^2 + ... (whole powers only).
  static LaurentSeries from_coeffs(std::initializer_list<long> coeffs,
                                   std::optional<HalfExp> cutoff = std::nullopt);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_exact() const noexcept { return !cutoff_.has_value(); }
  std::optional<HalfExp> cutoff() const noexcept { return cutoff_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Lowest / highest stored exponent. Precondition: !is_zero().
  HalfExp min_exp() const { return terms_.front().exp; }
  HalfExp max_exp() const { return terms_.back().exp; }

  /// Stored coefficient or 0. Throws Truncation above the cutoff.
  Coeff coeff_at(HalfExp exp) const;

  std::string to_string() const;

  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

 private:
  friend class SeriesBuilder;

  std::vector<Term> terms_;
  std::optional<HalfExp> cutoff_;
};

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries negate(const LaurentSeries& a);

/// Product. The result cutoff is the largest exponent determined by the
/// known parts of both factors (for factors with constant term this is the
/// smaller of the two cutoffs).
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
/// Product truncated at `cutoff`; skips work above it.
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, HalfExp cutoff);

/// Multiplication by coeff * q^exp.
LaurentSeries shift(const LaurentSeries& a, HalfExp exp, const Coeff& coeff = 1);

/// q -> q^k, k >= 1.
LaurentSeries scale_exponents(const LaurentSeries& a, std::int64_t k);
/// q -> 1/q. Exact input only.
LaurentSeries reverse_exponents(const LaurentSeries& a);
LaurentSeries truncate(const LaurentSeries& a, HalfExp cutoff);
/// Sum of coefficients. Exact input only.
Coeff eval_at_one(const LaurentSeries& a);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return sub(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a) { return negate(a); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }
inline LaurentSeries& operator+=(LaurentSeries& a, const LaurentSeries& b) { return a = add(a, b); }
inline LaurentSeries& operator*=(LaurentSeries& a, const LaurentSeries& b) { return a = mul(a, b); }

/// Cutoff after combining two operands: the smaller present one.
std::optional<HalfExp> min_cutoff(std::optional<HalfExp> a, std::optional<HalfExp> b);

struct Mismatch {
  HalfExp exp;
  Coeff lhs;
  Coeff rhs;
};

/// Lowest exponent, within the region known for both operands, where the
/// coefficients differ.
std::optional<Mismatch> first_difference(const LaurentSeries& a, const LaurentSeries& b);

/// Formal series in t (and a Laurent variable x) with coefficients in q:
/// entries keyed by (t degree, x exponent). Every entry is known through
/// q_cutoff(); t degrees above t_cutoff() are discarded.
class TrivariateSeries {
 public:
  using Key = std::pair<int, std::int64_t>;

  TrivariateSeries(int t_cutoff, HalfExp q_cutoff);

  int t_cutoff() const noexcept { return t_cutoff_; }
  HalfExp q_cutoff() const noexcept { return q_cutoff_; }
  const std::map<Key, LaurentSeries>& entries() const noexcept { return entries_; }

  /// Adds `value` to the (t, x) entry; ignored when t > t_cutoff. Throws
  /// Truncation if `value` is not known through q_cutoff().
  void add_term(int t, std::int64_t x, const LaurentSeries& value);

  LaurentSeries at(int t, std::int64_t x) const;

  /// Drops everything above a smaller q cutoff.
  TrivariateSeries restrict_to(HalfExp q_cutoff) const;

 private:
  friend TrivariateSeries mul(const TrivariateSeries& a, const TrivariateSeries& b);

  int t_cutoff_;
  HalfExp q_cutoff_;
  std::map<Key, LaurentSeries> entries_;
};

/// Product truncated at the smaller t cutoff. The q cutoff of the result
/// shrinks by the most negative q exponent present in the other factor.
TrivariateSeries mul(const TrivariateSeries& a, const TrivariateSeries& b);

struct TrivariateMismatch {
  int t;
  std::int64_t x;
  Mismatch at;
};

std::optional<TrivariateMismatch> first_difference(const TrivariateSeries& a,
                                                   const TrivariateSeries& b);

}  // namespace qtri

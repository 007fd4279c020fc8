#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtri/series.hpp"

namespace qtri {

enum class Side { Lhs, Rhs };

using Params = std::map<std::string, std::int64_t, std::less<>>;

/// An identity id with a parameter assignment. A cutoff selects truncated
/// evaluation; no cutoff means an exact polynomial comparison.
struct IdentityInstance {
  std::string id;
  Params params;
  std::optional<HalfExp> cutoff;
};

struct VerificationReport {
  IdentityInstance instance;
  bool match = false;
  std::optional<Mismatch> first_mismatch;
  std::int64_t elapsed_ms = 0;
  /// Set when the instance failed with an error instead of a comparison,
  /// e.g. a non-polynomial quotient. match is false in that case.
  std::optional<std::string> error;
};

struct ParamSpec {
  std::string name;
  std::int64_t min;
  std::int64_t max;
  std::optional<std::int64_t> fallback;
};

enum class IdentityKind {
  Polynomial,  // exact comparison; a cutoff is rejected
  Series,      // truncated comparison; a cutoff is required
  Check,       // composite check with its own verifier, no single sides
};

struct IdentityInfo {
  std::string id;
  std::string summary;
  IdentityKind kind;
  std::vector<ParamSpec> params;
  /// Requires a cutoff (truncated evaluation); otherwise a cutoff is rejected.
  bool truncated = false;
};

/// All registered ids, in a fixed order.
const std::vector<IdentityInfo>& identity_catalog();
/// nullptr for an unknown id.
const IdentityInfo* find_identity(std::string_view id);

/// Fills schema defaults and validates ranges and the cutoff rule. Throws
/// UnknownId or Schema.
IdentityInstance normalize(const IdentityInstance& instance);

LaurentSeries compute_side(const IdentityInstance& instance, Side side);
VerificationReport verify_identity(const IdentityInstance& instance);

// ---------------------------------------------------------------------------
// Bailey-type transform.

/// Finitely supported integer-indexed sequence of exact Laurent polynomials.
class AlphaSequence {
 public:
  void set(std::int64_t a, LaurentSeries value);
  const std::map<std::int64_t, LaurentSeries>& support() const noexcept { return values_; }

 private:
  std::map<std::int64_t, LaurentSeries> values_;
};

/// alpha(j) = q^{(3j^2 + linear*j)/2} for lo <= j <= hi.
AlphaSequence quadratic_alpha(std::int64_t linear, std::int64_t lo, std::int64_t hi);

/// Both sides of the transformed identity for F_kind built from alpha, in
/// base q^step. kind is -1, 0 or 1. Denominators are cleared, so each side is
/// an exact polynomial.
std::pair<LaurentSeries, LaurentSeries> bailey_sides(int kind, const AlphaSequence& alpha,
                                                     std::int64_t L,
                                                     HalfExp step = HalfExp::q(1));

VerificationReport apply_bailey_transform(int kind, const AlphaSequence& alpha, std::int64_t L,
                                          HalfExp step = HalfExp::q(1));

// ---------------------------------------------------------------------------
// Trivariate generating function of round trinomials.

/// Left side: sum over L, j of x^j t^L ((L, j-n; j))_2 / (q;q)_L.
TrivariateSeries lemma31_lhs(int n, int t_cutoff, HalfExp q_cutoff);
/// Right side: (t^2 q^-n; q)_inf / (t, t q^-n / x, t x; q)_inf from series expansions.
TrivariateSeries lemma31_rhs(int n, int t_cutoff, HalfExp q_cutoff);
VerificationReport verify_lemma31(int n, int t_cutoff, HalfExp q_cutoff);

// ---------------------------------------------------------------------------
// Limit stabilization.

enum class LimitTarget { FirstPair, SecondPair, ThirdPair, BinomLimit, BinomLimit2 };

inline constexpr std::int64_t kLimitSearchMax = 64;
inline constexpr std::int64_t kLimitConfirmRun = 16;

struct LimitReport {
  VerificationReport report;
  /// First index from which every member up to the search bound agrees with
  /// the limit through the window.
  std::optional<std::int64_t> stable_from;
};

/// `index` is m for BinomLimit and j for BinomLimit2; `nu` (0 or 1) is used
/// by BinomLimit2 only.
LimitReport verify_limit_stabilization(LimitTarget target, HalfExp window,
                                       std::int64_t index = 0, std::int64_t nu = 0);

/// 2m^2 + 6mn + 6n^2.
std::int64_t capparelli_quadratic(std::int64_t m, std::int64_t n);

}  // namespace qtri

#include "qtri/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qtri/error.hpp"

namespace qtri {

class SeriesBuilder {
 public:
  // Terms must already be strictly increasing, non-zero and below the cutoff.
  static LaurentSeries adopt(std::vector<LaurentSeries::Term> terms,
                             std::optional<HalfExp> cutoff) {
    LaurentSeries s;
    s.terms_ = std::move(terms);
    s.cutoff_ = cutoff;
    return s;
  }
};

namespace {

using Term = LaurentSeries::Term;

// Lowest exponent that can carry a non-zero coefficient. Empty for the exact
// zero polynomial, which annihilates anything it multiplies.
std::optional<std::int64_t> low_bound(const LaurentSeries& s) {
  if (!s.is_zero()) return s.min_exp().value;
  if (auto c = s.cutoff()) return c->value + 1;
  return std::nullopt;
}

std::int64_t exponent_stride(std::span<const Term> terms) {
  std::int64_t g = 0;
  for (const auto& t : terms) g = std::gcd(g, t.exp.value - terms.front().exp.value);
  return g;
}

void collect_nonzero(std::vector<Term>& out, std::int64_t exp, Coeff&& c) {
  if (sgn(c) != 0) out.push_back(Term{HalfExp(exp), std::move(c)});
}

}  // namespace

LaurentSeries LaurentSeries::monomial(HalfExp exp, Coeff coeff) {
  if (sgn(coeff) == 0) return {};
  return SeriesBuilder::adopt({Term{exp, std::move(coeff)}}, std::nullopt);
}

LaurentSeries LaurentSeries::from_terms(std::vector<Term> terms, std::optional<HalfExp> cutoff) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (cutoff && t.exp > *cutoff) break;
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && sgn(merged.back().coeff) == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && sgn(merged.back().coeff) == 0) merged.pop_back();
  return SeriesBuilder::adopt(std::move(merged), cutoff);
}

LaurentSeries LaurentSeries::from_coeffs(std::initializer_list<long> coeffs,
                                         std::optional<HalfExp> cutoff) {
  std::vector<Term> terms;
  std::int64_t power = 0;
  for (long c : coeffs) terms.push_back(Term{HalfExp::q(power++), Coeff(c)});
  return from_terms(std::move(terms), cutoff);
}

Coeff LaurentSeries::coeff_at(HalfExp exp) const {
  if (cutoff_ && exp > *cutoff_) {
    throw Error(ErrorKind::Truncation,
                "coefficient at q^(" + std::to_string(exp.value) +
                    "/2) lies above the truncation cutoff");
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, HalfExp e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp) return it->coeff;
  return 0;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Coeff mag = abs(t.coeff);
    if (first) {
      if (sgn(t.coeff) < 0) out << "-";
    } else {
      out << (sgn(t.coeff) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (t.exp.value == 0) {
      out << mag.get_str();
      continue;
    }
    if (!unit) out << mag.get_str() << "*";
    out << "q";
    if (t.exp.value % 2 == 0) {
      if (t.exp.value != 2) out << "^" << t.exp.value / 2;
    } else {
      out << "^(" << t.exp.value << "/2)";
    }
  }
  if (first) out << "0";
  if (cutoff_) {
    out << " + O(q^";
    if (cutoff_->value % 2 == 0) {
      out << (cutoff_->value / 2 + 1) << ")";
    } else {
      out << "(" << cutoff_->value + 1 << "/2))";
    }
  }
  return out.str();
}

std::optional<HalfExp> min_cutoff(std::optional<HalfExp> a, std::optional<HalfExp> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
  auto cutoff = min_cutoff(a.cutoff(), b.cutoff());
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  auto above = [&](HalfExp e) { return cutoff && e > *cutoff; };
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->exp < ib->exp)) {
      if (above(ia->exp)) break;
      out.push_back(*ia++);
    } else if (ia == ea || ib->exp < ia->exp) {
      if (above(ib->exp)) break;
      out.push_back(Term{ib->exp, subtract ? Coeff(-ib->coeff) : ib->coeff});
      ++ib;
    } else {
      if (above(ia->exp)) break;
      Coeff c = subtract ? Coeff(ia->coeff - ib->coeff) : Coeff(ia->coeff + ib->coeff);
      collect_nonzero(out, ia->exp.value, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return SeriesBuilder::adopt(std::move(out), cutoff);
}

LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b,
                       std::optional<HalfExp> requested) {
  auto la = low_bound(a);
  auto lb = low_bound(b);
  if (!la || !lb) return SeriesBuilder::adopt({}, requested);  // exact zero factor

  std::optional<HalfExp> cutoff = requested;
  if (auto ca = a.cutoff()) cutoff = min_cutoff(cutoff, HalfExp(ca->value + *lb));
  if (auto cb = b.cutoff()) cutoff = min_cutoff(cutoff, HalfExp(cb->value + *la));

  if (a.is_zero() || b.is_zero()) return SeriesBuilder::adopt({}, cutoff);

  const auto ta = a.terms();
  const auto tb = b.terms();
  const std::int64_t lo = ta.front().exp.value + tb.front().exp.value;
  std::int64_t hi = ta.back().exp.value + tb.back().exp.value;
  if (cutoff) hi = std::min(hi, cutoff->value);
  if (hi < lo) return SeriesBuilder::adopt({}, cutoff);

  std::int64_t stride = std::gcd(exponent_stride(ta), exponent_stride(tb));
  if (stride == 0) stride = 1;
  const std::int64_t slots = (hi - lo) / stride + 1;
  const double pairs = static_cast<double>(ta.size()) * static_cast<double>(tb.size());

  std::vector<Term> out;
  if (static_cast<double>(slots) <= 4.0 * pairs + 64.0) {
    // Dense accumulator over the (strided) exponent range.
    std::vector<Coeff> acc(static_cast<std::size_t>(slots));
    for (const auto& x : ta) {
      const std::int64_t base = x.exp.value + tb.front().exp.value;
      if (base > hi) break;
      for (const auto& y : tb) {
        const std::int64_t e = x.exp.value + y.exp.value;
        if (e > hi) break;
        mpz_addmul(acc[static_cast<std::size_t>((e - lo) / stride)].get_mpz_t(),
                   x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
      }
    }
    out.reserve(acc.size());
    for (std::int64_t i = 0; i < slots; ++i) {
      collect_nonzero(out, lo + i * stride, std::move(acc[static_cast<std::size_t>(i)]));
    }
  } else {
    std::map<std::int64_t, Coeff> acc;
    for (const auto& x : ta) {
      for (const auto& y : tb) {
        const std::int64_t e = x.exp.value + y.exp.value;
        if (e > hi) break;
        mpz_addmul(acc[e].get_mpz_t(), x.coeff.get_mpz_t(), y.coeff.get_mpz_t());
      }
    }
    out.reserve(acc.size());
    for (auto& [e, c] : acc) collect_nonzero(out, e, std::move(c));
  }
  return SeriesBuilder::adopt(std::move(out), cutoff);
}

}  // namespace

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }

LaurentSeries negate(const LaurentSeries& a) {
  std::vector<Term> out(a.terms().begin(), a.terms().end());
  for (auto& t : out) t.coeff = -t.coeff;
  return SeriesBuilder::adopt(std::move(out), a.cutoff());
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  return multiply(a, b, std::nullopt);
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, HalfExp cutoff) {
  return multiply(a, b, cutoff);
}

LaurentSeries shift(const LaurentSeries& a, HalfExp exp, const Coeff& coeff) {
  if (sgn(coeff) == 0) return a.is_exact() ? LaurentSeries{} : SeriesBuilder::adopt({}, a.cutoff());
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back(Term{t.exp + exp, t.coeff * coeff});
  std::optional<HalfExp> cutoff;
  if (a.cutoff()) cutoff = *a.cutoff() + exp;
  return SeriesBuilder::adopt(std::move(out), cutoff);
}

LaurentSeries scale_exponents(const LaurentSeries& a, std::int64_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "scale_exponents needs k >= 1");
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back(Term{t.exp * k, t.coeff});
  std::optional<HalfExp> cutoff;
  // Unknown region starts at k * (cutoff + 1).
  if (a.cutoff()) cutoff = HalfExp(k * (a.cutoff()->value + 1) - 1);
  return SeriesBuilder::adopt(std::move(out), cutoff);
}

LaurentSeries reverse_exponents(const LaurentSeries& a) {
  if (!a.is_exact()) {
    throw Error(ErrorKind::Truncation, "cannot reverse exponents of a truncated series");
  }
  std::vector<Term> out;
  out.reserve(a.size());
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    out.push_back(Term{-it->exp, it->coeff});
  }
  return SeriesBuilder::adopt(std::move(out), std::nullopt);
}

LaurentSeries truncate(const LaurentSeries& a, HalfExp cutoff) {
  auto c = min_cutoff(a.cutoff(), cutoff);
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    if (t.exp > *c) break;
    out.push_back(t);
  }
  return SeriesBuilder::adopt(std::move(out), c);
}

Coeff eval_at_one(const LaurentSeries& a) {
  if (!a.is_exact()) {
    throw Error(ErrorKind::Truncation, "cannot evaluate a truncated series at q = 1");
  }
  Coeff sum = 0;
  for (const auto& t : a.terms()) sum += t.coeff;
  return sum;
}

std::optional<Mismatch> first_difference(const LaurentSeries& a, const LaurentSeries& b) {
  auto cutoff = min_cutoff(a.cutoff(), b.cutoff());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    Mismatch m;
    if (ib == eb || (ia != ea && ia->exp < ib->exp)) {
      m = Mismatch{ia->exp, ia->coeff, 0};
    } else if (ia == ea || ib->exp < ia->exp) {
      m = Mismatch{ib->exp, 0, ib->coeff};
    } else {
      if (ia->coeff == ib->coeff) {
        ++ia;
        ++ib;
        continue;
      }
      m = Mismatch{ia->exp, ia->coeff, ib->coeff};
    }
    if (cutoff && m.exp > *cutoff) return std::nullopt;
    return m;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

TrivariateSeries::TrivariateSeries(int t_cutoff, HalfExp q_cutoff)
    : t_cutoff_(t_cutoff), q_cutoff_(q_cutoff) {
  if (t_cutoff < 0) throw Error(ErrorKind::InvalidArgument, "t cutoff must be non-negative");
}

void TrivariateSeries::add_term(int t, std::int64_t x, const LaurentSeries& value) {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, "t degree must be non-negative");
  if (t > t_cutoff_) return;
  if (value.cutoff() && *value.cutoff() < q_cutoff_) {
    throw Error(ErrorKind::Truncation, "entry is not known through the q cutoff");
  }
  auto& slot = entries_[{t, x}];
  slot = truncate(add(slot, value), q_cutoff_);
  if (slot.is_zero()) entries_.erase({t, x});
}

LaurentSeries TrivariateSeries::at(int t, std::int64_t x) const {
  auto it = entries_.find({t, x});
  if (it == entries_.end()) return truncate(LaurentSeries{}, q_cutoff_);
  return it->second;
}

TrivariateSeries TrivariateSeries::restrict_to(HalfExp q_cutoff) const {
  if (q_cutoff > q_cutoff_) {
    throw Error(ErrorKind::Truncation, "cannot extend a trivariate series beyond its q cutoff");
  }
  TrivariateSeries out(t_cutoff_, q_cutoff);
  for (const auto& [key, value] : entries_) {
    auto v = truncate(value, q_cutoff);
    if (!v.is_zero()) out.entries_.emplace(key, std::move(v));
  }
  return out;
}

TrivariateSeries mul(const TrivariateSeries& a, const TrivariateSeries& b) {
  auto lowest = [](const TrivariateSeries& s) {
    std::int64_t low = 0;
    for (const auto& [key, value] : s.entries_) low = std::min(low, value.min_exp().value);
    return low;
  };
  const HalfExp qc(std::min(a.q_cutoff_.value + lowest(b), b.q_cutoff_.value + lowest(a)));
  TrivariateSeries out(std::min(a.t_cutoff_, b.t_cutoff_), qc);
  std::map<TrivariateSeries::Key, LaurentSeries> acc;
  for (const auto& [ka, va] : a.entries_) {
    for (const auto& [kb, vb] : b.entries_) {
      const int t = ka.first + kb.first;
      if (t > out.t_cutoff_) continue;
      auto& slot = acc[{t, ka.second + kb.second}];
      slot = add(slot, mul(va, vb, qc));
    }
  }
  for (auto& [key, value] : acc) {
    if (value.cutoff() && *value.cutoff() < qc) {
      throw Error(ErrorKind::Internal, "trivariate product lost precision");
    }
    auto v = truncate(value, qc);
    if (!v.is_zero()) out.entries_.emplace(key, std::move(v));
  }
  return out;
}

std::optional<TrivariateMismatch> first_difference(const TrivariateSeries& a,
                                                   const TrivariateSeries& b) {
  const HalfExp qc = std::min(a.q_cutoff(), b.q_cutoff());
  const int tc = std::min(a.t_cutoff(), b.t_cutoff());
  std::vector<TrivariateSeries::Key> keys;
  for (const auto& [k, v] : a.entries()) keys.push_back(k);
  for (const auto& [k, v] : b.entries()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& [t, x] : keys) {
    if (t > tc) continue;
    auto m = first_difference(truncate(a.at(t, x), qc), truncate(b.at(t, x), qc));
    if (m) return TrivariateMismatch{t, x, *m};
  }
  return std::nullopt;
}

}  // namespace qtri

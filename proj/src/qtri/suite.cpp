#include "qtri/suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "qtri/error.hpp"
#include "qtri/identities.hpp"
#include "qtri/partitions.hpp"
#include "qtri/runner.hpp"
#include "qtri/trinomials.hpp"

namespace qtri {

bool SuiteFamily::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.ok; });
}

std::size_t SuiteFamily::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.ok; }));
}

namespace {

std::string label_of(const IdentityInstance& inst) {
  std::ostringstream out;
  out << inst.id;
  for (const auto& [k, v] : inst.params) out << ' ' << k << '=' << v;
  if (inst.cutoff) out << " cutoff=" << inst.cutoff->value << 'h';
  return out.str();
}

std::string describe(const VerificationReport& r) {
  if (r.error) return "error: " + *r.error;
  if (!r.first_mismatch) return {};
  const auto& m = *r.first_mismatch;
  return "first mismatch at exponent " + std::to_string(m.exp.value) + "h: lhs " + m.lhs.get_str() + ", rhs " +
         m.rhs.get_str();
}

std::vector<SuiteCheck> run_instances(const std::vector<IdentityInstance>& raw, unsigned jobs) {
  std::vector<IdentityInstance> instances;
  for (const auto& i : raw) instances.push_back(normalize(i));
  std::vector<SuiteCheck> checks(instances.size());
  verify_all(instances, jobs, [&](std::size_t i, const VerificationReport& r) {
    checks[i] = SuiteCheck{label_of(instances[i]), r.match, describe(r)};
  });
  return checks;
}

IdentityInstance inst(std::string id, Params p, std::optional<HalfExp> cutoff = std::nullopt) {
  return IdentityInstance{std::move(id), std::move(p), cutoff};
}

std::vector<SuiteCheck> pascal_family(unsigned) {
  static const std::vector<std::vector<std::int64_t>> rows = {
      {1}, {1, 1, 1}, {1, 2, 3, 2, 1}, {1, 3, 6, 7, 6, 3, 1}, {1, 4, 10, 16, 19, 16, 10, 4, 1}};
  std::vector<SuiteCheck> out;
  for (std::int64_t L = 0; L < static_cast<std::int64_t>(rows.size()); ++L) {
    for (std::int64_t b = -3; b <= 3; ++b) {
      const auto row = pascal_row(L, b);
      const bool ok = row == rows[static_cast<std::size_t>(L)];
      std::string detail;
      if (!ok) {
        for (auto v : row) detail += std::to_string(v) + ' ';
      }
      out.push_back({"row L=" + std::to_string(L) + " b=" + std::to_string(b), ok, detail});
    }
  }
  return out;
}

std::vector<SuiteCheck> pairs_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (const char* id : {"first_pair", "second_pair", "third_pair"}) {
    for (std::int64_t L = 0; L <= 12; ++L) v.push_back(inst(id, {{"L", L}}));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> duals_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (const char* id : {"first_pair_dual", "second_pair_dual", "third_pair_dual"}) {
    for (std::int64_t L = 0; L <= 12; ++L) v.push_back(inst(id, {{"L", L}}));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> summations_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (const char* id : {"t0_sum", "t1_sum", "tm1_sum", "bmo_transform"}) {
    for (std::int64_t L = 0; L <= 10; ++L) {
      for (std::int64_t a = -L; a <= L; ++a) v.push_back(inst(id, {{"L", L}, {"a", a}}));
    }
  }
  for (std::int64_t L = 0; L <= 10; ++L) {
    for (std::int64_t i = 0; i <= L; ++i) v.push_back(inst("binom_shift", {{"L", L}, {"i", i}}));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> bailey_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (const char* id : {"bailey_thm71", "bailey_thm72", "bailey_fincap2m"}) {
    for (std::int64_t M = 0; M <= 6; ++M) v.push_back(inst(id, {{"M", M}}));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> bounded_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (const char* id : {"thm71", "thm72", "fincap2m"}) {
    for (std::int64_t M = 0; M <= 8; ++M) v.push_back(inst(id, {{"M", M}}));
  }
  for (const char* id : {"fincap1n", "fincap2n"}) {
    for (std::int64_t N = 0; N <= 8; ++N) v.push_back(inst(id, {{"N", N}}));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> series_family(unsigned jobs) {
  const HalfExp c60 = HalfExp::q(60);
  const HalfExp c40 = HalfExp::q(40);
  std::vector<IdentityInstance> v;
  for (const char* id : {"kr1", "cap2", "outlook2"}) v.push_back(inst(id, {}, c60));
  // (a_sign, a_exp, z_sign, z_exp) in half units; zdeg 20 keeps the tail above q^40.
  const std::vector<std::array<std::int64_t, 4>> qbt = {
      {1, 2, 1, 4}, {-1, 2, 1, 4}, {1, 0, 1, 4}, {0, 0, 1, 4}, {1, 6, -1, 4}, {-1, 1, 1, 5}, {1, 3, -1, 6}};
  for (const auto& [as, ae, zs, ze] : qbt) {
    v.push_back(inst("q_binomial_theorem",
                     {{"a_sign", as}, {"a_exp", ae}, {"z_sign", zs}, {"z_exp", ze}, {"zdeg", 20}}, c40));
  }
  for (std::int64_t ze : {1, 2, 3, 4}) {
    for (std::int64_t zs : {1, -1}) v.push_back(inst("q_exponential", {{"z_sign", zs}, {"z_exp", ze}, {"zdeg", 20}}, c40));
  }
  for (std::int64_t ze : {-1, 0, 1}) {
    for (std::int64_t zs : {1, -1}) v.push_back(inst("jtp", {{"z_sign", zs}, {"z_exp", ze}}, c40));
  }
  for (std::int64_t n : {0, 1, 2, 5, 10}) v.push_back(inst("poch_reversal", {{"n", n}}));
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> lemma31_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (std::int64_t n = -2; n <= 2; ++n) v.push_back(inst("lemma31", {{"n", n}, {"tmax", 6}}, HalfExp(24)));
  for (std::int64_t pair = 1; pair <= 3; ++pair) {
    for (std::int64_t k = 0; k <= 6; ++k) v.push_back(inst("genfun_products", {{"pair", pair}, {"k", k}}, HalfExp::q(20)));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> capparelli_family(unsigned) {
  constexpr std::int64_t kMax = 40;
  std::vector<SuiteCheck> out;
  const auto first_product = product_coefficients(CapparelliVariant::First, kMax);
  const auto second_product = product_coefficients(CapparelliVariant::Second, kMax);
  const auto kr1 = doublesum_coefficients(DoubleSum::Kr1, kMax);
  const auto cap2 = doublesum_coefficients(DoubleSum::Cap2, kMax);
  for (auto variant : {CapparelliVariant::First, CapparelliVariant::Second}) {
    const bool first = variant == CapparelliVariant::First;
    const auto& product = first ? first_product : second_product;
    const auto& dsum = first ? kr1 : cap2;
    for (std::int64_t n = 0; n <= kMax; ++n) {
      const auto c = congruence_side_count(n, variant);
      const auto d = difference_side_count(n, variant);
      const auto& p = product[static_cast<std::size_t>(n)];
      const auto& s = dsum[static_cast<std::size_t>(n)];
      const bool ok = p == c && p == d && s == p;
      std::string detail;
      if (!ok) {
        detail = "congruence " + std::to_string(c) + ", difference " + std::to_string(d) + ", product " + p.get_str() +
                 ", double sum " + s.get_str();
      }
      out.push_back({std::string(first ? "first" : "second") + " n=" + std::to_string(n), ok, detail});
    }
  }
  return out;
}

std::vector<SuiteCheck> outlook_family(unsigned jobs) {
  std::vector<IdentityInstance> v;
  for (std::int64_t L = 0; L <= 6; ++L) {
    for (std::int64_t M = 0; M <= 6; ++M) v.push_back(inst("outlook1", {{"L", L}, {"M", M}}));
  }
  for (std::int64_t nu = 1; nu <= 2; ++nu) {
    for (std::int64_t L = 0; L <= 6; ++L) v.push_back(inst("hierarchy", {{"nu", nu}, {"L", L}}));
  }
  return run_instances(v, jobs);
}

std::vector<SuiteCheck> limits_family(unsigned) {
  const HalfExp window = HalfExp::q(10);
  std::vector<SuiteCheck> out;
  auto record = [&](std::string label, LimitTarget target, std::int64_t index, std::int64_t nu) {
    try {
      auto r = verify_limit_stabilization(target, window, index, nu);
      std::string detail = describe(r.report);
      if (r.stable_from) label += " (stable from " + std::to_string(*r.stable_from) + ")";
      out.push_back({label, r.report.match, detail});
    } catch (const std::exception& e) {
      out.push_back({label, false, std::string("error: ") + e.what()});
    }
  };
  record("first_pair -> 1/(q;q^3)", LimitTarget::FirstPair, 0, 0);
  record("second_pair -> 1/(q^2;q^3)", LimitTarget::SecondPair, 0, 0);
  record("third_pair -> 1/(q;q^3)", LimitTarget::ThirdPair, 0, 0);
  for (std::int64_t m = 0; m <= 5; ++m) record("binom m=" + std::to_string(m), LimitTarget::BinomLimit, m, 0);
  for (std::int64_t nu = 0; nu <= 1; ++nu) {
    for (std::int64_t j = 0; j <= 3; ++j) {
      record("binom2 j=" + std::to_string(j) + " nu=" + std::to_string(nu), LimitTarget::BinomLimit2, j, nu);
    }
  }
  return out;
}

struct FamilyDef {
  std::string name;
  std::string title;
  std::function<std::vector<SuiteCheck>(unsigned)> run;
};

const std::vector<FamilyDef>& families() {
  static const std::vector<FamilyDef> defs = {
      {"pascal", "q = 1 trinomial triangle, rows L <= 4", pascal_family},
      {"pairs", "first/second/third pair, L <= 12", pairs_family},
      {"duals", "dual identities, L <= 12", duals_family},
      {"summations", "T_0, T_1, T_-1 summations and transforms, |a| <= L <= 10", summations_family},
      {"bailey", "Bailey transform reproduces thm71/thm72/fincap2m, M <= 6", bailey_family},
      {"bounded", "bounded Capparelli identities, M, N <= 8", bounded_family},
      {"series", "series identities through q^60 / q^40", series_family},
      {"lemma31", "trivariate generating function and product forms", lemma31_family},
      {"capparelli", "four-way Capparelli counts, n <= 40", capparelli_family},
      {"outlook", "doubly bounded identity and hierarchy, L, M <= 6", outlook_family},
      {"limits", "limit stabilization below q^10", limits_family},
  };
  return defs;
}

}  // namespace

std::vector<std::int64_t> pascal_row(std::int64_t L, std::int64_t b) {
  std::vector<std::int64_t> row;
  for (std::int64_t a = -L; a <= L; ++a) {
    row.push_back(eval_at_one(round_trinomial(TrinomialParams{L, b, a})).get_si());
  }
  return row;
}

const std::vector<std::string>& suite_family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : families()) out.push_back(f.name);
    return out;
  }();
  return names;
}

SuiteFamily run_suite_family(const std::string& name, unsigned jobs) {
  for (const auto& f : families()) {
    if (f.name != name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteFamily out{f.name, f.title, f.run(jobs), 0};
    out.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown suite family '" + name + "'");
}

std::string suite_summary_line(const SuiteFamily& f) {
  std::ostringstream out;
  out << (f.ok() ? "PASS " : "FAIL ") << f.name << ' ' << f.passed() << '/' << f.checks.size() << "  " << f.title;
  return out.str();
}

}  // namespace qtri

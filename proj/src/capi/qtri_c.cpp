#include "qtri/qtri.h"

#include <memory>
#include <string>
#include <vector>

#include "qtri/error.hpp"
#include "qtri/identities.hpp"
#include "qtri/partitions.hpp"
#include "qtri/runner.hpp"
#include "qtri/suite.hpp"

struct qtri_instance {
  qtri::IdentityInstance value;
};

struct qtri_report {
  qtri::VerificationReport value;
  std::string lhs, rhs;  // decimal strings of the mismatch coefficients
};

struct qtri_series {
  qtri::LaurentSeries value;
  std::vector<std::string> coeffs;
  std::string text;
};

struct qtri_alpha {
  qtri::AlphaSequence value;
};

namespace {

thread_local std::string g_last_error;

qtri_status status_for(qtri::ErrorKind kind) {
  switch (kind) {
    case qtri::ErrorKind::InvalidArgument: return QTRI_ERR_INVALID_ARGUMENT;
    case qtri::ErrorKind::UnknownId: return QTRI_ERR_UNKNOWN_ID;
    case qtri::ErrorKind::Schema: return QTRI_ERR_SCHEMA;
    case qtri::ErrorKind::NotDivisible: return QTRI_ERR_NOT_DIVISIBLE;
    case qtri::ErrorKind::Truncation: return QTRI_ERR_TRUNCATION;
    case qtri::ErrorKind::Internal: return QTRI_ERR_INTERNAL;
  }
  return QTRI_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qtri_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return QTRI_OK;
  } catch (const qtri::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QTRI_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QTRI_ERR_INTERNAL;
  }
}

qtri_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return QTRI_ERR_NULL_ARGUMENT;
}

qtri_report* wrap(qtri::VerificationReport r) {
  auto out = std::make_unique<qtri_report>();
  if (r.first_mismatch) {
    out->lhs = r.first_mismatch->lhs.get_str();
    out->rhs = r.first_mismatch->rhs.get_str();
  }
  out->value = std::move(r);
  return out.release();
}

qtri_series* wrap(qtri::LaurentSeries s) {
  auto out = std::make_unique<qtri_series>();
  for (const auto& t : s.terms()) out->coeffs.push_back(t.coeff.get_str());
  out->text = s.to_string();
  out->value = std::move(s);
  return out.release();
}

qtri_series* wrap_dense(const std::vector<qtri::Coeff>& coeffs) {
  std::vector<qtri::LaurentSeries::Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) terms.push_back({qtri::HalfExp::q(static_cast<std::int64_t>(i)), coeffs[i]});
  const auto top = qtri::HalfExp::q(static_cast<std::int64_t>(coeffs.size()) - 1);
  return wrap(qtri::LaurentSeries::from_terms(std::move(terms), top));
}

const qtri::IdentityInfo* catalog_at(std::size_t i) {
  const auto& c = qtri::identity_catalog();
  return i < c.size() ? &c[i] : nullptr;
}

}  // namespace

extern "C" {

const char* qtri_version(void) { return "0.1.0"; }
const char* qtri_last_error(void) { return g_last_error.c_str(); }

const char* qtri_status_name(qtri_status status) {
  switch (status) {
    case QTRI_OK: return "ok";
    case QTRI_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QTRI_ERR_UNKNOWN_ID: return "unknown id";
    case QTRI_ERR_SCHEMA: return "schema violation";
    case QTRI_ERR_NOT_DIVISIBLE: return "not divisible";
    case QTRI_ERR_TRUNCATION: return "truncation";
    case QTRI_ERR_INTERNAL: return "internal error";
    case QTRI_ERR_NULL_ARGUMENT: return "null argument";
  }
  return "unknown status";
}

size_t qtri_catalog_size(void) { return qtri::identity_catalog().size(); }

const char* qtri_catalog_id(size_t index) {
  const auto* info = catalog_at(index);
  return info ? info->id.c_str() : nullptr;
}

const char* qtri_catalog_summary(size_t index) {
  const auto* info = catalog_at(index);
  return info ? info->summary.c_str() : nullptr;
}

qtri_kind qtri_catalog_kind(size_t index) {
  const auto* info = catalog_at(index);
  if (!info) return QTRI_KIND_CHECK;
  return static_cast<qtri_kind>(info->kind);
}

size_t qtri_catalog_param_count(size_t index) {
  const auto* info = catalog_at(index);
  return info ? info->params.size() : 0;
}

qtri_status qtri_catalog_param(size_t index, size_t k, const char** name, int64_t* min, int64_t* max,
                               int* has_default, int64_t* default_value) {
  const auto* info = catalog_at(index);
  if (!info || k >= info->params.size()) {
    g_last_error = "catalog index out of range";
    return QTRI_ERR_INVALID_ARGUMENT;
  }
  const auto& p = info->params[k];
  if (name) *name = p.name.c_str();
  if (min) *min = p.min;
  if (max) *max = p.max;
  if (has_default) *has_default = p.fallback.has_value();
  if (default_value) *default_value = p.fallback.value_or(0);
  return QTRI_OK;
}

qtri_status qtri_instance_new(const char* id, qtri_instance** out) {
  if (!id) return null_arg("id");
  if (!out) return null_arg("out");
  return guarded([&] {
    if (!qtri::find_identity(id)) throw qtri::Error(qtri::ErrorKind::UnknownId, std::string("unknown identity id '") + id + "'");
    *out = new qtri_instance{qtri::IdentityInstance{id, {}, std::nullopt}};
  });
}

void qtri_instance_free(qtri_instance* instance) { delete instance; }

qtri_status qtri_instance_set_param(qtri_instance* instance, const char* name, int64_t value) {
  if (!instance) return null_arg("instance");
  if (!name) return null_arg("name");
  return guarded([&] { instance->value.params[name] = value; });
}

qtri_status qtri_instance_set_cutoff(qtri_instance* instance, int64_t halves) {
  if (!instance) return null_arg("instance");
  instance->value.cutoff = qtri::HalfExp(halves);
  return QTRI_OK;
}

qtri_status qtri_instance_validate(qtri_instance* instance) {
  if (!instance) return null_arg("instance");
  return guarded([&] { instance->value = qtri::normalize(instance->value); });
}

qtri_status qtri_verify(const qtri_instance* instance, qtri_report** out) {
  if (!instance) return null_arg("instance");
  if (!out) return null_arg("out");
  return guarded([&] { *out = wrap(qtri::verify_identity(instance->value)); });
}

qtri_status qtri_verify_batch(const qtri_instance* const* instances, size_t count, unsigned jobs, qtri_report_fn fn,
                              void* user) {
  if (!instances && count > 0) return null_arg("instances");
  if (!fn) return null_arg("fn");
  return guarded([&] {
    std::vector<qtri::IdentityInstance> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!instances[i]) throw qtri::Error(qtri::ErrorKind::InvalidArgument, "null instance in batch");
      list.push_back(qtri::normalize(instances[i]->value));
    }
    qtri::verify_all(list, jobs == 0 ? qtri::default_jobs() : jobs,
                     [&](std::size_t i, const qtri::VerificationReport& r) {
                       std::unique_ptr<qtri_report> handle(wrap(r));
                       fn(i, handle.get(), user);
                     });
  });
}

unsigned qtri_default_jobs(void) { return qtri::default_jobs(); }

void qtri_report_free(qtri_report* report) { delete report; }
int qtri_report_match(const qtri_report* report) { return report && report->value.match ? 1 : 0; }
const char* qtri_report_id(const qtri_report* report) { return report ? report->value.instance.id.c_str() : nullptr; }
size_t qtri_report_param_count(const qtri_report* report) { return report ? report->value.instance.params.size() : 0; }

qtri_status qtri_report_param(const qtri_report* report, size_t k, const char** name, int64_t* value) {
  if (!report) return null_arg("report");
  const auto& params = report->value.instance.params;
  if (k >= params.size()) {
    g_last_error = "parameter index out of range";
    return QTRI_ERR_INVALID_ARGUMENT;
  }
  auto it = std::next(params.begin(), static_cast<std::ptrdiff_t>(k));
  if (name) *name = it->first.c_str();
  if (value) *value = it->second;
  return QTRI_OK;
}

int qtri_report_cutoff(const qtri_report* report, int64_t* halves) {
  if (!report || !report->value.instance.cutoff) return 0;
  if (halves) *halves = report->value.instance.cutoff->value;
  return 1;
}

int qtri_report_mismatch(const qtri_report* report, int64_t* exponent_halves, const char** lhs, const char** rhs) {
  if (!report || !report->value.first_mismatch) return 0;
  if (exponent_halves) *exponent_halves = report->value.first_mismatch->exp.value;
  if (lhs) *lhs = report->lhs.c_str();
  if (rhs) *rhs = report->rhs.c_str();
  return 1;
}

const char* qtri_report_error(const qtri_report* report) {
  return report && report->value.error ? report->value.error->c_str() : nullptr;
}

int64_t qtri_report_elapsed_ms(const qtri_report* report) { return report ? report->value.elapsed_ms : 0; }

qtri_status qtri_compute_side(const qtri_instance* instance, qtri_side side, qtri_series** out) {
  if (!instance) return null_arg("instance");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = wrap(qtri::compute_side(instance->value, side == QTRI_LHS ? qtri::Side::Lhs : qtri::Side::Rhs));
  });
}

qtri_status qtri_series_monomial(int64_t halves, const char* coeff, qtri_series** out) {
  if (!coeff) return null_arg("coeff");
  if (!out) return null_arg("out");
  return guarded([&] {
    qtri::Coeff c;
    if (c.set_str(coeff, 10) != 0) throw qtri::Error(qtri::ErrorKind::InvalidArgument, "coefficient is not a decimal integer");
    *out = wrap(qtri::LaurentSeries::monomial(qtri::HalfExp(halves), c));
  });
}

void qtri_series_free(qtri_series* series) { delete series; }
size_t qtri_series_term_count(const qtri_series* series) { return series ? series->value.size() : 0; }

qtri_status qtri_series_term(const qtri_series* series, size_t k, int64_t* exponent_halves, const char** coeff) {
  if (!series) return null_arg("series");
  if (k >= series->value.size()) {
    g_last_error = "term index out of range";
    return QTRI_ERR_INVALID_ARGUMENT;
  }
  if (exponent_halves) *exponent_halves = series->value.terms()[k].exp.value;
  if (coeff) *coeff = series->coeffs[k].c_str();
  return QTRI_OK;
}

int qtri_series_cutoff(const qtri_series* series, int64_t* halves) {
  if (!series || !series->value.cutoff()) return 0;
  if (halves) *halves = series->value.cutoff()->value;
  return 1;
}

const char* qtri_series_to_string(const qtri_series* series) { return series ? series->text.c_str() : nullptr; }

qtri_status qtri_partition_counts(qtri_variant variant, int64_t n, uint64_t* congruence, uint64_t* difference) {
  return guarded([&] {
    const auto v = variant == QTRI_FIRST ? qtri::CapparelliVariant::First : qtri::CapparelliVariant::Second;
    if (congruence) *congruence = qtri::congruence_side_count(n, v);
    if (difference) *difference = qtri::difference_side_count(n, v);
  });
}

qtri_status qtri_product_coefficients(qtri_variant variant, int64_t n_max, qtri_series** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    if (n_max < 0) throw qtri::Error(qtri::ErrorKind::InvalidArgument, "n_max must be non-negative");
    const auto v = variant == QTRI_FIRST ? qtri::CapparelliVariant::First : qtri::CapparelliVariant::Second;
    *out = wrap_dense(qtri::product_coefficients(v, n_max));
  });
}

qtri_status qtri_doublesum_coefficients(const char* which, int64_t n_max, qtri_series** out) {
  if (!which) return null_arg("which");
  if (!out) return null_arg("out");
  return guarded([&] {
    if (n_max < 0) throw qtri::Error(qtri::ErrorKind::InvalidArgument, "n_max must be non-negative");
    *out = wrap_dense(qtri::doublesum_coefficients(qtri::parse_double_sum(which), n_max));
  });
}

qtri_status qtri_verify_lemma31(int n, int t_cutoff, int64_t q_cutoff_halves, qtri_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    if (t_cutoff < 0) throw qtri::Error(qtri::ErrorKind::InvalidArgument, "t cutoff must be non-negative");
    *out = wrap(qtri::verify_lemma31(n, t_cutoff, qtri::HalfExp(q_cutoff_halves)));
  });
}

qtri_status qtri_verify_limit(qtri_limit target, int64_t window_halves, int64_t index, int64_t nu, qtri_report** out,
                              int64_t* stable_from) {
  if (!out) return null_arg("out");
  return guarded([&] {
    if (target < QTRI_LIMIT_FIRST_PAIR || target > QTRI_LIMIT_BINOM2) {
      throw qtri::Error(qtri::ErrorKind::InvalidArgument, "unknown limit target");
    }
    auto r = qtri::verify_limit_stabilization(static_cast<qtri::LimitTarget>(target), qtri::HalfExp(window_halves),
                                              index, nu);
    if (stable_from) *stable_from = r.stable_from.value_or(-1);
    *out = wrap(std::move(r.report));
  });
}

qtri_status qtri_alpha_new(qtri_alpha** out) {
  if (!out) return null_arg("out");
  *out = new qtri_alpha{};
  return QTRI_OK;
}

qtri_status qtri_alpha_quadratic(int64_t linear, int64_t lo, int64_t hi, qtri_alpha** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new qtri_alpha{qtri::quadratic_alpha(linear, lo, hi)}; });
}

qtri_status qtri_alpha_set(qtri_alpha* alpha, int64_t a, const qtri_series* value) {
  if (!alpha) return null_arg("alpha");
  if (!value) return null_arg("value");
  return guarded([&] { alpha->value.set(a, value->value); });
}

void qtri_alpha_free(qtri_alpha* alpha) { delete alpha; }

qtri_status qtri_apply_bailey(int kind, const qtri_alpha* alpha, int64_t L, int64_t step_halves, qtri_report** out) {
  if (!alpha) return null_arg("alpha");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = wrap(qtri::apply_bailey_transform(kind, alpha->value, L, qtri::HalfExp(step_halves)));
  });
}

size_t qtri_suite_family_count(void) { return qtri::suite_family_names().size(); }

const char* qtri_suite_family_name(size_t index) {
  const auto& names = qtri::suite_family_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

qtri_status qtri_suite_run(const char* family, unsigned jobs, qtri_suite_fn fn, void* user, int* all_ok) {
  return guarded([&] {
    std::vector<std::string> names;
    if (family) {
      names.emplace_back(family);
    } else {
      names = qtri::suite_family_names();
    }
    bool ok = true;
    for (const auto& name : names) {
      const auto f = qtri::run_suite_family(name, jobs == 0 ? qtri::default_jobs() : jobs);
      ok = ok && f.ok();
      if (fn) {
        std::string failures;
        for (const auto& c : f.checks) {
          if (!c.ok) failures += c.label + ": " + c.detail + "\n";
        }
        const auto line = qtri::suite_summary_line(f);
        fn(f.name.c_str(), f.ok() ? 1 : 0, f.passed(), f.checks.size(), f.elapsed_ms, line.c_str(), failures.c_str(),
           user);
      }
    }
    if (all_ok) *all_ok = ok ? 1 : 0;
  });
}

}  // extern "C"

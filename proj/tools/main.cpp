// Command-line front end: verify, sweep, coeffs, partitions, suite, list.
// Exit codes: 0 all matched, 1 at least one mismatch, 2 invalid invocation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtri/qtri.h"
#include "report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

// Usage problems discovered after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  std::string name;
  std::int64_t lo;
  std::int64_t hi;
};

struct Options {
  std::string id;
  std::vector<std::string> params;
  std::vector<std::string> ranges;
  std::optional<std::int64_t> cutoff_halves;
  std::optional<std::int64_t> cutoff_q;
  std::string format;  // empty: the command's default
  std::string output;
  unsigned jobs = 0;
  bool no_timing = false;
  // coeffs
  std::string side = "both";
  // partitions
  std::string variant = "both";
  std::int64_t nmax = 40;
  bool compare = false;
  // suite
  std::string family;
};

std::int64_t parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid integer '" + text + "' in " + what);
  }
}

std::pair<std::string, std::string> split_eq(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError(std::string(flag) + " expects name=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::map<std::string, std::int64_t> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::int64_t> out;
  for (const auto& item : items) {
    auto [k, v] = split_eq(item, "--param");
    if (!out.emplace(k, parse_int(v, "--param " + k)).second) throw UsageError("parameter '" + k + "' given twice");
  }
  return out;
}

std::vector<Range> parse_ranges(const std::vector<std::string>& items) {
  std::vector<Range> out;
  for (const auto& item : items) {
    auto [k, v] = split_eq(item, "--range");
    const auto dots = v.find("..");
    Range r{k, 0, 0};
    if (dots == std::string::npos) {
      r.lo = r.hi = parse_int(v, "--range " + k);
    } else {
      r.lo = parse_int(v.substr(0, dots), "--range " + k);
      r.hi = parse_int(v.substr(dots + 2), "--range " + k);
    }
    if (r.lo > r.hi) throw UsageError("empty range for '" + k + "'");
    out.push_back(r);
  }
  return out;
}

std::optional<std::int64_t> resolve_cutoff(const Options& o) {
  if (o.cutoff_halves && o.cutoff_q) throw UsageError("give either --cutoff or --cutoff-q, not both");
  if (o.cutoff_q) return 2 * *o.cutoff_q;
  return o.cutoff_halves;
}

qtri_cli::Format resolve_format(const Options& o, const char* fallback = "json") {
  auto f = qtri_cli::parse_format(o.format.empty() ? fallback : o.format);
  if (!f) throw UsageError("unknown format '" + o.format + "'");
  return *f;
}

struct InstanceDeleter {
  void operator()(qtri_instance* p) const { qtri_instance_free(p); }
};
using InstancePtr = std::unique_ptr<qtri_instance, InstanceDeleter>;

struct SeriesDeleter {
  void operator()(qtri_series* p) const { qtri_series_free(p); }
};
using SeriesPtr = std::unique_ptr<qtri_series, SeriesDeleter>;

// Status failures at this level are caller mistakes (unknown id, schema).
void check(qtri_status s) {
  if (s != QTRI_OK) throw UsageError(qtri_last_error());
}

InstancePtr make_instance(const std::string& id, const std::map<std::string, std::int64_t>& params,
                          std::optional<std::int64_t> cutoff) {
  qtri_instance* raw = nullptr;
  check(qtri_instance_new(id.c_str(), &raw));
  InstancePtr inst(raw);
  for (const auto& [k, v] : params) check(qtri_instance_set_param(inst.get(), k.c_str(), v));
  if (cutoff) check(qtri_instance_set_cutoff(inst.get(), *cutoff));
  check(qtri_instance_validate(inst.get()));
  return inst;
}

// Output stream honouring --output.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int run_instances(const std::vector<InstancePtr>& instances, const Options& o) {
  const auto format = resolve_format(o);
  Sink sink(o.output);
  qtri_cli::ReportWriter writer(sink.get(), format, !o.no_timing);
  struct State {
    qtri_cli::ReportWriter* writer;
    bool all = true;
  } state{&writer};
  std::vector<const qtri_instance*> raw;
  for (const auto& i : instances) raw.push_back(i.get());
  auto on_report = [](size_t, const qtri_report* r, void* user) {
    auto* st = static_cast<State*>(user);
    const auto rec = qtri_cli::from_handle(r);
    st->all = st->all && rec.match;
    st->writer->write(rec);
  };
  check(qtri_verify_batch(raw.data(), raw.size(), o.jobs, on_report, &state));
  writer.finish();
  return state.all ? kExitOk : kExitMismatch;
}

int cmd_verify(const Options& o) {
  std::vector<InstancePtr> v;
  v.push_back(make_instance(o.id, parse_params(o.params), resolve_cutoff(o)));
  return run_instances(v, o);
}

int cmd_sweep(const Options& o) {
  if (o.ranges.empty()) throw UsageError("sweep needs at least one --range");
  const auto fixed = parse_params(o.params);
  const auto ranges = parse_ranges(o.ranges);
  for (const auto& r : ranges) {
    if (fixed.count(r.name)) throw UsageError("'" + r.name + "' is both fixed and swept");
  }
  const auto cutoff = resolve_cutoff(o);
  // Odometer over the ranges, first range outermost.
  std::vector<InstancePtr> v;
  std::vector<std::int64_t> at;
  for (const auto& r : ranges) at.push_back(r.lo);
  while (true) {
    auto params = fixed;
    for (std::size_t k = 0; k < ranges.size(); ++k) params[ranges[k].name] = at[k];
    v.push_back(make_instance(o.id, params, cutoff));
    std::size_t k = ranges.size();
    while (k > 0 && at[k - 1] == ranges[k - 1].hi) {
      at[k - 1] = ranges[k - 1].lo;
      --k;
    }
    if (k == 0) break;
    ++at[k - 1];
  }
  return run_instances(v, o);
}

std::vector<std::pair<std::int64_t, std::string>> series_terms(const qtri_series* s) {
  std::vector<std::pair<std::int64_t, std::string>> out;
  for (size_t k = 0; k < qtri_series_term_count(s); ++k) {
    int64_t e = 0;
    const char* c = nullptr;
    qtri_series_term(s, k, &e, &c);
    out.emplace_back(e, c);
  }
  return out;
}

int cmd_coeffs(const Options& o) {
  const auto format = resolve_format(o);
  auto inst = make_instance(o.id, parse_params(o.params), resolve_cutoff(o));
  std::vector<std::pair<std::string, qtri_side>> sides;
  if (o.side == "lhs" || o.side == "both") sides.emplace_back("lhs", QTRI_LHS);
  if (o.side == "rhs" || o.side == "both") sides.emplace_back("rhs", QTRI_RHS);
  if (sides.empty()) throw UsageError("--side must be lhs, rhs or both");
  Sink sink(o.output);
  auto& out = sink.get();
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["id"] = o.id;
  if (format == qtri_cli::Format::Csv) out << "side,exponent_halves,coefficient\n";
  for (const auto& [name, side] : sides) {
    qtri_series* raw = nullptr;
    if (qtri_compute_side(inst.get(), side, &raw) != QTRI_OK) {
      std::cerr << "error: " << qtri_last_error() << '\n';
      return kExitMismatch;
    }
    SeriesPtr s(raw);
    int64_t cutoff = 0;
    const bool truncated = qtri_series_cutoff(s.get(), &cutoff);
    const auto terms = series_terms(s.get());
    switch (format) {
      case qtri_cli::Format::Json: {
        auto& j = doc[name];
        j["cutoff_halves"] = truncated ? nlohmann::ordered_json(cutoff) : nullptr;
        j["terms"] = nlohmann::ordered_json::array();
        for (const auto& [e, c] : terms) j["terms"].push_back({{"exponent_halves", e}, {"coefficient", c}});
        break;
      }
      case qtri_cli::Format::Csv:
        for (const auto& [e, c] : terms) out << name << ',' << e << ',' << c << '\n';
        break;
      case qtri_cli::Format::Text:
        out << name << ": " << qtri_series_to_string(s.get()) << '\n';
        break;
    }
  }
  if (format == qtri_cli::Format::Json) out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_partitions(const Options& o) {
  const auto format = resolve_format(o, "text");
  if (o.nmax < 0) throw UsageError("--nmax must be non-negative");
  std::vector<std::pair<std::string, qtri_variant>> variants;
  if (o.variant == "first" || o.variant == "both") variants.emplace_back("first", QTRI_FIRST);
  if (o.variant == "second" || o.variant == "both") variants.emplace_back("second", QTRI_SECOND);
  if (variants.empty()) throw UsageError("--variant must be first, second or both");

  Sink sink(o.output);
  auto& out = sink.get();
  bool all = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (format == qtri_cli::Format::Csv) {
    out << "variant,n,congruence,difference" << (o.compare ? ",product,double_sum,equal" : "") << '\n';
  } else if (format == qtri_cli::Format::Text) {
    out << "variant   n  congruence  difference" << (o.compare ? "     product  double_sum" : "") << '\n';
  }
  for (const auto& [name, variant] : variants) {
    std::vector<std::string> product, dsum;
    if (o.compare) {
      qtri_series* p = nullptr;
      qtri_series* d = nullptr;
      check(qtri_product_coefficients(variant, o.nmax, &p));
      SeriesPtr pp(p);
      check(qtri_doublesum_coefficients(variant == QTRI_FIRST ? "kr1" : "cap2", o.nmax, &d));
      SeriesPtr dp(d);
      product.assign(static_cast<std::size_t>(o.nmax + 1), "0");
      dsum.assign(static_cast<std::size_t>(o.nmax + 1), "0");
      for (const auto& [e, c] : series_terms(p)) product[static_cast<std::size_t>(e / 2)] = c;
      for (const auto& [e, c] : series_terms(d)) dsum[static_cast<std::size_t>(e / 2)] = c;
    }
    for (std::int64_t n = 0; n <= o.nmax; ++n) {
      uint64_t cong = 0, diff = 0;
      check(qtri_partition_counts(variant, n, &cong, &diff));
      bool equal = cong == diff;
      const auto k = static_cast<std::size_t>(n);
      if (o.compare) equal = equal && product[k] == std::to_string(cong) && dsum[k] == std::to_string(cong);
      all = all && equal;
      switch (format) {
        case qtri_cli::Format::Json: {
          nlohmann::ordered_json row{{"variant", name}, {"n", n}, {"congruence", cong}, {"difference", diff}};
          if (o.compare) {
            row["product"] = product[k];
            row["double_sum"] = dsum[k];
          }
          row["equal"] = equal;
          rows.push_back(row);
          break;
        }
        case qtri_cli::Format::Csv:
          out << name << ',' << n << ',' << cong << ',' << diff;
          if (o.compare) out << ',' << product[k] << ',' << dsum[k] << ',' << (equal ? "true" : "false");
          out << '\n';
          break;
        case qtri_cli::Format::Text: {
          char line[128];
          std::snprintf(line, sizeof line, "%-7s %3lld  %10llu  %10llu", name.c_str(), static_cast<long long>(n),
                        static_cast<unsigned long long>(cong), static_cast<unsigned long long>(diff));
          out << line;
          if (o.compare) {
            std::snprintf(line, sizeof line, "  %10s  %10s", product[k].c_str(), dsum[k].c_str());
            out << line << (equal ? "" : "  <-- differs");
          }
          out << '\n';
          break;
        }
      }
    }
  }
  if (format == qtri_cli::Format::Json) out << rows.dump(2) << '\n';
  return all ? kExitOk : kExitMismatch;
}

int cmd_suite(const Options& o) {
  Sink sink(o.output);
  auto& out = sink.get();
  struct Ctx {
    std::ostream* out;
    bool timing;
  } ctx{&out, !o.no_timing};
  auto on_family = [](const char*, int, size_t, size_t, int64_t elapsed, const char* summary, const char* failures,
                      void* user) {
    auto* c = static_cast<Ctx*>(user);
    *c->out << summary;
    if (c->timing) *c->out << "  (" << elapsed << " ms)";
    *c->out << '\n' << failures;
    c->out->flush();
  };
  int all_ok = 0;
  const char* family = o.family.empty() ? nullptr : o.family.c_str();
  const auto status = qtri_suite_run(family, o.jobs, on_family, &ctx, &all_ok);
  if (status == QTRI_ERR_INVALID_ARGUMENT) throw UsageError(qtri_last_error());
  if (status != QTRI_OK) {
    std::cerr << "error: " << qtri_last_error() << '\n';
    return kExitMismatch;
  }
  out << (all_ok ? "suite: all families passed\n" : "suite: FAILURES\n");
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_list(const Options&) {
  static const char* kinds[] = {"polynomial", "series", "check"};
  for (size_t i = 0; i < qtri_catalog_size(); ++i) {
    std::cout << qtri_catalog_id(i) << "  [" << kinds[qtri_catalog_kind(i)] << "]";
    for (size_t k = 0; k < qtri_catalog_param_count(i); ++k) {
      const char* name = nullptr;
      int64_t lo = 0, hi = 0, def = 0;
      int has_default = 0;
      qtri_catalog_param(i, k, &name, &lo, &hi, &has_default, &def);
      std::cout << ' ' << name << "=" << lo << ".." << hi;
      if (has_default) std::cout << "(default " << def << ")";
    }
    std::cout << "\n    " << qtri_catalog_summary(i) << '\n';
  }
  return kExitOk;
}

void add_instance_flags(CLI::App* cmd, Options& o, bool ranges) {
  cmd->add_option("--id", o.id, "identity id (see `list`)")->required();
  cmd->add_option("--param", o.params, "fixed parameter name=value (repeatable)");
  if (ranges) cmd->add_option("--range", o.ranges, "swept parameter name=lo..hi (repeatable)");
  auto* c = cmd->add_option("--cutoff", o.cutoff_halves, "truncation cutoff in units of q^(1/2)");
  auto* cq = cmd->add_option("--cutoff-q", o.cutoff_q, "truncation cutoff in whole powers of q");
  c->excludes(cq);
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--output", o.output, "write to a file instead of stdout");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--jobs", o.jobs, "worker threads (default: QTRI_JOBS or hardware threads)");
  cmd->add_flag("--no-timing", o.no_timing, "report elapsed_ms as 0 for byte-identical output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of q-series and q-trinomial identities"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "verify one identity instance");
  add_instance_flags(verify, o, false);
  add_output_flags(verify, o);
  add_run_flags(verify, o);

  auto* sweep = app.add_subcommand("sweep", "verify a parameter grid");
  add_instance_flags(sweep, o, true);
  add_output_flags(sweep, o);
  add_run_flags(sweep, o);

  auto* coeffs = app.add_subcommand("coeffs", "print the coefficients of one or both sides");
  add_instance_flags(coeffs, o, false);
  add_output_flags(coeffs, o);
  coeffs->add_option("--side", o.side, "lhs, rhs or both")->check(CLI::IsMember({"lhs", "rhs", "both"}));

  auto* parts = app.add_subcommand("partitions", "Capparelli partition counts");
  parts->add_option("--variant", o.variant, "first, second or both")->check(CLI::IsMember({"first", "second", "both"}));
  parts->add_option("--nmax", o.nmax, "largest n");
  parts->add_flag("--compare", o.compare, "add product and double-sum coefficients and compare");
  add_output_flags(parts, o);

  auto* suite = app.add_subcommand("suite", "run the full acceptance battery");
  suite->add_option("--family", o.family, "run a single family");
  suite->add_option("--output", o.output, "write to a file instead of stdout");
  add_run_flags(suite, o);

  auto* list = app.add_subcommand("list", "list registered identity ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    if (verify->parsed()) return cmd_verify(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (coeffs->parsed()) return cmd_coeffs(o);
    if (parts->parsed()) return cmd_partitions(o);
    if (suite->parsed()) return cmd_suite(o);
    if (list->parsed()) return cmd_list(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}

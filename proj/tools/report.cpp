#include "report.hpp"

#include <sstream>

#include "json.hpp"
#include "qtri/qtri.h"

namespace qtri_cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string params_text(const Record& r, char sep) {
  std::string out;
  for (const auto& [k, v] : r.params) {
    if (!out.empty()) out += sep;
    out += k + "=" + std::to_string(v);
  }
  return out;
}

}  // namespace

Record from_handle(const qtri_report* report) {
  Record r;
  r.id = qtri_report_id(report);
  for (size_t k = 0; k < qtri_report_param_count(report); ++k) {
    const char* name = nullptr;
    int64_t value = 0;
    qtri_report_param(report, k, &name, &value);
    r.params.emplace_back(name, value);
  }
  int64_t cutoff = 0;
  if (qtri_report_cutoff(report, &cutoff)) r.cutoff_halves = cutoff;
  r.match = qtri_report_match(report) != 0;
  int64_t exp = 0;
  const char* lhs = nullptr;
  const char* rhs = nullptr;
  if (qtri_report_mismatch(report, &exp, &lhs, &rhs)) r.first_mismatch = Mismatch{exp, lhs, rhs};
  r.elapsed_ms = qtri_report_elapsed_ms(report);
  if (const char* e = qtri_report_error(report)) r.error = e;
  return r;
}

ReportWriter::ReportWriter(std::ostream& out, Format format, bool timing)
    : out_(out), format_(format), timing_(timing) {
  if (format_ == Format::Csv) {
    out_ << "id,params,cutoff_halves,match,mismatch_exponent_halves,mismatch_lhs,mismatch_rhs,elapsed_ms,error\n";
  }
}

void ReportWriter::write(const Record& r) {
  const std::int64_t elapsed = timing_ ? r.elapsed_ms : 0;
  switch (format_) {
    case Format::Json: {
      nlohmann::ordered_json j;
      j["id"] = r.id;
      j["params"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : r.params) j["params"][k] = v;
      j["cutoff_halves"] = r.cutoff_halves ? nlohmann::ordered_json(*r.cutoff_halves) : nullptr;
      j["match"] = r.match;
      if (r.first_mismatch) {
        j["first_mismatch"] = {{"exponent_halves", r.first_mismatch->exponent_halves},
                               {"lhs", r.first_mismatch->lhs},
                               {"rhs", r.first_mismatch->rhs}};
      } else {
        j["first_mismatch"] = nullptr;
      }
      j["elapsed_ms"] = elapsed;
      if (r.error) j["error"] = *r.error;
      out_ << (count_ == 0 ? "[\n  " : ",\n  ") << j.dump();
      break;
    }
    case Format::Csv:
      out_ << csv_field(r.id) << ',' << csv_field(params_text(r, ';')) << ','
           << (r.cutoff_halves ? std::to_string(*r.cutoff_halves) : "") << ',' << (r.match ? "true" : "false") << ',';
      if (r.first_mismatch) {
        out_ << r.first_mismatch->exponent_halves << ',' << r.first_mismatch->lhs << ',' << r.first_mismatch->rhs;
      } else {
        out_ << ",,";
      }
      out_ << ',' << elapsed << ',' << csv_field(r.error.value_or("")) << '\n';
      break;
    case Format::Text: {
      out_ << (r.match ? "MATCH    " : "MISMATCH ") << r.id;
      const auto p = params_text(r, ' ');
      if (!p.empty()) out_ << ' ' << p;
      if (r.cutoff_halves) out_ << " cutoff=" << *r.cutoff_halves << 'h';
      if (r.first_mismatch) {
        out_ << "  first difference at exponent " << r.first_mismatch->exponent_halves << "h: lhs "
             << r.first_mismatch->lhs << ", rhs " << r.first_mismatch->rhs;
      }
      if (r.error) out_ << "  error: " << *r.error;
      if (timing_) out_ << "  (" << elapsed << " ms)";
      out_ << '\n';
      break;
    }
  }
  ++count_;
  out_.flush();
}

void ReportWriter::finish() {
  if (finished_) return;
  finished_ = true;
  if (format_ == Format::Json) out_ << (count_ == 0 ? "[]\n" : "\n]\n");
  out_.flush();
}

std::string emit_report(const std::vector<Record>& records, Format format, bool timing) {
  std::ostringstream out;
  ReportWriter w(out, format, timing);
  for (const auto& r : records) w.write(r);
  w.finish();
  return out.str();
}

std::optional<Format> parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  return std::nullopt;
}

}  // namespace qtri_cli

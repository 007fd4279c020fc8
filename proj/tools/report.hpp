#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

struct qtri_report;

namespace qtri_cli {

enum class Format { Json, Csv, Text };

struct Mismatch {
  std::int64_t exponent_halves = 0;
  std::string lhs;
  std::string rhs;
};

/// Plain copy of a verification report, detached from the C handle.
struct Record {
  std::string id;
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::optional<std::int64_t> cutoff_halves;
  bool match = false;
  std::optional<Mismatch> first_mismatch;
  std::int64_t elapsed_ms = 0;
  std::optional<std::string> error;
};

Record from_handle(const qtri_report* report);

/// Streams records one at a time. The output is complete after finish().
class ReportWriter {
 public:
  ReportWriter(std::ostream& out, Format format, bool timing = true);
  void write(const Record& record);
  void finish();

 private:
  std::ostream& out_;
  Format format_;
  bool timing_;
  std::size_t count_ = 0;
  bool finished_ = false;
};

/// Serializes a complete list; convenience over ReportWriter.
std::string emit_report(const std::vector<Record>& records, Format format, bool timing = true);

std::optional<Format> parse_format(const std::string& name);

}  // namespace qtri_cli

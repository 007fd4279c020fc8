#include "doctest.h"
#include "report.hpp"

using qtri_cli::Format;
using qtri_cli::Record;

namespace {

Record sample(bool match) {
  Record r;
  r.id = "first_pair";
  r.params = {{"L", 3}};
  r.match = match;
  r.elapsed_ms = 12;
  if (!match) r.first_mismatch = qtri_cli::Mismatch{10, "123456789012345678901234567890", "-4"};
  return r;
}

}  // namespace

TEST_CASE("empty reports") {
  CHECK(qtri_cli::emit_report({}, Format::Json) == "[]\n");
  CHECK(qtri_cli::emit_report({}, Format::Csv) ==
        "id,params,cutoff_halves,match,mismatch_exponent_halves,mismatch_lhs,mismatch_rhs,elapsed_ms,error\n");
  CHECK(qtri_cli::emit_report({}, Format::Text).empty());
}

TEST_CASE("json field order and mismatch payload") {
  auto ok = qtri_cli::emit_report({sample(true)}, Format::Json);
  CHECK(ok ==
        "[\n  {\"id\":\"first_pair\",\"params\":{\"L\":3},\"cutoff_halves\":null,\"match\":true,"
        "\"first_mismatch\":null,\"elapsed_ms\":12}\n]\n");
  auto bad = sample(false);
  bad.cutoff_halves = 40;
  auto text = qtri_cli::emit_report({bad}, Format::Json);
  CHECK(text.find("\"cutoff_halves\":40") != std::string::npos);
  CHECK(text.find("\"first_mismatch\":{\"exponent_halves\":10,\"lhs\":\"123456789012345678901234567890\","
                  "\"rhs\":\"-4\"}") != std::string::npos);
}

TEST_CASE("csv rows") {
  auto csv = qtri_cli::emit_report({sample(true), sample(false)}, Format::Csv, false);
  CHECK(csv.find("first_pair,L=3,,true,,,,0,\n") != std::string::npos);
  CHECK(csv.find("first_pair,L=3,,false,10,123456789012345678901234567890,-4,0,\n") != std::string::npos);
}

TEST_CASE("output is deterministic without timing") {
  auto a = sample(true), b = sample(true);
  b.elapsed_ms = 999;
  CHECK(qtri_cli::emit_report({a}, Format::Json, false) == qtri_cli::emit_report({b}, Format::Json, false));
}

TEST_CASE("errors are carried") {
  auto r = sample(false);
  r.first_mismatch.reset();
  r.error = "exact_divide: non-zero remainder";
  auto j = qtri_cli::emit_report({r}, Format::Json);
  CHECK(j.find("\"error\":\"exact_divide: non-zero remainder\"") != std::string::npos);
  CHECK(qtri_cli::parse_format("xml") == std::nullopt);
}

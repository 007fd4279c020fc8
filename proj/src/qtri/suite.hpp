#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qtri {

struct SuiteCheck {
  std::string label;
  bool ok = false;
  std::string detail;  // mismatch or error text; empty on success
};

struct SuiteFamily {
  std::string name;
  std::string title;
  std::vector<SuiteCheck> checks;
  std::int64_t elapsed_ms = 0;

  bool ok() const;
  std::size_t passed() const;
};

/// Family names of the battery in run order.
const std::vector<std::string>& suite_family_names();

/// Runs one family; throws InvalidArgument for an unknown name.
SuiteFamily run_suite_family(const std::string& name, unsigned jobs);

/// "PASS pairs  39/39  ..." style summary line.
std::string suite_summary_line(const SuiteFamily& family);

/// Row L of the q = 1 trinomial triangle, a = -L..L, from round trinomials
/// with the given b.
std::vector<std::int64_t> pascal_row(std::int64_t L, std::int64_t b);

}  // namespace qtri

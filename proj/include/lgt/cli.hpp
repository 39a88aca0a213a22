#pragma once

// Scenario runner and randomized property suites behind the `lgt` tool.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace lgt {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string status = "pass";  // pass | fail | invalid
  nlohmann::json witness;
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = {});
  // Sets status from the checks unless the report is already invalid.
  void finish();
  nlohmann::json to_json() const;
  int exit_code() const;  // 0 pass, 1 fail, 2 invalid
};

// Scenario object: {"ring": spec, "task": name, "params": {...}, "seed": n}.
Report run_scenario(const nlohmann::json& scenario);
// Reads and runs a scenario file; malformed JSON yields an invalid report.
Report run_scenario_file(const std::string& path);

struct SuiteOptions {
  std::uint64_t seed = 1;
  int max_size = 0;   // caps matrix size / word length when positive
  int cases = 0;      // 0 selects the suite default
  bool verbose = false;
};

std::vector<std::string> suite_names();
// Throws Error(UnknownSuite).
Report run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace lgt

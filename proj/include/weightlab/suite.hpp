#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/verify.hpp"

namespace weightlab {

std::vector<std::string> suite_names();
// Configs run by a named suite (smoke, theorem1, theorem2, weak, goodlambda, pointwise, full).
std::vector<CheckConfig> suite_configs(const std::string& name);

struct RunOptions {
  std::string out_root;                 // empty: no files written
  std::optional<std::uint64_t> seed;    // overrides every test_set.seed
  unsigned threads = 0;                 // 0 keeps the current setting
  std::string label = "custom";         // suite name or config path, recorded in the manifest
  std::function<void(const CheckReport&, double seconds)> on_report;
};

struct RunResult {
  std::vector<CheckReport> reports;
  std::string run_id;
  std::string run_dir;
  std::string csv;   // header + all rows, exactly as written to results.csv
  bool all_pass = true;
  double seconds = 0.0;
};

// Runs the configs in order. Reports are written as each check finishes, so a
// check that throws leaves the earlier reports (and a manifest recording the
// error) on disk before the exception propagates.
RunResult run_configs(const std::vector<CheckConfig>& configs, const RunOptions& options);

}  // namespace weightlab

#pragma once

#include "eulat/config.hpp"

#include <string>
#include <vector>

namespace eulat {

enum class RunStatus {
  ok = 0,
  check_failure = 1,
  config_error = 2,
  runtime_error = 3
};

struct CheckLine {
  bool pass = true;
  std::string text;
};

struct RunReport {
  RunStatus status = RunStatus::ok;
  std::vector<CheckLine> checks;
  std::vector<std::string> artifacts;  // files written, relative to out_dir

  void merge(const RunReport& other);
  void check(bool pass, std::string text);
};

bool is_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Throws ConfigError for names not in preset_names().  "multi-window" and
/// "multi_window" are the same preset.
ScenarioConfig preset_config(const std::string& name);

/// Where the time profile turns on: T for the one-sided bump, the first
/// window start otherwise.
double anchor_time(const BumpSpec& spec);

/// {0, T/2, T, T+1/2, T+1, T+2} for the one-sided bump; for windows, each
/// gap midpoint and window midpoint plus one point past the last window.
std::vector<double> default_sample_times(const BumpSpec& spec);

/// Time the endpoint and scaling measurements read the solution: T+1 for
/// the one-sided bump (where it equals 1/e), first window midpoint otherwise.
double measurement_time(const BumpSpec& spec);

// Pipeline stages.  Each writes its artifacts under config.out_dir and
// returns the check lines it evaluated; exceptions propagate.
RunReport run_build(const ScenarioConfig& config, int threads = 1);
RunReport run_verify(const ScenarioConfig& config, int threads = 1);
RunReport run_analyze(const ScenarioConfig& config, int threads = 1);
RunReport run_oracle(const ScenarioConfig& config, int threads = 1);
RunReport run_export(const ScenarioConfig& config, int threads = 1);

/// Derivative table (n, t, f^(n)(t)) for n = 0..max_n at each listed time.
std::string bump_table_csv(const BumpSpec& spec, const std::vector<double>& times,
                           int max_n);

/// build -> verify -> analyze -> oracle -> export; a "complex2d" scenario
/// routes to the 2D pipeline instead.  Status is check_failure iff any
/// check line failed.
RunReport run_scenario(const ScenarioConfig& config, int threads = 1);

}  // namespace eulat

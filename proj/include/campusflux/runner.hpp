#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "campusflux/ecosystem.hpp"
#include "campusflux/ssa.hpp"
#include "campusflux/timeseries.hpp"

namespace cflux {

// Effective settings for one command run. Loaded from JSON and/or flags;
// unknown config keys are rejected so typos cannot silently fall back to
// defaults.
struct RunConfig {
  std::string input;     // device-count CSV: timestamp,building,count
  std::string profiles;  // building profiles CSV: building,name,group,rooms,beds
  std::string layout;    // campus layout JSON
  std::string out = "out";

  std::int64_t step = 600;
  int window = 0;    // 0 selects default_window(n, step)
  std::string groups;  // grouping spec, e.g. "trend=1;daily=2,3;weekly=4,5;noise=rest"
  GapFill fill = GapFill::LinearInterpolate;

  std::string method = "both";  // forecast methods: R, V, or both
  int horizon = 0;              // forecast steps; 0 selects one week of samples
  std::optional<std::int64_t> split;  // holdout split; default leaves `horizon` test samples
  bool clamp = false;                 // floor forecasts at zero

  double theta = kDormThresholdDefault;
  double shock_threshold = kShockThresholdDefault;
  std::optional<std::int64_t> baseline_week;  // shock baseline week start
  std::optional<std::int64_t> target_week;    // shock target week start

  std::vector<std::int64_t> times;  // map frame times; empty selects 4 spread over the span
  int components = 16;              // eigen triples exported with full vectors
  std::uint64_t seed = 1;
  int jobs = 0;  // worker threads; 0 selects hardware concurrency
};

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

// Grouping spec grammar: semicolon-separated groups, each "label=items" or
// bare "items"; items are comma-separated indices or "a-b" ranges; the last
// group may use "rest" for all indices not claimed elsewhere.
Grouping parse_grouping(const std::string& spec, int d);

// Runs fn(0..n-1) on a bounded worker pool; rethrows the first failure.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

// Command bodies shared by the CLI and the test harness. Each validates its
// config, writes results under config.out, and throws on failure
// (std::invalid_argument = usage, data_error = bad input, numeric_error =
// numerical failure).
void cmd_decompose(const RunConfig& config);
void cmd_forecast(const RunConfig& config);
void cmd_report(const RunConfig& config);
void cmd_map(const RunConfig& config);
void cmd_demo(const RunConfig& config);

}  // namespace cflux

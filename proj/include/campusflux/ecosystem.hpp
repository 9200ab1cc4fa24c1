#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "campusflux/ssa.hpp"
#include "campusflux/timeseries.hpp"

namespace cflux {

// Pointwise average of normalized dorm series with population standard
// deviation per timestamp. std lives outside TimeSeries because it may be
// identically zero.
struct MeanDormSeries {
  TimeSeries mean;
  std::vector<double> std_dev;
  std::vector<std::string> member_ids;
};

struct DensityStats {
  std::string building_id;
  double max_dpp = 0;
  double min_dpp = 0;
  double diff_dpp = 0;
};

// Band for |deviation| relative to the per-timestamp sigma; Exact marks
// sigma == 0 timestamps where the ratio is undefined.
enum class Band { Exact, Sigma1, Sigma2, Sigma3, Beyond };

std::string to_string(Band band);

struct DeviationTrack {
  std::string building_id;
  std::int64_t start = 0;
  std::int64_t step = 0;
  std::vector<double> deviation;
  std::vector<Band> bands;
};

struct BuildingSignature {
  std::string building_id;
  double et1_contribution = 0;
  double daily_contribution = 0;
  double weekly_contribution = 0;
  std::vector<std::pair<int, double>> dominant_period_per_et;
};

struct Classification {
  BuildingSignature signature;
  bool dorm_like = false;
  double threshold = 0;
};

struct ShockReport {
  std::string building_id;
  std::int64_t baseline_start = 0;
  std::int64_t baseline_end = 0;
  std::int64_t target_start = 0;
  std::int64_t target_end = 0;
  std::vector<double> deviation;
  bool shock_detected = false;
  std::optional<std::int64_t> shock_onset;
};

// Max/min/diff of a normalized series over [window_start, window_end]
// (timestamps inclusive); diff is always recomputed as max − min.
DensityStats density_stats(const TimeSeries& series, std::int64_t window_start,
                           std::int64_t window_end);

MeanDormSeries mean_dorm(const std::vector<TimeSeries>& dorms);

DeviationTrack deviation_track(const TimeSeries& dorm, const MeanDormSeries& mean);

// Dominant oscillation period of a component in hours, estimated from
// mean-centered zero crossings; 0 when fewer than two crossings exist.
double dominant_period_hours(const std::vector<double>& component, std::int64_t step);

constexpr double kDormThresholdDefault = 0.85;

// Labels a building dorm-like iff the first eigen triple carries at least
// `theta` of the total squared singular-value mass.
Classification classify_building(const std::string& building_id, const Decomposition& dec,
                                 const Grouping& grouping, std::int64_t step,
                                 double theta = kDormThresholdDefault);

constexpr double kShockThresholdDefault = 0.5;

// Compares the target week against a baseline week aligned by weekday and
// time of day; fires when the trailing 24 h mean of the target drops below
// threshold times the baseline's. Week starts are inclusive; ends exclusive.
ShockReport detect_shock(const TimeSeries& series, std::int64_t baseline_start,
                         std::int64_t target_start, double threshold = kShockThresholdDefault);

}  // namespace cflux

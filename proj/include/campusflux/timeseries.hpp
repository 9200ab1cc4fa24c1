#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "campusflux/time.hpp"

namespace cflux {

/// Uniformly sampled device-count series for one building. Sample k sits at
/// start + k * step. Values are non-negative; construction validates the
/// invariants (length >= 2, at least one nonzero value, step > 0).
struct TimeSeries {
  std::string building_id;
  std::int64_t start = 0;  // UTC seconds
  std::int64_t step = 0;   // seconds between samples
  std::vector<double> values;

  TimeSeries() = default;
  TimeSeries(std::string id, std::int64_t start_, std::int64_t step_,
             std::vector<double> values_);

  int size() const { return static_cast<int>(values.size()); }
  std::int64_t time_at(int k) const { return start + k * step; }
  std::int64_t end() const { return time_at(size() - 1); }
  /// Index of the sample at timestamp t; -1 if t is off the grid.
  int index_of(std::int64_t t) const;

  /// Throws std::invalid_argument if any invariant is broken.
  void validate() const;
};

/// Static building metadata. beds == 0 marks a non-residential building;
/// devices-per-person normalization then refuses it.
struct BuildingProfile {
  std::string building_id;
  std::string name;
  std::string students_group;
  int rooms = 0;
  int beds = 0;
};

/// One row of the raw access-point count feed.
struct IngestRecord {
  std::int64_t timestamp = 0;
  std::string building_id;
  double device_count = 0;
};

/// Timestamped samples for one building before resampling; spacing may be
/// irregular and the series may be arbitrarily short.
struct RawSeries {
  std::string building_id;
  std::vector<std::int64_t> times;
  std::vector<double> values;

  int size() const { return static_cast<int>(times.size()); }
};

enum class GapFill { LinearInterpolate, HoldLast, Zero };

/// Gaps longer than this are still filled but get reported, since a long
/// outage filled silently would look like a real shock downstream.
constexpr std::int64_t kLongGapSeconds = 24 * 3600;

struct ResampleReport {
  struct Gap {
    std::int64_t start, end;
  };
  std::vector<Gap> long_gaps;
};

/// Average samples onto the uniform grid start..last with the given step,
/// filling empty buckets per policy. Bucket k covers [start + k*step,
/// start + (k+1)*step). The first and last buckets are never empty, so every
/// gap has known values on both sides.
TimeSeries resample(const RawSeries& raw, std::int64_t step, GapFill fill,
                    ResampleReport* report = nullptr);
TimeSeries resample(const TimeSeries& series, std::int64_t step, GapFill fill,
                    ResampleReport* report = nullptr);

/// Divide every sample by the profile's bed count.
TimeSeries devices_per_person(const TimeSeries& series, const BuildingProfile& profile);

}  // namespace cflux

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "campusflux/timeseries.hpp"

namespace cflux {

/// splitmix64; output sequence is fully specified, so generated data is
/// identical across platforms and standard-library versions.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal (Box-Muller).
  double normal();

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t fnv1a64(const std::string& s);

/// Multiplicative collapse toward a residual floor starting at `at`:
/// v(t) = floor + (v(t) - floor) * exp(-(t - at) / tau).
struct ShockSpec {
  std::int64_t at = 0;      // UTC seconds
  double tau_seconds = 0;   // decay time constant, > 0
  double floor = 0;         // devices that never disconnect, >= 0
};

struct BuildingSynthSpec {
  std::string building_id;
  std::string name;
  std::string students_group;
  int rooms = 0;
  int beds = 0;  // 0 marks a non-residential building

  double baseline = 0;
  double daily_amp = 0;
  double weekly_amp = 0;
  double noise = 0;              // stddev of additive gaussian noise
  double daily_peak_hour = 21;   // hour-of-day of the daily maximum
  double weekly_peak_day = 2;    // day-of-week of the weekly maximum (0 = Monday-like)
  std::optional<ShockSpec> shock;
};

struct CampusSynthSpec {
  std::int64_t start = 0;
  std::int64_t step = 600;
  std::int64_t duration = 0;  // seconds; samples run start .. start+duration-step
  std::vector<BuildingSynthSpec> buildings;
};

/// Noise-free generator value at absolute time t, before the shock transform.
double synth_clean_value(const BuildingSynthSpec& b, std::int64_t t);

/// Full closed form with an externally supplied noise draw; what the
/// generator evaluates per sample.
double synth_value(const BuildingSynthSpec& b, std::int64_t t, double noise_draw);

/// Deterministic synthetic campus: per-building series plus profiles.
/// Each building's noise stream is seeded from (seed, building_id), so output
/// does not depend on list order.
std::vector<std::pair<TimeSeries, BuildingProfile>> synth_campus(const CampusSynthSpec& spec,
                                                                 std::uint64_t seed);

}  // namespace cflux

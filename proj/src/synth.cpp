#include "campusflux/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace cflux {

double SplitMix64::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void validate_building(const BuildingSynthSpec& b) {
  auto bad = [&](const std::string& what) {
    throw std::invalid_argument("synth_campus: building '" + b.building_id + "': " + what);
  };
  if (b.building_id.empty()) bad("empty id");
  if (b.baseline < 0) bad("negative baseline");
  if (b.daily_amp < 0 || b.weekly_amp < 0) bad("negative amplitude");
  if (b.noise < 0) bad("negative noise level");
  if (b.shock) {
    if (b.shock->tau_seconds <= 0) bad("shock tau must be > 0");
    if (b.shock->floor < 0) bad("shock floor must be >= 0");
  }
}

}  // namespace

double synth_clean_value(const BuildingSynthSpec& b, std::int64_t t) {
  const double day_phase =
      kTwoPi * (static_cast<double>(((t % kSecondsPerDay) + kSecondsPerDay) % kSecondsPerDay) /
                    kSecondsPerDay -
                b.daily_peak_hour / 24.0);
  // The epoch fell on a Thursday; shift four days so weekly_peak_day 0 is a Monday.
  const std::int64_t into_week =
      (((t - 4 * kSecondsPerDay) % kSecondsPerWeek) + kSecondsPerWeek) % kSecondsPerWeek;
  const double week_phase =
      kTwoPi * (static_cast<double>(into_week) / kSecondsPerWeek - b.weekly_peak_day / 7.0);
  return b.baseline + b.daily_amp * std::cos(day_phase) + b.weekly_amp * std::cos(week_phase);
}

double synth_value(const BuildingSynthSpec& b, std::int64_t t, double noise_draw) {
  double v = synth_clean_value(b, t) + b.noise * noise_draw;
  if (v < 0) v = 0;
  if (b.shock && t >= b.shock->at) {
    const double decay =
        std::exp(-static_cast<double>(t - b.shock->at) / b.shock->tau_seconds);
    v = b.shock->floor + (v - b.shock->floor) * decay;
  }
  return v;
}

std::vector<std::pair<TimeSeries, BuildingProfile>> synth_campus(const CampusSynthSpec& spec,
                                                                 std::uint64_t seed) {
  if (spec.step <= 0) throw std::invalid_argument("synth_campus: step must be > 0");
  if (spec.duration < 2 * spec.step)
    throw std::invalid_argument("synth_campus: duration must cover at least 2 samples");
  if (spec.buildings.empty()) throw std::invalid_argument("synth_campus: no buildings");

  const int n = static_cast<int>(spec.duration / spec.step);
  std::vector<std::pair<TimeSeries, BuildingProfile>> out;
  out.reserve(spec.buildings.size());

  for (const auto& b : spec.buildings) {
    validate_building(b);
    SplitMix64 rng(seed ^ fnv1a64(b.building_id));
    std::vector<double> values(n);
    for (int k = 0; k < n; ++k) {
      const std::int64_t t = spec.start + k * spec.step;
      const double draw = b.noise > 0 ? rng.normal() : 0.0;
      values[k] = synth_value(b, t, draw);
    }
    BuildingProfile profile{b.building_id, b.name.empty() ? b.building_id : b.name,
                            b.students_group, b.rooms, b.beds};
    out.emplace_back(TimeSeries(b.building_id, spec.start, spec.step, std::move(values)),
                     std::move(profile));
  }
  return out;
}

}  // namespace cflux

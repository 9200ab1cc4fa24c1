#include "campusflux/ecosystem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "campusflux/errors.hpp"
#include "campusflux/time.hpp"

namespace cflux {

std::string to_string(Band band) {
  switch (band) {
    case Band::Exact: return "exact";
    case Band::Sigma1: return "1sigma";
    case Band::Sigma2: return "2sigma";
    case Band::Sigma3: return "3sigma";
    case Band::Beyond: return "beyond";
  }
  return "exact";
}

DensityStats density_stats(const TimeSeries& series, std::int64_t window_start,
                           std::int64_t window_end) {
  if (window_start > window_end)
    throw std::invalid_argument("density_stats: window start after end");
  if (window_start < series.start || window_end > series.time_at(series.size() - 1))
    throw std::invalid_argument("density_stats: window [" + format_iso8601(window_start) + ", " +
                                format_iso8601(window_end) + "] outside series span");

  DensityStats stats;
  stats.building_id = series.building_id;
  bool any = false;
  for (int i = 0; i < series.size(); ++i) {
    const std::int64_t t = series.time_at(i);
    if (t < window_start || t > window_end) continue;
    const double v = series.values[i];
    if (!any) {
      stats.max_dpp = stats.min_dpp = v;
      any = true;
    } else {
      stats.max_dpp = std::max(stats.max_dpp, v);
      stats.min_dpp = std::min(stats.min_dpp, v);
    }
  }
  if (!any) throw std::invalid_argument("density_stats: window contains no samples");
  stats.diff_dpp = stats.max_dpp - stats.min_dpp;
  return stats;
}

MeanDormSeries mean_dorm(const std::vector<TimeSeries>& dorms) {
  if (dorms.size() < 2)
    throw std::invalid_argument("mean_dorm: need at least 2 dorm series");
  const TimeSeries& first = dorms.front();
  for (const TimeSeries& s : dorms)
    if (s.start != first.start || s.step != first.step || s.size() != first.size())
      throw std::invalid_argument("mean_dorm: series grids differ; resample onto a common grid");

  const int n = first.size();
  const double m = static_cast<double>(dorms.size());
  std::vector<double> mean(n, 0.0), std_dev(n, 0.0);
  for (const TimeSeries& s : dorms)
    for (int i = 0; i < n; ++i) mean[i] += s.values[i];
  for (int i = 0; i < n; ++i) mean[i] /= m;
  for (const TimeSeries& s : dorms)
    for (int i = 0; i < n; ++i) {
      const double d = s.values[i] - mean[i];
      std_dev[i] += d * d;
    }
  for (int i = 0; i < n; ++i) std_dev[i] = std::sqrt(std_dev[i] / m);

  MeanDormSeries out;
  out.mean = TimeSeries("mean_dorm", first.start, first.step, std::move(mean));
  out.std_dev = std::move(std_dev);
  for (const TimeSeries& s : dorms) out.member_ids.push_back(s.building_id);
  return out;
}

DeviationTrack deviation_track(const TimeSeries& dorm, const MeanDormSeries& mean) {
  const TimeSeries& m = mean.mean;
  if (dorm.start != m.start || dorm.step != m.step || dorm.size() != m.size())
    throw std::invalid_argument("deviation_track: dorm grid differs from mean; resample first");

  DeviationTrack track;
  track.building_id = dorm.building_id;
  track.start = dorm.start;
  track.step = dorm.step;
  track.deviation.resize(dorm.size());
  track.bands.resize(dorm.size());
  for (int i = 0; i < dorm.size(); ++i) {
    const double d = dorm.values[i] - m.values[i];
    track.deviation[i] = d;
    const double sigma = mean.std_dev[i];
    if (sigma <= 0) {
      track.bands[i] = Band::Exact;
    } else {
      const double r = std::abs(d) / sigma;
      track.bands[i] = r <= 1.0   ? Band::Sigma1
                       : r <= 2.0 ? Band::Sigma2
                       : r <= 3.0 ? Band::Sigma3
                                  : Band::Beyond;
    }
  }
  return track;
}

double dominant_period_hours(const std::vector<double>& component, std::int64_t step) {
  const int n = static_cast<int>(component.size());
  if (n < 3 || step <= 0) return 0;

  double mean = 0;
  for (double v : component) mean += v;
  mean /= n;
  double lo = component[0], hi = component[0];
  for (double v : component) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Hysteresis keeps numerically-flat stretches from registering crossings.
  const double eps = 1e-6 * (hi - lo) / 2;

  int sign = 0;
  int crossings = 0;
  double first_t = 0, last_t = 0;
  double prev = component[0] - mean;
  for (int i = 1; i < n; ++i) {
    const double cur = component[i] - mean;
    if (sign == 0) {
      if (std::abs(cur) > eps) sign = cur > 0 ? 1 : -1;
      prev = cur;
      continue;
    }
    if ((sign > 0 && cur < -eps) || (sign < 0 && cur > eps)) {
      const double frac = prev == cur ? 0.0 : prev / (prev - cur);
      const double t = (i - 1 + frac) * static_cast<double>(step);
      if (crossings == 0) first_t = t;
      last_t = t;
      ++crossings;
      sign = -sign;
    }
    prev = cur;
  }
  if (crossings < 2) return 0;
  const double half_period = (last_t - first_t) / (crossings - 1);
  return 2.0 * half_period / 3600.0;
}

Classification classify_building(const std::string& building_id, const Decomposition& dec,
                                 const Grouping& grouping, std::int64_t step, double theta) {
  const int d = static_cast<int>(dec.triples.size());
  grouping.validate(d);
  if (theta <= 0 || theta > 1)
    throw std::invalid_argument("classify_building: threshold outside (0, 1]");

  const std::vector<double> contrib = relative_contribution(dec.triples);

  Classification out;
  out.signature.building_id = building_id;
  out.signature.et1_contribution = contrib[0];
  out.threshold = theta;

  std::set<int> period_ets;
  for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
    const bool labeled = g < grouping.labels.size();
    const std::string& label = labeled ? grouping.labels[g] : std::string();
    double sum = 0;
    for (int idx : grouping.groups[g]) sum += contrib[idx - 1];
    if (label == "daily") out.signature.daily_contribution = sum;
    if (label == "weekly") out.signature.weekly_contribution = sum;
    if (label != "noise")
      for (int idx : grouping.groups[g]) period_ets.insert(idx);
  }

  for (int idx : period_ets) {
    const std::vector<double> rec = reconstruct(dec.triples, {idx}, dec.length, false);
    out.signature.dominant_period_per_et.emplace_back(idx, dominant_period_hours(rec, step));
  }

  out.dorm_like = out.signature.et1_contribution >= theta;
  return out;
}

ShockReport detect_shock(const TimeSeries& series, std::int64_t baseline_start,
                         std::int64_t target_start, double threshold) {
  if (threshold <= 0 || threshold >= 1)
    throw std::invalid_argument("detect_shock: threshold outside (0, 1)");
  if (series.step <= 0 || kSecondsPerDay % series.step != 0)
    throw std::invalid_argument("detect_shock: step must divide 24 h for trailing means");
  const std::int64_t week = kSecondsPerWeek;
  for (std::int64_t ws : {baseline_start, target_start}) {
    if ((ws - series.start) % series.step != 0)
      throw std::invalid_argument("detect_shock: week start " + format_iso8601(ws) +
                                  " is off the sample grid");
    if (ws < series.start || ws + week - series.step > series.end())
      throw std::invalid_argument("detect_shock: week starting " + format_iso8601(ws) +
                                  " extends outside the series");
  }
  if ((target_start - baseline_start) % week != 0)
    throw std::invalid_argument(
        "detect_shock: weeks misaligned; starts must differ by whole weeks so "
        "weekday and time of day match");

  const int w = static_cast<int>(week / series.step);
  const int w24 = static_cast<int>(kSecondsPerDay / series.step);
  const int base_ofs = series.index_of(baseline_start);
  const int target_ofs = series.index_of(target_start);

  ShockReport report;
  report.building_id = series.building_id;
  report.baseline_start = baseline_start;
  report.baseline_end = baseline_start + week;
  report.target_start = target_start;
  report.target_end = target_start + week;
  report.deviation.resize(w);
  for (int k = 0; k < w; ++k)
    report.deviation[k] = series.values[target_ofs + k] - series.values[base_ofs + k];

  // Trailing windows stay inside each week, so the first evaluable index is
  // w24 − 1; the trailing mean suppresses the daily cycle.
  double base_sum = 0, target_sum = 0;
  for (int k = 0; k < w; ++k) {
    base_sum += series.values[base_ofs + k];
    target_sum += series.values[target_ofs + k];
    if (k >= w24) {
      base_sum -= series.values[base_ofs + k - w24];
      target_sum -= series.values[target_ofs + k - w24];
    }
    if (k < w24 - 1) continue;
    if (target_sum / w24 < threshold * (base_sum / w24)) {
      report.shock_detected = true;
      report.shock_onset = target_start + static_cast<std::int64_t>(k) * series.step;
      break;
    }
  }
  return report;
}

}  // namespace cflux

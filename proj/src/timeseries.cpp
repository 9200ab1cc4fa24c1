#include "campusflux/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "campusflux/errors.hpp"

namespace cflux {

TimeSeries::TimeSeries(std::string id, std::int64_t start_, std::int64_t step_,
                       std::vector<double> values_)
    : building_id(std::move(id)), start(start_), step(step_), values(std::move(values_)) {
  validate();
}

int TimeSeries::index_of(std::int64_t t) const {
  if (step <= 0) return -1;
  if (t < start || (t - start) % step != 0) return -1;
  const std::int64_t k = (t - start) / step;
  if (k >= size()) return -1;
  return static_cast<int>(k);
}

void TimeSeries::validate() const {
  if (step <= 0) throw std::invalid_argument("TimeSeries: step must be > 0");
  if (values.size() < 2)
    throw std::invalid_argument("TimeSeries: need at least 2 samples");
  bool any_nonzero = false;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0)
      throw std::invalid_argument("TimeSeries: values must be finite and >= 0");
    if (v != 0) any_nonzero = true;
  }
  if (!any_nonzero)
    throw std::invalid_argument("TimeSeries: at least one value must be nonzero");
}

namespace {

RawSeries sorted_raw(const RawSeries& raw) {
  std::vector<int> order(raw.times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return raw.times[a] < raw.times[b]; });
  RawSeries out;
  out.building_id = raw.building_id;
  out.times.reserve(raw.times.size());
  out.values.reserve(raw.values.size());
  for (int i : order) {
    out.times.push_back(raw.times[i]);
    out.values.push_back(raw.values[i]);
  }
  return out;
}

}  // namespace

TimeSeries resample(const RawSeries& raw, std::int64_t step, GapFill fill,
                    ResampleReport* report) {
  if (step <= 0) throw std::invalid_argument("resample: step must be > 0");
  if (raw.size() < 2)
    throw std::invalid_argument("resample: series needs at least 2 samples");
  if (raw.times.size() != raw.values.size())
    throw std::invalid_argument("resample: times/values length mismatch");

  const RawSeries s = sorted_raw(raw);
  const std::int64_t first = s.times.front();
  const std::int64_t last = s.times.back();
  const int n = static_cast<int>((last - first) / step) + 1;

  std::vector<double> sums(n, 0.0);
  std::vector<int> counts(n, 0);
  for (int i = 0; i < s.size(); ++i) {
    int k = static_cast<int>((s.times[i] - first) / step);
    if (k >= n) k = n - 1;
    sums[k] += s.values[i];
    counts[k] += 1;
  }

  std::vector<double> out(n, 0.0);
  for (int k = 0; k < n; ++k)
    if (counts[k] > 0) out[k] = sums[k] / counts[k];

  // Both endpoints land in their own buckets, so every run of empty buckets
  // is interior.
  int k = 0;
  while (k < n) {
    if (counts[k] > 0) {
      ++k;
      continue;
    }
    int gap_begin = k;
    while (k < n && counts[k] == 0) ++k;
    const int gap_end = k;  // one past the last empty bucket
    const double left = out[gap_begin - 1];
    const double right = out[gap_end];
    for (int j = gap_begin; j < gap_end; ++j) {
      switch (fill) {
        case GapFill::LinearInterpolate: {
          const double t = static_cast<double>(j - (gap_begin - 1)) /
                           static_cast<double>(gap_end - (gap_begin - 1));
          out[j] = left + t * (right - left);
          break;
        }
        case GapFill::HoldLast:
          out[j] = left;
          break;
        case GapFill::Zero:
          out[j] = 0.0;
          break;
      }
    }
    if (report) {
      const std::int64_t gap_span = static_cast<std::int64_t>(gap_end - gap_begin + 1) * step;
      if (gap_span > kLongGapSeconds)
        report->long_gaps.push_back({first + (gap_begin - 1) * step, first + gap_end * step});
    }
  }

  return TimeSeries(s.building_id, first, step, std::move(out));
}

TimeSeries resample(const TimeSeries& series, std::int64_t step, GapFill fill,
                    ResampleReport* report) {
  RawSeries raw;
  raw.building_id = series.building_id;
  raw.times.reserve(series.values.size());
  raw.values = series.values;
  for (int k = 0; k < series.size(); ++k) raw.times.push_back(series.time_at(k));
  return resample(raw, step, fill, report);
}

TimeSeries devices_per_person(const TimeSeries& series, const BuildingProfile& profile) {
  if (profile.beds < 1)
    throw data_error("devices_per_person: building '" + series.building_id +
                     "' has no usable bed count");
  std::vector<double> out(series.values.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = series.values[i] / static_cast<double>(profile.beds);
  return TimeSeries(series.building_id, series.start, series.step, std::move(out));
}

}  // namespace cflux

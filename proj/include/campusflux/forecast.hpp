#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "campusflux/ssa.hpp"
#include "campusflux/timeseries.hpp"

namespace cflux {

enum class ForecastMethod { R, V };

std::string to_string(ForecastMethod method);

// Linear recurrence x̂_t = Σ_j a_j·x_{t−j} derived from a group's left
// singular vectors. coefficients[0] is a_1 (multiplies the most recent
// sample); length is window − 1.
struct LinearRecurrence {
  std::vector<double> coefficients;
  double nu_sq = 0;
  int window = 0;
};

struct ForecastResult {
  ForecastMethod method = ForecastMethod::R;
  int horizon = 0;
  std::vector<double> values;
  std::int64_t train_start = 0;
  std::int64_t train_end = 0;
  std::int64_t step = 0;
  std::vector<int> group;
};

// Verticality nu² = Σ π_i² must stay below 1 − 1e−9; a group whose u-vectors
// concentrate on the last coordinate admits no recurrence.
LinearRecurrence fit_recurrence(const std::vector<EigenTriple>& triples,
                                const std::vector<int>& group);

// Recurrent forecast: the tail is replaced by the group reconstruction
// (clamp off), then the recurrence rolls forward `horizon` steps. `clamp`
// floors emitted values at zero without altering the recurrence state.
ForecastResult r_forecast(const TimeSeries& series, int window, const std::vector<int>& group,
                          int horizon, bool clamp = false);

// Vector forecast: lagged vectors of the group matrix are extended by the
// projection operator P^(v), then the widened trajectory matrix is
// diagonal-averaged and the new samples read off.
ForecastResult v_forecast(const TimeSeries& series, int window, const std::vector<int>& group,
                          int horizon, bool clamp = false);

// Overloads reusing a decomposition of `series`, so several forecasts can
// share one SVD.
ForecastResult r_forecast(const TimeSeries& series, const Decomposition& dec,
                          const std::vector<int>& group, int horizon, bool clamp = false);
ForecastResult v_forecast(const TimeSeries& series, const Decomposition& dec,
                          const std::vector<int>& group, int horizon, bool clamp = false);

struct MethodErrors {
  std::string method;
  double rmse = 0;
  double mae = 0;
  double max_abs = 0;
};

struct HoldoutReport {
  std::int64_t train_start = 0;
  std::int64_t train_end = 0;
  std::int64_t test_start = 0;
  std::int64_t test_end = 0;
  int horizon = 0;
  std::vector<MethodErrors> methods;
};

// Trains on samples strictly before `split`, forecasts `horizon` steps, and
// scores each method against the held-out truth. Requires ≥ 2·window
// training samples and ≥ horizon test samples.
HoldoutReport evaluate_holdout(const TimeSeries& series, int window, const std::vector<int>& group,
                               std::int64_t split, int horizon,
                               const std::vector<ForecastMethod>& methods);

}  // namespace cflux

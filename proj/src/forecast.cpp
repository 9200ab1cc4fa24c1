#include "campusflux/forecast.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "campusflux/errors.hpp"

namespace cflux {

std::string to_string(ForecastMethod method) {
  return method == ForecastMethod::R ? "R" : "V";
}

LinearRecurrence fit_recurrence(const std::vector<EigenTriple>& triples,
                                const std::vector<int>& group) {
  if (triples.empty()) throw std::invalid_argument("fit_recurrence: no eigen triples");
  if (group.empty()) throw std::invalid_argument("fit_recurrence: empty group");
  const int d = static_cast<int>(triples.size());
  const int l = static_cast<int>(triples.front().u.size());
  if (l < 2) throw std::invalid_argument("fit_recurrence: window must be >= 2");

  double nu_sq = 0;
  for (int idx : group) {
    if (idx < 1 || idx > d)
      throw std::invalid_argument("fit_recurrence: group index " + std::to_string(idx) +
                                  " outside 1.." + std::to_string(d));
    const double pi = triples[idx - 1].u(l - 1);
    nu_sq += pi * pi;
  }
  if (nu_sq >= 1.0 - 1e-9)
    throw numeric_error("vertical group: verticality " + std::to_string(nu_sq) +
                        " leaves no recurrence (needs nu^2 < 1)");

  // R = (1/(1−nu²)) Σ π_i·u_i▽; its last entry multiplies the most recent
  // sample, so the stored a_1-first ordering is the reverse.
  Eigen::VectorXd r = Eigen::VectorXd::Zero(l - 1);
  for (int idx : group) {
    const Eigen::VectorXd& u = triples[idx - 1].u;
    r += u(l - 1) * u.head(l - 1);
  }
  r /= 1.0 - nu_sq;

  LinearRecurrence rec;
  rec.window = l;
  rec.nu_sq = nu_sq;
  rec.coefficients.resize(l - 1);
  for (int j = 0; j < l - 1; ++j) rec.coefficients[j] = r(l - 2 - j);
  return rec;
}

namespace {

void check_horizon(int horizon) {
  if (horizon < 1) throw std::invalid_argument("forecast horizon must be >= 1");
}

ForecastResult make_result(const TimeSeries& series, ForecastMethod method,
                           const std::vector<int>& group, int horizon,
                           std::vector<double> values, bool clamp) {
  if (clamp)
    for (double& v : values) v = std::max(v, 0.0);
  ForecastResult out;
  out.method = method;
  out.horizon = horizon;
  out.values = std::move(values);
  out.train_start = series.start;
  out.train_end = series.time_at(series.size() - 1);
  out.step = series.step;
  out.group = group;
  return out;
}

}  // namespace

ForecastResult r_forecast(const TimeSeries& series, int window, const std::vector<int>& group,
                          int horizon, bool clamp) {
  return r_forecast(series, decompose_series(series, window), group, horizon, clamp);
}

ForecastResult v_forecast(const TimeSeries& series, int window, const std::vector<int>& group,
                          int horizon, bool clamp) {
  return v_forecast(series, decompose_series(series, window), group, horizon, clamp);
}

ForecastResult r_forecast(const TimeSeries& series, const Decomposition& dec,
                          const std::vector<int>& group, int horizon, bool clamp) {
  check_horizon(horizon);
  if (dec.length != series.size())
    throw std::invalid_argument("r_forecast: decomposition is not of this series");
  const int window = dec.window;
  const LinearRecurrence rec = fit_recurrence(dec.triples, group);

  std::vector<double> tail = reconstruct(dec.triples, group, series.size(), false);
  std::vector<double> out(horizon);
  for (int m = 0; m < horizon; ++m) {
    double next = 0;
    const int n = static_cast<int>(tail.size());
    for (int j = 1; j < window; ++j) next += rec.coefficients[j - 1] * tail[n - j];
    tail.push_back(next);
    out[m] = next;
  }
  return make_result(series, ForecastMethod::R, group, horizon, std::move(out), clamp);
}

ForecastResult v_forecast(const TimeSeries& series, const Decomposition& dec,
                          const std::vector<int>& group, int horizon, bool clamp) {
  check_horizon(horizon);
  if (dec.length != series.size())
    throw std::invalid_argument("v_forecast: decomposition is not of this series");
  const LinearRecurrence rec = fit_recurrence(dec.triples, group);

  const int l = dec.window;
  const int k = dec.lagged;
  const int n = series.size();

  Eigen::VectorXd r(l - 1);
  for (int j = 0; j < l - 1; ++j) r(j) = rec.coefficients[l - 2 - j];

  Eigen::MatrixXd u_trunc(l - 1, static_cast<int>(group.size()));
  Eigen::MatrixXd grouped = Eigen::MatrixXd::Zero(l, k);
  for (std::size_t g = 0; g < group.size(); ++g) {
    const EigenTriple& t = dec.triples[group[g] - 1];
    u_trunc.col(static_cast<int>(g)) = t.u.head(l - 1);
    grouped.noalias() += t.sigma * t.u * t.v.transpose();
  }
  const Eigen::MatrixXd pi = u_trunc * u_trunc.transpose() +
                             (1.0 - rec.nu_sq) * r * r.transpose();

  // Extend the lagged vectors far enough that diagonal averaging fully
  // determines `horizon` new samples.
  const int extra = horizon + l - 1;
  Eigen::MatrixXd extended(l, k + extra);
  extended.leftCols(k) = grouped;
  for (int j = k; j < k + extra; ++j) {
    const Eigen::VectorXd up = extended.col(j - 1).tail(l - 1);
    extended.col(j).head(l - 1) = pi * up;
    extended(l - 1, j) = r.dot(up);
  }

  const int ext_n = l + (k + extra) - 1;
  std::vector<double> full(ext_n);
  for (int s = 0; s < ext_n; ++s) {
    const int i0 = std::max(0, s - (k + extra) + 1);
    const int i1 = std::min(l - 1, s);
    double acc = 0;
    for (int i = i0; i <= i1; ++i) acc += extended(i, s - i);
    full[s] = acc / (i1 - i0 + 1);
  }

  std::vector<double> out(full.begin() + n, full.begin() + n + horizon);
  return make_result(series, ForecastMethod::V, group, horizon, std::move(out), clamp);
}

HoldoutReport evaluate_holdout(const TimeSeries& series, int window, const std::vector<int>& group,
                               std::int64_t split, int horizon,
                               const std::vector<ForecastMethod>& methods) {
  check_horizon(horizon);
  if (methods.empty()) throw std::invalid_argument("evaluate_holdout: no methods requested");

  int split_idx = 0;
  while (split_idx < series.size() && series.time_at(split_idx) < split) ++split_idx;
  const int train_n = split_idx;
  const int test_n = series.size() - split_idx;
  if (train_n < 2 * window)
    throw std::invalid_argument("evaluate_holdout: " + std::to_string(train_n) +
                                " training samples before split; need at least " +
                                std::to_string(2 * window));
  if (test_n < horizon)
    throw std::invalid_argument("evaluate_holdout: " + std::to_string(test_n) +
                                " test samples after split; need at least " +
                                std::to_string(horizon));

  TimeSeries train(series.building_id, series.start, series.step,
                   std::vector<double>(series.values.begin(), series.values.begin() + train_n));
  const Decomposition train_dec = decompose_series(train, window);

  HoldoutReport report;
  report.train_start = series.start;
  report.train_end = series.time_at(train_n - 1);
  report.test_start = series.time_at(train_n);
  report.test_end = series.time_at(train_n + horizon - 1);
  report.horizon = horizon;

  for (ForecastMethod method : methods) {
    const ForecastResult fc = method == ForecastMethod::R
                                  ? r_forecast(train, train_dec, group, horizon)
                                  : v_forecast(train, train_dec, group, horizon);
    MethodErrors err;
    err.method = to_string(method);
    double sq = 0, abs_sum = 0, max_abs = 0;
    for (int m = 0; m < horizon; ++m) {
      const double e = fc.values[m] - series.values[train_n + m];
      sq += e * e;
      abs_sum += std::abs(e);
      max_abs = std::max(max_abs, std::abs(e));
    }
    err.rmse = std::sqrt(sq / horizon);
    err.mae = abs_sum / horizon;
    err.max_abs = max_abs;
    report.methods.push_back(std::move(err));
  }
  std::sort(report.methods.begin(), report.methods.end(),
            [](const MethodErrors& a, const MethodErrors& b) { return a.method < b.method; });
  return report;
}

}  // namespace cflux

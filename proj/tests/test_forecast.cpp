#include <cmath>
#include <numeric>
#include <vector>

#include "campusflux/errors.hpp"
#include "campusflux/forecast.hpp"
#include "campusflux/ssa.hpp"
#include "campusflux/synth.hpp"
#include "doctest.h"

using namespace cflux;

namespace {

TimeSeries series_of(std::vector<double> values, std::int64_t step = 600) {
  return TimeSeries("b", 0, step, std::move(values));
}

std::vector<double> sine_series(int n, double period, double amp = 1.0, double base = 0.0) {
  std::vector<double> v(n);
  for (int t = 0; t < n; ++t) v[t] = base + amp * std::sin(2.0 * M_PI * t / period);
  return v;
}

}  // namespace

TEST_CASE("recurrence for a constant series is the previous sample") {
  const TimeSeries s = series_of({5, 5, 5, 5, 5, 5, 5, 5});
  const Decomposition dec = decompose_series(s, 2);
  const LinearRecurrence lr = fit_recurrence(dec.triples, {1});
  REQUIRE(lr.coefficients.size() == 1);
  // u = (1,1)/sqrt(2): pi = 1/sqrt(2), nu² = 1/2, a_1 = 1.
  CHECK(lr.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lr.nu_sq == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lr.window == 2);
}

TEST_CASE("recurrence coefficients are ordered most-recent first") {
  // x_t = 2·x_{t-1} − x_{t-2} generates any ramp; the fitted recurrence on a
  // ramp's rank-two group must reproduce the next values through that order.
  std::vector<double> ramp(20);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const TimeSeries s = series_of(ramp);
  const Decomposition dec = decompose_series(s, 3);
  const LinearRecurrence lr = fit_recurrence(dec.triples, {1, 2});
  REQUIRE(lr.coefficients.size() == 2);
  const double next = lr.coefficients[0] * 20.0 + lr.coefficients[1] * 19.0;
  CHECK(next == doctest::Approx(21.0).epsilon(1e-9));
}

TEST_CASE("vertical groups admit no recurrence") {
  // A u-vector concentrated on the last coordinate drives nu² to one.
  EigenTriple t;
  t.index = 1;
  t.sigma = 1.0;
  t.u = Eigen::VectorXd::Zero(3);
  t.u(2) = 1.0;
  t.v = Eigen::VectorXd::Ones(4) / 2.0;
  CHECK_THROWS_AS(fit_recurrence({t}, {1}), numeric_error);
}

TEST_CASE("recurrent forecast continues a ramp") {
  std::vector<double> ramp(20);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const TimeSeries s = series_of(ramp);
  const ForecastResult r = r_forecast(s, 3, {1, 2}, 3);
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(21.0).epsilon(1e-6));
  CHECK(r.values[1] == doctest::Approx(22.0).epsilon(1e-6));
  CHECK(r.values[2] == doctest::Approx(23.0).epsilon(1e-6));
  CHECK(r.method == ForecastMethod::R);
  CHECK(r.horizon == 3);
  CHECK(r.train_start == 0);
  CHECK(r.train_end == s.end());
  CHECK(r.step == 600);
}

TEST_CASE("vector forecast continues a ramp") {
  std::vector<double> ramp(20);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const TimeSeries s = series_of(ramp);
  const ForecastResult v = v_forecast(s, 3, {1, 2}, 3);
  REQUIRE(v.values.size() == 3);
  CHECK(v.values[0] == doctest::Approx(21.0).epsilon(1e-6));
  CHECK(v.values[1] == doctest::Approx(22.0).epsilon(1e-6));
  CHECK(v.values[2] == doctest::Approx(23.0).epsilon(1e-6));
  CHECK(v.method == ForecastMethod::V);
}

TEST_CASE("both methods hold a constant level") {
  const TimeSeries s = series_of(std::vector<double>(30, 5.0));
  const ForecastResult r = r_forecast(s, 5, {1}, 10);
  const ForecastResult v = v_forecast(s, 5, {1}, 10);
  for (int m = 0; m < 10; ++m) {
    CHECK(r.values[m] == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(v.values[m] == doctest::Approx(5.0).epsilon(1e-6));
  }
}

TEST_CASE("both methods track a sinusoid over two periods") {
  const int n = 240;
  const double period = 12.0;
  const TimeSeries s = series_of(sine_series(n, period, 1.0, 3.0));
  const int horizon = 24;
  const ForecastResult r = r_forecast(s, 24, {1, 2, 3}, horizon);
  const ForecastResult v = v_forecast(s, 24, {1, 2, 3}, horizon);
  for (int m = 0; m < horizon; ++m) {
    const double truth = 3.0 + std::sin(2.0 * M_PI * (n + m) / period);
    CHECK(std::abs(r.values[m] - truth) < 0.05);
    CHECK(std::abs(v.values[m] - truth) < 0.05);
  }
}

TEST_CASE("methods agree on a series the recurrence generates exactly") {
  // Noiseless sinusoid: the signal subspace is exact, so the vector method's
  // projection changes nothing and V equals R.
  const TimeSeries s = series_of(sine_series(144, 12.0, 2.0, 10.0));
  const ForecastResult r = r_forecast(s, 24, {1, 2, 3}, 36);
  const ForecastResult v = v_forecast(s, 24, {1, 2, 3}, 36);
  for (int m = 0; m < 36; ++m)
    CHECK(r.values[m] == doctest::Approx(v.values[m]).epsilon(1e-6));
}

TEST_CASE("forecasts are exact on geometric growth") {
  std::vector<double> x(30);
  for (int t = 0; t < 30; ++t) x[t] = 2.0 * std::pow(1.1, t);
  const TimeSeries s = series_of(x);
  const ForecastResult r = r_forecast(s, 5, {1}, 5);
  const ForecastResult v = v_forecast(s, 5, {1}, 5);
  for (int m = 0; m < 5; ++m) {
    const double truth = 2.0 * std::pow(1.1, 30 + m);
    CHECK(r.values[m] == doctest::Approx(truth).epsilon(1e-8));
    CHECK(v.values[m] == doctest::Approx(truth).epsilon(1e-8));
  }
}

TEST_CASE("forecast scales with the input") {
  const TimeSeries s = series_of(sine_series(100, 10.0, 2.0, 8.0));
  TimeSeries s3 = s;
  for (double& v : s3.values) v *= 3.0;
  const ForecastResult r1 = r_forecast(s, 20, {1, 2, 3}, 10);
  const ForecastResult r3 = r_forecast(s3, 20, {1, 2, 3}, 10);
  for (int m = 0; m < 10; ++m)
    CHECK(r3.values[m] == doctest::Approx(3.0 * r1.values[m]).epsilon(1e-8));
}

TEST_CASE("forecast ignores the absolute start time") {
  const TimeSeries a("a", 0, 600, sine_series(100, 10.0, 2.0, 8.0));
  const TimeSeries b("b", 86400, 600, sine_series(100, 10.0, 2.0, 8.0));
  const ForecastResult ra = r_forecast(a, 20, {1, 2, 3}, 8);
  const ForecastResult rb = r_forecast(b, 20, {1, 2, 3}, 8);
  for (int m = 0; m < 8; ++m) CHECK(ra.values[m] == doctest::Approx(rb.values[m]));
  CHECK(rb.train_start == 86400);
}

TEST_CASE("clamp floors emitted values without touching the recurrence") {
  // A decaying line crosses zero inside the horizon.
  std::vector<double> x(30);
  for (int t = 0; t < 30; ++t) x[t] = 10.0 - 0.4 * t;
  for (double& v : x) v = std::max(v, 0.0);
  // Unclamped values keep falling below zero; clamped ones stop at zero.
  const TimeSeries s = series_of(std::vector<double>(x));
  const ForecastResult raw = r_forecast(s, 6, {1, 2}, 20, false);
  const ForecastResult clamped = r_forecast(s, 6, {1, 2}, 20, true);
  bool any_negative = false;
  for (int m = 0; m < 20; ++m) {
    if (raw.values[m] < 0) any_negative = true;
    CHECK(clamped.values[m] == doctest::Approx(std::max(raw.values[m], 0.0)));
  }
  CHECK(any_negative);
}

TEST_CASE("decomposition-reusing overloads match the one-shot calls") {
  const TimeSeries s = series_of(sine_series(120, 12.0, 2.0, 6.0));
  const Decomposition dec = decompose_series(s, 24);
  const ForecastResult r1 = r_forecast(s, 24, {1, 2, 3}, 12);
  const ForecastResult r2 = r_forecast(s, dec, {1, 2, 3}, 12);
  const ForecastResult v1 = v_forecast(s, 24, {1, 2, 3}, 12);
  const ForecastResult v2 = v_forecast(s, dec, {1, 2, 3}, 12);
  for (int m = 0; m < 12; ++m) {
    CHECK(r1.values[m] == doctest::Approx(r2.values[m]).epsilon(1e-14));
    CHECK(v1.values[m] == doctest::Approx(v2.values[m]).epsilon(1e-14));
  }

  TimeSeries other = s;
  other.values.push_back(6.0);
  CHECK_THROWS_AS(r_forecast(other, dec, {1}, 4), std::invalid_argument);
}

TEST_CASE("forecast rejects a non-positive horizon") {
  const TimeSeries s = series_of(std::vector<double>(20, 3.0));
  CHECK_THROWS_AS(r_forecast(s, 4, {1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(v_forecast(s, 4, {1}, -2), std::invalid_argument);
}

TEST_CASE("holdout trains strictly before the split") {
  const int n = 120;
  const TimeSeries s = series_of(sine_series(n, 12.0, 1.0, 5.0));
  const std::int64_t split = s.time_at(100);
  const HoldoutReport rep =
      evaluate_holdout(s, 20, {1, 2, 3}, split, 12, {ForecastMethod::R, ForecastMethod::V});
  CHECK(rep.train_start == 0);
  CHECK(rep.train_end == s.time_at(99));
  CHECK(rep.test_start == s.time_at(100));
  CHECK(rep.test_end == s.time_at(111));
  CHECK(rep.horizon == 12);
  REQUIRE(rep.methods.size() == 2);
  CHECK(rep.methods[0].method == "R");
  CHECK(rep.methods[1].method == "V");
  // Noiseless sinusoid: the holdout is forecast almost exactly.
  for (const MethodErrors& e : rep.methods) {
    CHECK(e.rmse < 1e-3);
    CHECK(e.mae <= e.rmse + 1e-15);
    CHECK(e.max_abs >= e.rmse - 1e-15);
  }
}

TEST_CASE("holdout errors are zero when the forecast is exact") {
  const TimeSeries s = series_of(std::vector<double>(60, 7.0));
  const HoldoutReport rep =
      evaluate_holdout(s, 10, {1}, s.time_at(40), 10, {ForecastMethod::R});
  REQUIRE(rep.methods.size() == 1);
  CHECK(rep.methods[0].rmse == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.methods[0].mae == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.methods[0].max_abs == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("holdout method order is alphabetical regardless of request order") {
  const TimeSeries s = series_of(sine_series(120, 12.0, 1.0, 5.0));
  const HoldoutReport rep = evaluate_holdout(s, 20, {1, 2, 3}, s.time_at(100), 10,
                                             {ForecastMethod::V, ForecastMethod::R});
  REQUIRE(rep.methods.size() == 2);
  CHECK(rep.methods[0].method == "R");
  CHECK(rep.methods[1].method == "V");
}

TEST_CASE("holdout enforces minimum train and test sizes") {
  const TimeSeries s = series_of(std::vector<double>(50, 2.0));
  // 30 training samples < 2 * window when window = 20.
  CHECK_THROWS_WITH_AS(
      evaluate_holdout(s, 20, {1}, s.time_at(30), 10, {ForecastMethod::R}),
      doctest::Contains("need at least"), std::invalid_argument);
  // Only 10 test samples < horizon 20.
  CHECK_THROWS_WITH_AS(
      evaluate_holdout(s, 10, {1}, s.time_at(40), 20, {ForecastMethod::R}),
      doctest::Contains("need at least"), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_holdout(s, 10, {1}, s.time_at(40), 0, {ForecastMethod::R}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_holdout(s, 10, {1}, s.time_at(40), 5, {}),
                  std::invalid_argument);
}

TEST_CASE("holdout errors stay finite on noisy collapsing series") {
  CampusSynthSpec spec;
  spec.start = 1578268800;  // a Monday
  spec.step = 3600;
  spec.duration = 6 * kSecondsPerWeek;
  BuildingSynthSpec b;
  b.building_id = "shocked";
  b.baseline = 200;
  b.daily_amp = 40;
  b.weekly_amp = 10;
  b.noise = 6;
  ShockSpec shock;
  shock.at = spec.start + 4 * kSecondsPerWeek;
  shock.tau_seconds = 3 * 3600;
  shock.floor = 15;
  b.shock = shock;
  spec.buildings = {b};
  const auto campus = synth_campus(spec, 5);
  const TimeSeries& s = campus[0].first;

  const int horizon = 24;
  const HoldoutReport rep =
      evaluate_holdout(s, 168, {1, 2, 3, 4, 5}, s.time_at(s.size() - horizon), horizon,
                       {ForecastMethod::R, ForecastMethod::V});
  for (const MethodErrors& e : rep.methods) {
    CHECK(std::isfinite(e.rmse));
    CHECK(std::isfinite(e.mae));
    CHECK(std::isfinite(e.max_abs));
    CHECK(e.rmse > 0.0);
  }
}

TEST_CASE("adding components never lowers verticality") {
  const TimeSeries s = series_of(sine_series(100, 10.0, 3.0, 12.0));
  const Decomposition dec = decompose_series(s, 20);
  REQUIRE(dec.triples.size() >= 3);
  double prev = 0.0;
  for (int d = 1; d <= 3; ++d) {
    std::vector<int> group(d);
    std::iota(group.begin(), group.end(), 1);
    const LinearRecurrence lr = fit_recurrence(dec.triples, group);
    CHECK(lr.nu_sq >= prev - 1e-12);
    CHECK(lr.nu_sq < 1.0);
    prev = lr.nu_sq;
  }
}

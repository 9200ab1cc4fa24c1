#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "campusflux/csv.hpp"
#include "campusflux/errors.hpp"
#include "campusflux/synth.hpp"
#include "campusflux/time.hpp"
#include "campusflux/timeseries.hpp"
#include "doctest.h"

using namespace cflux;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("cflux_test_" + tag);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("iso8601 parses known epochs") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("2019-10-21T08:00:00Z") == 1571644800);
  CHECK(parse_iso8601("2020-02-29T12:00:00Z") == 1582977600);
  CHECK(parse_iso8601("1969-12-31T23:00:00Z") == -3600);
  CHECK(parse_iso8601("2020-01-06T00:00:00Z") == 1578268800);
}

TEST_CASE("iso8601 accepts space separator, missing Z, bare date") {
  CHECK(parse_iso8601("2019-10-21 08:00:00") == 1571644800);
  CHECK(parse_iso8601("2019-10-21T08:00:00") == 1571644800);
  CHECK(parse_iso8601("2000-01-01") == 946684800);
}

TEST_CASE("iso8601 formats canonically and round-trips") {
  CHECK(format_iso8601(0) == "1970-01-01T00:00:00Z");
  CHECK(format_iso8601(1571644800) == "2019-10-21T08:00:00Z");
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t t =
        static_cast<std::int64_t>(rng.uniform() * 4e9) - 2000000000;
    CHECK(parse_iso8601(format_iso8601(t)) == t);
  }
}

TEST_CASE("iso8601 rejects malformed input") {
  CHECK_THROWS_AS(parse_iso8601(""), data_error);
  CHECK_THROWS_AS(parse_iso8601("not a date"), data_error);
  CHECK_THROWS_AS(parse_iso8601("2020-13-01T00:00:00Z"), data_error);
  CHECK_THROWS_AS(parse_iso8601("2020-02-30T00:00:00Z"), data_error);
  CHECK_THROWS_AS(parse_iso8601("2020-01-01T25:00:00Z"), data_error);
}

TEST_CASE("TimeSeries validates its invariants") {
  CHECK_NOTHROW(TimeSeries("b", 0, 600, {1, 2, 3}));
  CHECK_THROWS_AS(TimeSeries("b", 0, 0, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries("b", 0, -600, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries("b", 0, 600, {1}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries("b", 0, 600, {1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries("b", 0, 600, {0, 0}), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(TimeSeries("b", 0, 600, {1, nan}), std::invalid_argument);
}

TEST_CASE("TimeSeries grid arithmetic") {
  TimeSeries s("b", 1000, 600, {1, 2, 3});
  CHECK(s.size() == 3);
  CHECK(s.time_at(0) == 1000);
  CHECK(s.time_at(2) == 2200);
  CHECK(s.end() == 2200);
  CHECK(s.index_of(1000) == 0);
  CHECK(s.index_of(1600) == 1);
  CHECK(s.index_of(2200) == 2);
  CHECK(s.index_of(999) == -1);
  CHECK(s.index_of(1300) == -1);
  CHECK(s.index_of(2800) == -1);
}

TEST_CASE("resample keeps already-uniform samples") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {0, 600, 1200, 1800};
  raw.values = {5, 6, 7, 8};
  const TimeSeries s = resample(raw, 600, GapFill::LinearInterpolate);
  CHECK(s.start == 0);
  CHECK(s.step == 600);
  REQUIRE(s.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(s.values[i] == doctest::Approx(5 + i));
}

TEST_CASE("resample averages samples that share a bucket") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {0, 100, 200, 600};
  raw.values = {1, 2, 6, 10};
  const TimeSeries s = resample(raw, 600, GapFill::Zero);
  REQUIRE(s.size() == 2);
  CHECK(s.values[0] == doctest::Approx(3.0));  // mean of 1, 2, 6
  CHECK(s.values[1] == doctest::Approx(10.0));
}

TEST_CASE("resample fills interior gaps per policy") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {0, 1800};
  raw.values = {2, 8};

  const TimeSeries lin = resample(raw, 600, GapFill::LinearInterpolate);
  REQUIRE(lin.size() == 4);
  CHECK(lin.values[1] == doctest::Approx(4.0));
  CHECK(lin.values[2] == doctest::Approx(6.0));

  const TimeSeries hold = resample(raw, 600, GapFill::HoldLast);
  CHECK(hold.values[1] == doctest::Approx(2.0));
  CHECK(hold.values[2] == doctest::Approx(2.0));

  const TimeSeries zero = resample(raw, 600, GapFill::Zero);
  CHECK(zero.values[1] == doctest::Approx(0.0));
  CHECK(zero.values[2] == doctest::Approx(0.0));
}

TEST_CASE("resample tolerates unsorted input") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {1200, 0, 600};
  raw.values = {7, 5, 6};
  const TimeSeries s = resample(raw, 600, GapFill::Zero);
  REQUIRE(s.size() == 3);
  CHECK(s.values[0] == doctest::Approx(5));
  CHECK(s.values[1] == doctest::Approx(6));
  CHECK(s.values[2] == doctest::Approx(7));
}

TEST_CASE("resample reports gaps longer than a day") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {0, 600, 600 + 2 * 86400, 1200 + 2 * 86400};
  raw.values = {1, 1, 1, 1};
  ResampleReport report;
  resample(raw, 600, GapFill::HoldLast, &report);
  REQUIRE(report.long_gaps.size() == 1);
  CHECK(report.long_gaps[0].start == 600);
  CHECK(report.long_gaps[0].end == 600 + 2 * 86400);

  ResampleReport none;
  RawSeries small;
  small.building_id = "b";
  small.times = {0, 3600};
  small.values = {1, 2};
  resample(small, 600, GapFill::HoldLast, &none);
  CHECK(none.long_gaps.empty());
}

TEST_CASE("resample is idempotent on its own output") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {0, 250, 3100, 4000, 9000};
  raw.values = {3, 5, 2, 8, 4};
  const TimeSeries once = resample(raw, 600, GapFill::LinearInterpolate);
  const TimeSeries twice = resample(once, 600, GapFill::LinearInterpolate);
  REQUIRE(once.size() == twice.size());
  CHECK(once.start == twice.start);
  for (int i = 0; i < once.size(); ++i)
    CHECK(once.values[i] == doctest::Approx(twice.values[i]).epsilon(1e-12));
}

TEST_CASE("resample onto a coarser grid averages whole buckets") {
  const TimeSeries fine("b", 0, 600, {1, 2, 3, 4, 5, 6});
  const TimeSeries coarse = resample(fine, 1800, GapFill::Zero);
  REQUIRE(coarse.size() == 2);
  CHECK(coarse.values[0] == doctest::Approx(2.0));  // mean of 1, 2, 3
  // The last sample (t = 3000) starts its own bucket.
  CHECK(coarse.values[1] == doctest::Approx(5.0));  // mean of 4, 5, 6
}

TEST_CASE("resample input validation") {
  RawSeries raw;
  raw.building_id = "b";
  raw.times = {0};
  raw.values = {1};
  CHECK_THROWS_AS(resample(raw, 600, GapFill::Zero), std::invalid_argument);
  raw.times = {0, 600};
  raw.values = {1, 2};
  CHECK_THROWS_AS(resample(raw, 0, GapFill::Zero), std::invalid_argument);
  raw.values = {1};
  CHECK_THROWS_AS(resample(raw, 600, GapFill::Zero), std::invalid_argument);
}

TEST_CASE("devices_per_person divides by bed count") {
  const TimeSeries s("wvn", 0, 600, {650, 440, 500});
  BuildingProfile p;
  p.building_id = "wvn";
  p.beds = 500;
  const TimeSeries d = devices_per_person(s, p);
  CHECK(d.values[0] == doctest::Approx(1.30));
  CHECK(d.values[1] == doctest::Approx(0.88));
  CHECK(d.values[2] == doctest::Approx(1.00));

  BuildingProfile none;
  none.building_id = "office";
  none.beds = 0;
  CHECK_THROWS_AS(devices_per_person(s, none), data_error);
}

TEST_CASE("ingest groups rows per building in time order") {
  const fs::path dir = temp_dir("ingest");
  const fs::path file = dir / "basic.csv";
  write_file(file,
             "timestamp,building,count\n"
             "2020-01-01T00:10:00Z,beta,4\n"
             "2020-01-01T00:00:00Z,alpha,1\n"
             "2020-01-01T00:10:00Z,alpha,2\n"
             "2020-01-01T00:00:00Z,beta,3\n");
  const auto series = ingest_csv(file.string());
  REQUIRE(series.size() == 2);
  CHECK(series[0].building_id == "alpha");
  CHECK(series[1].building_id == "beta");
  CHECK(series[0].times == std::vector<std::int64_t>{1577836800, 1577837400});
  CHECK(series[0].values == std::vector<double>{1, 2});
  CHECK(series[1].values == std::vector<double>{3, 4});
}

TEST_CASE("ingest sums duplicate (building, timestamp) rows") {
  const fs::path dir = temp_dir("ingest");
  const fs::path file = dir / "dup.csv";
  write_file(file,
             "timestamp,building,count\n"
             "2020-01-01T00:00:00Z,a,10\n"
             "2020-01-01T00:00:00Z,a,5\n"
             "2020-01-01T00:10:00Z,a,1\n");
  const auto series = ingest_csv(file.string());
  REQUIRE(series.size() == 1);
  CHECK(series[0].values == std::vector<double>{15, 1});
}

TEST_CASE("ingest honors a custom column schema") {
  const fs::path dir = temp_dir("ingest");
  const fs::path file = dir / "schema.csv";
  write_file(file,
             "when,devices,where\n"
             "2020-01-01T00:00:00Z,7,a\n"
             "2020-01-01T00:10:00Z,9,a\n");
  CsvSchema schema;
  schema.timestamp_col = "when";
  schema.building_col = "where";
  schema.count_col = "devices";
  const auto series = ingest_csv(file.string(), schema);
  REQUIRE(series.size() == 1);
  CHECK(series[0].values == std::vector<double>{7, 9});
}

TEST_CASE("ingest errors carry the file position") {
  const fs::path dir = temp_dir("ingest");
  CHECK_THROWS_AS(ingest_csv((dir / "missing.csv").string()), data_error);

  const fs::path empty = dir / "empty.csv";
  write_file(empty, "");
  CHECK_THROWS_AS(ingest_csv(empty.string()), data_error);

  const fs::path headeronly = dir / "headeronly.csv";
  write_file(headeronly, "timestamp,building,count\n");
  CHECK_THROWS_AS(ingest_csv(headeronly.string()), data_error);

  const fs::path badheader = dir / "badheader.csv";
  write_file(badheader, "time,building,count\n2020-01-01,a,1\n");
  CHECK_THROWS_WITH_AS(ingest_csv(badheader.string()),
                       doctest::Contains("missing column 'timestamp'"), data_error);

  const fs::path badcount = dir / "badcount.csv";
  write_file(badcount,
             "timestamp,building,count\n"
             "2020-01-01T00:00:00Z,a,1\n"
             "2020-01-01T00:10:00Z,a,many\n");
  CHECK_THROWS_WITH_AS(ingest_csv(badcount.string()), doctest::Contains(":3:"), data_error);

  const fs::path negcount = dir / "negcount.csv";
  write_file(negcount, "timestamp,building,count\n2020-01-01T00:00:00Z,a,-4\n");
  CHECK_THROWS_AS(ingest_csv(negcount.string()), data_error);
}

TEST_CASE("ingest round-trips through its writer") {
  const fs::path dir = temp_dir("ingest");
  RawSeries a;
  a.building_id = "a";
  a.times = {0, 600, 1200};
  a.values = {3, 0, 9};
  RawSeries b;
  b.building_id = "b";
  b.times = {0, 900};
  b.values = {2, 5};
  const fs::path file = dir / "roundtrip.csv";
  write_ingest_csv(file.string(), {a, b});
  const auto back = ingest_csv(file.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].times == a.times);
  CHECK(back[0].values == a.values);
  CHECK(back[1].times == b.times);
  CHECK(back[1].values == b.values);
}

TEST_CASE("series csv round-trips with six decimals") {
  const fs::path dir = temp_dir("seriescsv");
  const TimeSeries s("b", 1577836800, 600, {1.5, 2.25, 0.123456});
  const fs::path file = dir / "series.csv";
  write_series_csv(file.string(), s);

  std::ifstream in(file);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "timestamp,value");
  CHECK(first == "2020-01-01T00:00:00Z,1.500000");

  const TimeSeries back = read_series_csv(file.string(), "b");
  CHECK(back.start == s.start);
  CHECK(back.step == s.step);
  REQUIRE(back.size() == s.size());
  for (int i = 0; i < s.size(); ++i)
    CHECK(back.values[i] == doctest::Approx(s.values[i]).epsilon(1e-9));
}

TEST_CASE("series csv rejects a non-uniform grid") {
  const fs::path dir = temp_dir("seriescsv");
  const fs::path file = dir / "jagged.csv";
  write_file(file,
             "timestamp,value\n"
             "2020-01-01T00:00:00Z,1\n"
             "2020-01-01T00:10:00Z,2\n"
             "2020-01-01T00:25:00Z,3\n");
  CHECK_THROWS_WITH_AS(read_series_csv(file.string(), "b"),
                       doctest::Contains("non-uniform"), data_error);
}

TEST_CASE("profiles csv round-trips") {
  const fs::path dir = temp_dir("profiles");
  BuildingProfile dorm{"wvn", "Will Vill North", "residential", 120, 500};
  BuildingProfile venue{"cafe", "Campus Cafe", "service", 0, 0};
  const fs::path file = dir / "profiles.csv";
  write_profiles_csv(file.string(), {dorm, venue});
  const auto back = read_profiles_csv(file.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].building_id == "wvn");
  CHECK(back[0].name == "Will Vill North");
  CHECK(back[0].students_group == "residential");
  CHECK(back[0].rooms == 120);
  CHECK(back[0].beds == 500);
  CHECK(back[1].beds == 0);
}

TEST_CASE("profiles csv rejects fractional bed counts") {
  const fs::path dir = temp_dir("profiles");
  const fs::path file = dir / "frac.csv";
  write_file(file, "building,name,group,rooms,beds\nx,X,res,10,2.5\n");
  CHECK_THROWS_AS(read_profiles_csv(file.string()), data_error);
}

TEST_CASE("splitmix64 matches the reference sequence") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 16294208416658607535ULL);
  CHECK(rng.next() == 7960286522194355700ULL);
  CHECK(rng.next() == 487617019471545679ULL);
  SplitMix64 rng42(42);
  CHECK(rng42.next() == 13679457532755275413ULL);
  CHECK(rng42.next() == 2949826092126892291ULL);
}

TEST_CASE("splitmix64 uniform and normal draws behave statistically") {
  SplitMix64 rng(123);
  double sum = 0, sum2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12).epsilon(0.05));

  double nsum = 0, nsum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    nsum += z;
    nsum2 += z * z;
  }
  CHECK(nsum / n == doctest::Approx(0.0).epsilon(0.03));
  CHECK(std::abs(nsum / n) < 0.03);
  CHECK(nsum2 / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("fnv1a64 matches the reference constants") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 12638187200555641996ULL);
  CHECK(fnv1a64("dorm_a") == 4866728490169761013ULL);
}

TEST_CASE("synth clean value peaks at the configured hours") {
  BuildingSynthSpec b;
  b.baseline = 100;
  b.daily_amp = 30;
  b.weekly_amp = 0;
  b.daily_peak_hour = 21;
  // 2020-01-06 is a Monday; 21:00 that day is a daily maximum.
  const std::int64_t monday = 1578268800;
  const std::int64_t peak = monday + 21 * 3600;
  CHECK(synth_clean_value(b, peak) == doctest::Approx(130.0));
  CHECK(synth_clean_value(b, peak - 12 * 3600) == doctest::Approx(70.0));

  BuildingSynthSpec w;
  w.baseline = 50;
  w.weekly_amp = 10;
  w.weekly_peak_day = 2;
  const std::int64_t wednesday = monday + 2 * kSecondsPerDay;
  CHECK(synth_clean_value(w, wednesday) == doctest::Approx(60.0));
}

TEST_CASE("synth value clamps at zero before the shock transform") {
  BuildingSynthSpec b;
  b.baseline = 5;
  b.daily_amp = 20;
  // Trough value would be -15; the clamp floors it first.
  const std::int64_t trough = 1578268800 + 9 * 3600;  // 12h off the 21:00 peak
  CHECK(synth_value(b, trough, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("synth shock decays toward the floor") {
  BuildingSynthSpec b;
  b.baseline = 100;
  ShockSpec shock;
  shock.at = 1000;
  shock.tau_seconds = 3600;
  shock.floor = 7;
  b.shock = shock;
  CHECK(synth_value(b, 999, 0.0) == doctest::Approx(100.0));
  CHECK(synth_value(b, 1000, 0.0) == doctest::Approx(100.0));
  const double one_tau = synth_value(b, 1000 + 3600, 0.0);
  CHECK(one_tau == doctest::Approx(7 + 93 * std::exp(-1.0)));
  // Five time constants in, the value sits within 1% of the floor.
  const double five_tau = synth_value(b, 1000 + 5 * 3600, 0.0);
  CHECK(std::abs(five_tau - 7) / 93 < 0.01);
}

TEST_CASE("synth campus is deterministic and order independent") {
  CampusSynthSpec spec;
  spec.start = 1578268800;
  spec.step = 1800;
  spec.duration = 2 * kSecondsPerDay;
  BuildingSynthSpec a;
  a.building_id = "a";
  a.baseline = 50;
  a.daily_amp = 10;
  a.noise = 3;
  BuildingSynthSpec b;
  b.building_id = "b";
  b.baseline = 80;
  b.daily_amp = 20;
  b.noise = 5;
  spec.buildings = {a, b};

  const auto run1 = synth_campus(spec, 9);
  const auto run2 = synth_campus(spec, 9);
  REQUIRE(run1.size() == 2);
  CHECK(run1[0].first.values == run2[0].first.values);
  CHECK(run1[1].first.values == run2[1].first.values);

  CampusSynthSpec swapped = spec;
  swapped.buildings = {b, a};
  const auto run3 = synth_campus(swapped, 9);
  CHECK(run3[1].first.values == run1[0].first.values);
  CHECK(run3[0].first.values == run1[1].first.values);

  const auto other_seed = synth_campus(spec, 10);
  CHECK(other_seed[0].first.values != run1[0].first.values);

  const TimeSeries& s = run1[0].first;
  CHECK(s.start == spec.start);
  CHECK(s.step == spec.step);
  CHECK(s.size() == 96);  // two days at half-hour steps
  for (double v : s.values) CHECK(v >= 0.0);
}

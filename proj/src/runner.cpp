#include "campusflux/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "campusflux/csv.hpp"
#include "campusflux/errors.hpp"
#include "campusflux/forecast.hpp"
#include "campusflux/jsonio.hpp"
#include "campusflux/synth.hpp"
#include "campusflux/time.hpp"
#include "campusflux/weathermap.hpp"
#include "json.hpp"

namespace cflux {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* fill_name(GapFill fill) {
  switch (fill) {
    case GapFill::LinearInterpolate: return "linear";
    case GapFill::HoldLast: return "hold";
    case GapFill::Zero: return "zero";
  }
  return "linear";
}

GapFill fill_from_name(const std::string& name) {
  if (name == "linear") return GapFill::LinearInterpolate;
  if (name == "hold") return GapFill::HoldLast;
  if (name == "zero") return GapFill::Zero;
  throw std::invalid_argument("config: fill must be linear, hold, or zero (got '" + name + "')");
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  // Config problems are usage errors, not data errors: the config stands in
  // for command-line flags.
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument(path + ": config must be a JSON object");

  static const std::set<std::string> known = {
      "input",   "profiles", "layout",          "out",           "step",
      "window",  "groups",   "fill",            "method",        "horizon",
      "split",   "clamp",    "theta",           "shock_threshold", "baseline_week",
      "target_week", "times", "components",     "seed",          "jobs"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw std::invalid_argument(path + ": unknown config key '" + key + "'");

  RunConfig c;
  try {
    auto str = [&](const char* key, std::string& out) {
      if (j.contains(key) && !j[key].is_null()) out = j[key].get<std::string>();
    };
    str("input", c.input);
    str("profiles", c.profiles);
    str("layout", c.layout);
    str("out", c.out);
    str("groups", c.groups);
    str("method", c.method);
    if (j.contains("step")) c.step = j["step"].get<std::int64_t>();
    if (j.contains("window")) c.window = j["window"].get<int>();
    if (j.contains("fill")) c.fill = fill_from_name(j["fill"].get<std::string>());
    if (j.contains("horizon")) c.horizon = j["horizon"].get<int>();
    if (j.contains("split") && !j["split"].is_null())
      c.split = parse_iso8601(j["split"].get<std::string>());
    if (j.contains("clamp")) c.clamp = j["clamp"].get<bool>();
    if (j.contains("theta")) c.theta = j["theta"].get<double>();
    if (j.contains("shock_threshold")) c.shock_threshold = j["shock_threshold"].get<double>();
    if (j.contains("baseline_week") && !j["baseline_week"].is_null())
      c.baseline_week = parse_iso8601(j["baseline_week"].get<std::string>());
    if (j.contains("target_week") && !j["target_week"].is_null())
      c.target_week = parse_iso8601(j["target_week"].get<std::string>());
    if (j.contains("times"))
      for (const json& t : j["times"]) c.times.push_back(parse_iso8601(t.get<std::string>()));
    if (j.contains("components")) c.components = j["components"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return c;
}

void save_run_config(const RunConfig& c, const std::string& path) {
  json times = json::array();
  for (std::int64_t t : c.times) times.push_back(format_iso8601(t));
  const json j = {
      {"input", c.input},
      {"profiles", c.profiles},
      {"layout", c.layout},
      {"out", c.out},
      {"step", c.step},
      {"window", c.window},
      {"groups", c.groups},
      {"fill", fill_name(c.fill)},
      {"method", c.method},
      {"horizon", c.horizon},
      {"split", c.split ? json(format_iso8601(*c.split)) : json(nullptr)},
      {"clamp", c.clamp},
      {"theta", c.theta},
      {"shock_threshold", c.shock_threshold},
      {"baseline_week", c.baseline_week ? json(format_iso8601(*c.baseline_week)) : json(nullptr)},
      {"target_week", c.target_week ? json(format_iso8601(*c.target_week)) : json(nullptr)},
      {"times", times},
      {"components", c.components},
      {"seed", c.seed},
      {"jobs", c.jobs},
  };
  std::ofstream out(path);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

Grouping parse_grouping(const std::string& spec, int d) {
  if (spec.empty()) return default_grouping(d);

  Grouping g;
  std::set<int> claimed;
  int rest_slot = -1;
  std::size_t pos = 0;
  int ordinal = 0;
  while (pos <= spec.size()) {
    const std::size_t sep = std::min(spec.find(';', pos), spec.size());
    std::string part = spec.substr(pos, sep - pos);
    pos = sep + 1;
    if (part.empty()) {
      if (pos > spec.size()) break;
      throw std::invalid_argument("grouping spec: empty group");
    }
    ++ordinal;
    std::string label = "group" + std::to_string(ordinal);
    const std::size_t eq = part.find('=');
    if (eq != std::string::npos) {
      label = part.substr(0, eq);
      part = part.substr(eq + 1);
      if (label.empty()) throw std::invalid_argument("grouping spec: empty label");
    }
    if (part == "rest") {
      if (rest_slot >= 0) throw std::invalid_argument("grouping spec: 'rest' used twice");
      rest_slot = static_cast<int>(g.groups.size());
      g.groups.emplace_back();
      g.labels.push_back(label);
      continue;
    }
    std::vector<int> ids;
    std::size_t ipos = 0;
    while (ipos <= part.size()) {
      const std::size_t comma = std::min(part.find(',', ipos), part.size());
      const std::string item = part.substr(ipos, comma - ipos);
      ipos = comma + 1;
      if (item.empty())
        throw std::invalid_argument("grouping spec: empty index in '" + part + "'");
      try {
        const std::size_t dash = item.find('-');
        if (dash != std::string::npos && dash > 0) {
          const int lo = std::stoi(item.substr(0, dash));
          const int hi = std::stoi(item.substr(dash + 1));
          if (lo > hi)
            throw std::invalid_argument("grouping spec: empty range '" + item + "'");
          for (int v = lo; v <= hi; ++v) ids.push_back(v);
        } else {
          ids.push_back(std::stoi(item));
        }
      } catch (const std::logic_error&) {
        throw std::invalid_argument("grouping spec: cannot parse '" + item + "'");
      }
      if (ipos > part.size()) break;
    }
    for (int v : ids) {
      if (v < 1 || v > d)
        throw std::invalid_argument("grouping spec: index " + std::to_string(v) +
                                    " outside 1.." + std::to_string(d));
      if (!claimed.insert(v).second)
        throw std::invalid_argument("grouping spec: index " + std::to_string(v) +
                                    " claimed twice");
    }
    g.groups.push_back(std::move(ids));
    g.labels.push_back(label);
  }

  if (rest_slot >= 0) {
    if (rest_slot != static_cast<int>(g.groups.size()) - 1)
      throw std::invalid_argument("grouping spec: 'rest' must be the last group");
    for (int v = 1; v <= d; ++v)
      if (!claimed.count(v)) g.groups[rest_slot].push_back(v);
    if (g.groups[rest_slot].empty()) {
      g.groups.erase(g.groups.begin() + rest_slot);
      g.labels.erase(g.labels.begin() + rest_slot);
    }
  }
  g.validate(d);
  return g;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::vector<TimeSeries> load_series(const RunConfig& c) {
  if (c.input.empty()) throw std::invalid_argument("no input CSV given (--input)");
  if (c.step <= 0) throw std::invalid_argument("step must be positive");
  std::vector<TimeSeries> out;
  for (const RawSeries& raw : ingest_csv(c.input))
    out.push_back(resample(raw, c.step, c.fill));
  return out;
}

int pick_window(const RunConfig& c, const TimeSeries& s) {
  return c.window > 0 ? c.window : default_window(s.size(), s.step);
}

// Forecasts use the union of every non-noise group: the signal components.
std::vector<int> forecast_group(const Grouping& grouping) {
  std::vector<int> ids;
  for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
    if (g < grouping.labels.size() && grouping.labels[g] == "noise") continue;
    ids.insert(ids.end(), grouping.groups[g].begin(), grouping.groups[g].end());
  }
  if (ids.empty())
    for (const auto& grp : grouping.groups) ids.insert(ids.end(), grp.begin(), grp.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<ForecastMethod> parse_methods(const std::string& method) {
  if (method == "R") return {ForecastMethod::R};
  if (method == "V") return {ForecastMethod::V};
  if (method == "both") return {ForecastMethod::R, ForecastMethod::V};
  throw std::invalid_argument("method must be R, V, or both (got '" + method + "')");
}

void write_values_csv(const std::string& path, std::int64_t start, std::int64_t step,
                      const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  out << "timestamp,value\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", values[i]);
    out << format_iso8601(start + static_cast<std::int64_t>(i) * step) << "," << buf << "\n";
  }
  if (!out) throw data_error("write failed for '" + path + "'");
}

void prepare_out(const RunConfig& c, const std::string& sub) {
  fs::create_directories(fs::path(c.out) / sub);
  save_run_config(c, (fs::path(c.out) / "config.json").string());
}

}  // namespace

void cmd_decompose(const RunConfig& c) {
  const std::vector<TimeSeries> series = load_series(c);
  prepare_out(c, "decompose");
  const fs::path dir = fs::path(c.out) / "decompose";

  parallel_for(static_cast<int>(series.size()), c.jobs, [&](int i) {
    const TimeSeries& s = series[i];
    const Decomposition dec = decompose_series(s, pick_window(c, s));
    const Grouping grouping = parse_grouping(c.groups, static_cast<int>(dec.triples.size()));
    write_decomposition(s.building_id, dec, (dir / (s.building_id + ".json")).string(),
                        c.components);
    for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
      const std::string label =
          g < grouping.labels.size() ? grouping.labels[g] : "group" + std::to_string(g + 1);
      const std::vector<double> rec = reconstruct(dec.triples, grouping.groups[g], s.size(), false);
      write_values_csv((dir / (s.building_id + "_" + label + ".csv")).string(), s.start, s.step,
                       rec);
    }
  });
}

void cmd_forecast(const RunConfig& c) {
  const std::vector<TimeSeries> series = load_series(c);
  prepare_out(c, "forecast");
  const fs::path dir = fs::path(c.out) / "forecast";
  const std::vector<ForecastMethod> methods = parse_methods(c.method);

  parallel_for(static_cast<int>(series.size()), c.jobs, [&](int i) {
    const TimeSeries& s = series[i];
    const int window = pick_window(c, s);
    const int horizon =
        c.horizon > 0 ? c.horizon : static_cast<int>(kSecondsPerWeek / s.step);
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");

    const Decomposition dec = decompose_series(s, window);
    const Grouping grouping = parse_grouping(c.groups, static_cast<int>(dec.triples.size()));
    const std::vector<int> group = forecast_group(grouping);

    std::vector<ForecastResult> results;
    for (ForecastMethod m : methods)
      results.push_back(m == ForecastMethod::R ? r_forecast(s, dec, group, horizon, c.clamp)
                                               : v_forecast(s, dec, group, horizon, c.clamp));

    const std::string csv_path = (dir / (s.building_id + ".csv")).string();
    std::ofstream out(csv_path);
    if (!out) throw data_error("cannot open '" + csv_path + "' for writing");
    out << "timestamp,value,method\n";
    char buf[64];
    for (const ForecastResult& r : results)
      for (int m = 0; m < r.horizon; ++m) {
        std::snprintf(buf, sizeof buf, "%.6f", r.values[m]);
        out << format_iso8601(r.train_end + static_cast<std::int64_t>(m + 1) * r.step) << ","
            << buf << "," << to_string(r.method) << "\n";
      }
    out.close();

    const std::int64_t split = c.split ? *c.split : s.time_at(s.size() - horizon);
    const HoldoutReport report = evaluate_holdout(s, window, group, split, horizon, methods);
    write_holdout(s.building_id, report, (dir / (s.building_id + "_eval.json")).string());
  });
}

void cmd_report(const RunConfig& c) {
  const std::vector<TimeSeries> series = load_series(c);
  if (c.profiles.empty()) throw std::invalid_argument("report needs a profiles CSV (--profiles)");
  const std::vector<BuildingProfile> profiles = read_profiles_csv(c.profiles);
  prepare_out(c, "report");
  const fs::path dir = fs::path(c.out) / "report";

  std::map<std::string, const BuildingProfile*> by_id;
  for (const BuildingProfile& p : profiles) by_id[p.building_id] = &p;

  // Normalized dorm series drive the density table, the mean dorm, and the
  // deviation tracks; every building gets a signature and, when weeks are
  // configured, a shock report.
  std::vector<TimeSeries> dorms;
  for (const TimeSeries& s : series) {
    const auto it = by_id.find(s.building_id);
    if (it != by_id.end() && it->second->beds >= 1)
      dorms.push_back(devices_per_person(s, *it->second));
  }

  {
    const std::string path = (dir / "density_stats.csv").string();
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << "building,max,min,diff\n";
    char buf[160];
    for (const TimeSeries& d : dorms) {
      const DensityStats st = density_stats(d, d.start, d.end());
      std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f\n", st.building_id.c_str(), st.max_dpp,
                    st.min_dpp, st.diff_dpp);
      out << buf;
    }
  }

  if (dorms.size() >= 2) {
    const MeanDormSeries mean = mean_dorm(dorms);
    {
      const std::string path = (dir / "mean_dorm.csv").string();
      std::ofstream out(path);
      if (!out) throw data_error("cannot open '" + path + "' for writing");
      out << "timestamp,mean,std\n";
      char buf[96];
      for (int i = 0; i < mean.mean.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", mean.mean.values[i], mean.std_dev[i]);
        out << format_iso8601(mean.mean.time_at(i)) << "," << buf << "\n";
      }
    }
    for (const TimeSeries& d : dorms) {
      const DeviationTrack track = deviation_track(d, mean);
      const std::string path = (dir / ("deviation_" + d.building_id + ".csv")).string();
      std::ofstream out(path);
      if (!out) throw data_error("cannot open '" + path + "' for writing");
      out << "timestamp,deviation,band\n";
      char buf[64];
      for (std::size_t i = 0; i < track.deviation.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", track.deviation[i]);
        out << format_iso8601(track.start + static_cast<std::int64_t>(i) * track.step) << ","
            << buf << "," << to_string(track.bands[i]) << "\n";
      }
    }
  }

  std::vector<Classification> classifications(series.size());
  std::vector<ShockReport> shocks(series.size());
  const bool do_shock = c.baseline_week && c.target_week;
  parallel_for(static_cast<int>(series.size()), c.jobs, [&](int i) {
    const TimeSeries& s = series[i];
    const Decomposition dec = decompose_series(s, pick_window(c, s));
    const Grouping grouping = parse_grouping(c.groups, static_cast<int>(dec.triples.size()));
    classifications[i] = classify_building(s.building_id, dec, grouping, s.step, c.theta);
    write_classification(classifications[i],
                         (dir / ("signature_" + s.building_id + ".json")).string());
    if (do_shock) {
      shocks[i] = detect_shock(s, *c.baseline_week, *c.target_week, c.shock_threshold);
      write_shock(shocks[i], (dir / ("shock_" + s.building_id + ".json")).string());
    }
  });

  {
    const std::string path = (dir / "clusters.csv").string();
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << "building,label,et1_contribution\n";
    char buf[64];
    for (const Classification& cl : classifications) {
      std::snprintf(buf, sizeof buf, "%.6f", cl.signature.et1_contribution);
      out << cl.signature.building_id << "," << (cl.dorm_like ? "dorm-like" : "non-dorm-like")
          << "," << buf << "\n";
    }
  }
  if (do_shock) {
    const std::string path = (dir / "shocks.csv").string();
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    out << "building,shock_detected,shock_onset\n";
    for (const ShockReport& r : shocks)
      out << r.building_id << "," << (r.shock_detected ? "true" : "false") << ","
          << (r.shock_onset ? format_iso8601(*r.shock_onset) : "") << "\n";
  }
}

void cmd_map(const RunConfig& c) {
  if (c.layout.empty()) throw std::invalid_argument("map needs a layout JSON (--layout)");
  const CampusLayout layout = load_layout(c.layout);
  const std::vector<TimeSeries> series = load_series(c);
  prepare_out(c, "map");

  std::vector<std::int64_t> times = c.times;
  if (times.empty()) {
    // Four frames spread across the overlap of all series, snapped to the
    // first series' grid.
    std::int64_t lo = series.front().start, hi = series.front().end();
    for (const TimeSeries& s : series) {
      lo = std::max(lo, s.start);
      hi = std::min(hi, s.end());
    }
    const TimeSeries& ref = series.front();
    const std::int64_t k_lo = (lo - ref.start + ref.step - 1) / ref.step;
    const std::int64_t k_hi = (hi - ref.start) / ref.step;
    if (k_hi < k_lo) throw data_error("map: series do not overlap in time");
    for (int f = 0; f < 4; ++f)
      times.push_back(ref.start + (k_lo + (k_hi - k_lo) * f / 3) * ref.step);
    times.erase(std::unique(times.begin(), times.end()), times.end());
  }

  FrameStyle style;
  render_sequence(layout, series, times, style, c.seed, (fs::path(c.out) / "map").string());
}

namespace {

Polygon rect(double x, double y, double w, double h) {
  return {{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}};
}

}  // namespace

void cmd_demo(const RunConfig& c) {
  const fs::path input_dir = fs::path(c.out) / "input";
  fs::create_directories(input_dir);

  CampusSynthSpec spec;
  spec.start = parse_iso8601("2020-01-06T00:00:00Z");  // a Monday
  spec.step = 1800;
  spec.duration = 18 * kSecondsPerWeek;
  const std::int64_t shock_at = spec.start + 73 * kSecondsPerDay;

  struct DormPlan {
    const char* id;
    const char* name;
    int rooms, beds;
    double baseline, daily, weekly, noise;
    bool shocked;
  };
  const DormPlan dorm_plans[] = {
      {"dorm_a", "Alder Hall", 60, 120, 160, 30, 12, 4, true},
      {"dorm_b", "Birch Hall", 110, 210, 250, 45, 18, 6, true},
      {"dorm_c", "Cedar Hall", 170, 340, 390, 60, 24, 8, true},
      {"dorm_d", "Dogwood Hall", 50, 140, 170, 28, 10, 4, true},
      {"dorm_e", "Elm Hall", 210, 420, 470, 70, 26, 9, true},
      {"dorm_f", "Fir Hall", 100, 200, 240, 40, 15, 5, false},
      {"dorm_g", "Ginkgo Hall", 260, 510, 560, 80, 30, 10, false},
      {"dorm_h", "Hawthorn Hall", 150, 300, 350, 55, 20, 7, false},
  };
  struct VenuePlan {
    const char* id;
    const char* name;
    double baseline, daily, weekly, noise;
    bool shocked;
  };
  const VenuePlan venue_plans[] = {
      {"cafe", "Campus Cafe", 12, 150, 25, 5, false},
      {"library", "Main Library", 20, 220, 40, 6, false},
      {"gym", "Recreation Center", 10, 120, 30, 4, true},
      {"lectures", "Lecture Block", 15, 260, 35, 6, false},
  };

  for (const DormPlan& p : dorm_plans) {
    BuildingSynthSpec b;
    b.building_id = p.id;
    b.name = p.name;
    b.students_group = "residential";
    b.rooms = p.rooms;
    b.beds = p.beds;
    b.baseline = p.baseline;
    b.daily_amp = p.daily;
    b.weekly_amp = p.weekly;
    b.noise = p.noise;
    if (p.shocked) b.shock = ShockSpec{shock_at, 3 * 3600.0, 0.07 * p.baseline};
    spec.buildings.push_back(std::move(b));
  }
  for (const VenuePlan& p : venue_plans) {
    BuildingSynthSpec b;
    b.building_id = p.id;
    b.name = p.name;
    b.students_group = "service";
    b.baseline = p.baseline;
    b.daily_amp = p.daily;
    b.weekly_amp = p.weekly;
    b.noise = p.noise;
    b.daily_peak_hour = 13;  // venues peak around lunch, dorms at night
    if (p.shocked) b.shock = ShockSpec{shock_at, 3 * 3600.0, 2.0};
    spec.buildings.push_back(std::move(b));
  }

  const auto campus = synth_campus(spec, c.seed);

  std::vector<RawSeries> raws;
  std::vector<BuildingProfile> profiles;
  for (const auto& [s, profile] : campus) {
    RawSeries raw;
    raw.building_id = s.building_id;
    for (int i = 0; i < s.size(); ++i) {
      raw.times.push_back(s.time_at(i));
      raw.values.push_back(s.values[i]);
    }
    raws.push_back(std::move(raw));
    profiles.push_back(profile);
  }
  write_ingest_csv((input_dir / "series.csv").string(), raws);
  write_profiles_csv((input_dir / "profiles.csv").string(), profiles);

  CampusLayout layout;
  layout.width = 960;
  layout.height = 640;
  // 4 columns by 3 rows of footprints with margins; dorms fill the first
  // two rows, venues the last.
  for (std::size_t i = 0; i < spec.buildings.size(); ++i) {
    const double col = static_cast<double>(i % 4);
    const double row = static_cast<double>(i / 4);
    Building b;
    b.id = spec.buildings[i].building_id;
    b.footprint = rect(60 + col * 220, 60 + row * 200, 150, 110);
    layout.buildings.push_back(std::move(b));
  }
  save_layout(layout, (input_dir / "layout.json").string());

  RunConfig run = c;
  run.input = (input_dir / "series.csv").string();
  run.profiles = (input_dir / "profiles.csv").string();
  run.layout = (input_dir / "layout.json").string();
  run.step = spec.step;
  run.baseline_week = spec.start + 56 * kSecondsPerDay;
  run.target_week = spec.start + 70 * kSecondsPerDay;
  // Two evening frames before the shock and two after show the drain.
  run.times = {spec.start + 70 * kSecondsPerDay + 21 * 3600,
               spec.start + 72 * kSecondsPerDay + 21 * 3600,
               spec.start + 74 * kSecondsPerDay + 21 * 3600,
               spec.start + 76 * kSecondsPerDay + 21 * 3600};

  cmd_decompose(run);
  cmd_forecast(run);
  cmd_report(run);
  cmd_map(run);
}

}  // namespace cflux

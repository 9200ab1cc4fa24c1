#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "campusflux/errors.hpp"
#include "campusflux/runner.hpp"
#include "campusflux/time.hpp"

namespace {

// Option values land here; only options the user actually set (flag or
// CAMPUSFLUX_* variable) override the config file, which overrides defaults.
struct Flags {
  std::string config;
  cflux::RunConfig v;
  std::string fill = "linear";
  std::string split, baseline_week, target_week;
  std::vector<std::string> times;

  CLI::Option *o_input = nullptr, *o_profiles = nullptr, *o_layout = nullptr, *o_out = nullptr,
              *o_step = nullptr, *o_window = nullptr, *o_groups = nullptr, *o_fill = nullptr,
              *o_method = nullptr, *o_horizon = nullptr, *o_split = nullptr, *o_clamp = nullptr,
              *o_theta = nullptr, *o_shock = nullptr, *o_baseline = nullptr, *o_target = nullptr,
              *o_times = nullptr, *o_components = nullptr, *o_seed = nullptr, *o_jobs = nullptr;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its values")
      ->envname("CAMPUSFLUX_CONFIG");
  f.o_input = cmd->add_option("--input", f.v.input, "device-count CSV (timestamp,building,count)")
                  ->envname("CAMPUSFLUX_INPUT");
  f.o_profiles =
      cmd->add_option("--profiles", f.v.profiles, "profiles CSV (building,name,group,rooms,beds)")
          ->envname("CAMPUSFLUX_PROFILES");
  f.o_layout = cmd->add_option("--layout", f.v.layout, "campus layout JSON")
                   ->envname("CAMPUSFLUX_LAYOUT");
  f.o_out = cmd->add_option("--out", f.v.out, "output directory (default: out)")
                ->envname("CAMPUSFLUX_OUT");
  f.o_step = cmd->add_option("--step", f.v.step, "resample step in seconds (default: 600)")
                 ->envname("CAMPUSFLUX_STEP");
  f.o_window = cmd->add_option("--window", f.v.window, "SSA window length L (default: auto)")
                   ->envname("CAMPUSFLUX_WINDOW");
  f.o_groups =
      cmd->add_option("--groups", f.v.groups,
                      "grouping spec, e.g. trend=1;daily=2,3;weekly=4,5;noise=rest")
          ->envname("CAMPUSFLUX_GROUPS");
  f.o_fill = cmd->add_option("--fill", f.fill, "gap fill: linear, hold, or zero")
                 ->envname("CAMPUSFLUX_FILL");
  f.o_method = cmd->add_option("--method", f.v.method, "forecast method: R, V, or both")
                   ->envname("CAMPUSFLUX_METHOD");
  f.o_horizon =
      cmd->add_option("--horizon", f.v.horizon, "forecast steps (default: one week of samples)")
          ->envname("CAMPUSFLUX_HORIZON");
  f.o_split = cmd->add_option("--split", f.split, "holdout split timestamp (ISO-8601)")
                  ->envname("CAMPUSFLUX_SPLIT");
  f.o_clamp = cmd->add_flag("--clamp", f.v.clamp, "floor forecast values at zero")
                  ->envname("CAMPUSFLUX_CLAMP");
  f.o_theta =
      cmd->add_option("--theta", f.v.theta, "dorm-likeness threshold on ET1 (default: 0.85)")
          ->envname("CAMPUSFLUX_THETA");
  f.o_shock = cmd->add_option("--shock-threshold", f.v.shock_threshold,
                              "shock detection fraction (default: 0.5)")
                  ->envname("CAMPUSFLUX_SHOCK_THRESHOLD");
  f.o_baseline =
      cmd->add_option("--baseline-week", f.baseline_week, "shock baseline week start (ISO-8601)")
          ->envname("CAMPUSFLUX_BASELINE_WEEK");
  f.o_target =
      cmd->add_option("--target-week", f.target_week, "shock target week start (ISO-8601)")
          ->envname("CAMPUSFLUX_TARGET_WEEK");
  f.o_times = cmd->add_option("--times", f.times, "map frame timestamps (ISO-8601)")
                  ->envname("CAMPUSFLUX_TIMES");
  f.o_components =
      cmd->add_option("--components", f.v.components,
                      "eigen triples exported with full vectors (default: 16)")
          ->envname("CAMPUSFLUX_COMPONENTS");
  f.o_seed = cmd->add_option("--seed", f.v.seed, "random seed (default: 1)")
                 ->envname("CAMPUSFLUX_SEED");
  f.o_jobs = cmd->add_option("--jobs", f.v.jobs, "worker threads (default: logical cores)")
                 ->envname("CAMPUSFLUX_JOBS");
}

cflux::RunConfig merge(const Flags& f) {
  cflux::RunConfig c;
  if (!f.config.empty()) c = cflux::load_run_config(f.config);
  if (f.o_input->count()) c.input = f.v.input;
  if (f.o_profiles->count()) c.profiles = f.v.profiles;
  if (f.o_layout->count()) c.layout = f.v.layout;
  if (f.o_out->count()) c.out = f.v.out;
  if (f.o_step->count()) c.step = f.v.step;
  if (f.o_window->count()) c.window = f.v.window;
  if (f.o_groups->count()) c.groups = f.v.groups;
  if (f.o_fill->count()) {
    if (f.fill == "linear")
      c.fill = cflux::GapFill::LinearInterpolate;
    else if (f.fill == "hold")
      c.fill = cflux::GapFill::HoldLast;
    else if (f.fill == "zero")
      c.fill = cflux::GapFill::Zero;
    else
      throw std::invalid_argument("--fill must be linear, hold, or zero");
  }
  if (f.o_method->count()) c.method = f.v.method;
  if (f.o_horizon->count()) c.horizon = f.v.horizon;
  if (f.o_split->count()) c.split = cflux::parse_iso8601(f.split);
  if (f.o_clamp->count()) c.clamp = f.v.clamp;
  if (f.o_theta->count()) c.theta = f.v.theta;
  if (f.o_shock->count()) c.shock_threshold = f.v.shock_threshold;
  if (f.o_baseline->count()) c.baseline_week = cflux::parse_iso8601(f.baseline_week);
  if (f.o_target->count()) c.target_week = cflux::parse_iso8601(f.target_week);
  if (f.o_times->count()) {
    c.times.clear();
    for (const std::string& t : f.times) c.times.push_back(cflux::parse_iso8601(t));
  }
  if (f.o_components->count()) c.components = f.v.components;
  if (f.o_seed->count()) c.seed = f.v.seed;
  if (f.o_jobs->count()) c.jobs = f.v.jobs;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"campusflux: SSA decomposition, forecasting, clustering, and density maps\n"
               "for building-level Wi-Fi device-count time series"};
  app.require_subcommand(1);
  app.footer("Every option can also be set through the environment with the CAMPUSFLUX_ prefix\n"
             "(e.g. CAMPUSFLUX_OUT=results). Precedence: flags > environment > config file.\n"
             "Exit codes: 0 success, 1 usage/validation, 2 data error, 3 numerical error.");

  Flags f_dec, f_fc, f_rep, f_map, f_demo;
  CLI::App* dec = app.add_subcommand("decompose", "eigen-triple decomposition per building");
  add_common(dec, f_dec);
  CLI::App* fc = app.add_subcommand("forecast", "R/V forecasts with hold-out evaluation");
  add_common(fc, f_fc);
  CLI::App* rep =
      app.add_subcommand("report", "mean-dorm stats, density table, clusters, shock reports");
  add_common(rep, f_rep);
  CLI::App* map = app.add_subcommand("map", "density map frames (raster + JSON sidecar)");
  add_common(map, f_map);
  CLI::App* demo =
      app.add_subcommand("demo", "generate a synthetic campus and run the whole pipeline");
  add_common(demo, f_demo);

  try {
    app.parse(argc, argv);
    if (dec->parsed()) cflux::cmd_decompose(merge(f_dec));
    if (fc->parsed()) cflux::cmd_forecast(merge(f_fc));
    if (rep->parsed()) cflux::cmd_report(merge(f_rep));
    if (map->parsed()) cflux::cmd_map(merge(f_map));
    if (demo->parsed()) cflux::cmd_demo(merge(f_demo));
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cflux::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const cflux::numeric_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

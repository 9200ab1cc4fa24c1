#include "campusflux/jsonio.hpp"

#include <fstream>

#include "campusflux/errors.hpp"
#include "campusflux/time.hpp"
#include "json.hpp"

namespace cflux {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw data_error(path + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw data_error("write failed for '" + path + "'");
}

json point_list(const std::vector<Point>& points) {
  json arr = json::array();
  for (const Point& p : points) arr.push_back({p.x, p.y});
  return arr;
}

}  // namespace

CampusLayout load_layout(const std::string& path) {
  const json j = load_json_file(path);
  CampusLayout layout;
  try {
    layout.width = j.at("width").get<double>();
    layout.height = j.at("height").get<double>();
    for (const json& bj : j.at("buildings")) {
      Building b;
      b.id = bj.at("id").get<std::string>();
      for (const json& pj : bj.at("polygon"))
        b.footprint.push_back({pj.at(0).get<double>(), pj.at(1).get<double>()});
      layout.buildings.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    throw data_error(path + ": " + e.what());
  }
  try {
    validate_layout(layout);
  } catch (const std::invalid_argument& e) {
    throw data_error(path + ": " + e.what());
  }
  return layout;
}

void save_layout(const CampusLayout& layout, const std::string& path) {
  json buildings = json::array();
  for (const Building& b : layout.buildings)
    buildings.push_back({{"id", b.id}, {"polygon", point_list(b.footprint)}});
  write_json_file(
      {{"width", layout.width}, {"height", layout.height}, {"buildings", buildings}}, path);
}

void write_density_grid(const DensityGrid& grid, const std::string& path) {
  json hexes = json::array();
  for (const HexCell& c : grid.hex_cells)
    hexes.push_back({{"q", c.q},
                     {"r", c.r},
                     {"center", {c.center.x, c.center.y}},
                     {"value", c.value}});
  json lines = json::array();
  for (const ContourLine& line : grid.contours)
    lines.push_back(
        {{"level", line.level}, {"closed", line.closed}, {"points", point_list(line.points)}});
  write_json_file({{"timestamp", format_iso8601(grid.timestamp)},
                   {"bandwidth", grid.bandwidth},
                   {"hex_size", grid.hex_size},
                   {"hex_cells", hexes},
                   {"contours", lines}},
                  path);
}

void write_decomposition(const std::string& building_id, const Decomposition& dec,
                         const std::string& path, int max_components) {
  const std::vector<double> contrib = relative_contribution(dec.triples);
  json triples = json::array();
  const int exported = std::min<int>(max_components, static_cast<int>(dec.triples.size()));
  for (int i = 0; i < exported; ++i) {
    const EigenTriple& t = dec.triples[i];
    json u = json::array(), v = json::array();
    for (int a = 0; a < t.u.size(); ++a) u.push_back(t.u(a));
    for (int a = 0; a < t.v.size(); ++a) v.push_back(t.v(a));
    triples.push_back({{"index", t.index}, {"sigma", t.sigma}, {"u", u}, {"v", v}});
  }
  write_json_file({{"building", building_id},
                   {"L", dec.window},
                   {"K", dec.lagged},
                   {"n", dec.length},
                   {"triples", triples},
                   {"contributions", contrib}},
                  path);
}

void write_holdout(const std::string& building_id, const HoldoutReport& report,
                   const std::string& path) {
  json methods = json::object();
  for (const MethodErrors& m : report.methods)
    methods[m.method] = {{"rmse", m.rmse}, {"mae", m.mae}, {"max_abs", m.max_abs}};
  write_json_file(
      {{"building", building_id},
       {"train_range", {format_iso8601(report.train_start), format_iso8601(report.train_end)}},
       {"test_range", {format_iso8601(report.test_start), format_iso8601(report.test_end)}},
       {"horizon", report.horizon},
       {"methods", methods}},
      path);
}

void write_classification(const Classification& classification, const std::string& path) {
  const BuildingSignature& s = classification.signature;
  json periods = json::array();
  for (const auto& [et, hours] : s.dominant_period_per_et)
    periods.push_back({{"et", et}, {"period_hours", hours}});
  write_json_file({{"building", s.building_id},
                   {"et1_contribution", s.et1_contribution},
                   {"daily_contribution", s.daily_contribution},
                   {"weekly_contribution", s.weekly_contribution},
                   {"dominant_periods", periods},
                   {"label", classification.dorm_like ? "dorm-like" : "non-dorm-like"},
                   {"threshold", classification.threshold}},
                  path);
}

void write_shock(const ShockReport& report, const std::string& path) {
  write_json_file(
      {{"building", report.building_id},
       {"baseline_week",
        {format_iso8601(report.baseline_start), format_iso8601(report.baseline_end)}},
       {"target_week", {format_iso8601(report.target_start), format_iso8601(report.target_end)}},
       {"shock_detected", report.shock_detected},
       {"shock_onset",
        report.shock_onset ? json(format_iso8601(*report.shock_onset)) : json(nullptr)},
       {"deviation", report.deviation}},
      path);
}

}  // namespace cflux

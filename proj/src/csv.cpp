#include "campusflux/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "campusflux/errors.hpp"

namespace cflux {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

int find_column(const std::vector<std::string>& header, const std::string& name,
                const std::string& path) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (trimmed(header[i]) == name) return static_cast<int>(i);
  throw data_error(path + ": missing column '" + name + "'");
}

double parse_count(const std::string& text, const std::string& path, int line_no) {
  const std::string t = trimmed(text);
  if (t.empty())
    throw data_error(path + ":" + std::to_string(line_no) + ": empty count");
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != t.size() || !std::isfinite(v) || v < 0)
    throw data_error(path + ":" + std::to_string(line_no) + ": bad count '" + t + "'");
  return v;
}

}  // namespace

std::vector<RawSeries> ingest_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw data_error(path + ": empty file");
  const auto header = split_csv_line(line);
  const int ts_col = find_column(header, schema.timestamp_col, path);
  const int bld_col = find_column(header, schema.building_col, path);
  const int cnt_col = find_column(header, schema.count_col, path);
  const int min_cols =
      std::max(ts_col, std::max(bld_col, cnt_col)) + 1;

  // building -> (timestamp -> summed count)
  std::map<std::string, std::map<std::int64_t, double>> grouped;
  int line_no = 1;
  bool any_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) < min_cols)
      throw data_error(path + ":" + std::to_string(line_no) + ": expected at least " +
                       std::to_string(min_cols) + " columns");
    std::int64_t ts;
    try {
      ts = parse_iso8601(fields[ts_col]);
    } catch (const data_error& e) {
      throw data_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    const std::string building = trimmed(fields[bld_col]);
    if (building.empty())
      throw data_error(path + ":" + std::to_string(line_no) + ": empty building id");
    const double count = parse_count(fields[cnt_col], path, line_no);
    grouped[building][ts] += count;
    any_row = true;
  }
  if (!any_row) throw data_error(path + ": no data rows");

  std::vector<RawSeries> out;
  out.reserve(grouped.size());
  for (auto& [building, samples] : grouped) {
    RawSeries s;
    s.building_id = building;
    s.times.reserve(samples.size());
    s.values.reserve(samples.size());
    for (auto& [ts, count] : samples) {
      s.times.push_back(ts);
      s.values.push_back(count);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_ingest_csv(const std::string& path, const std::vector<RawSeries>& series) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  out << "timestamp,building,count\n";
  for (const auto& s : series)
    for (int i = 0; i < s.size(); ++i)
      out << format_iso8601(s.times[i]) << ',' << s.building_id << ','
          << static_cast<long long>(std::llround(s.values[i])) << '\n';
  if (!out) throw data_error("write failed for '" + path + "'");
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  out << "timestamp,value\n";
  char buf[64];
  for (int i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6f", series.values[i]);
    out << format_iso8601(series.time_at(i)) << ',' << buf << '\n';
  }
  if (!out) throw data_error("write failed for '" + path + "'");
}

TimeSeries read_series_csv(const std::string& path, const std::string& building_id) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw data_error(path + ": empty file");

  std::vector<std::int64_t> times;
  std::vector<double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 2)
      throw data_error(path + ":" + std::to_string(line_no) + ": expected 2 columns");
    times.push_back(parse_iso8601(fields[0]));
    values.push_back(parse_count(fields[1], path, line_no));
  }
  if (times.size() < 2) throw data_error(path + ": fewer than 2 samples");
  const std::int64_t step = times[1] - times[0];
  if (step <= 0) throw data_error(path + ": non-increasing timestamps");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] - times[i - 1] != step)
      throw data_error(path + ":" + std::to_string(static_cast<int>(i) + 2) +
                       ": non-uniform step");
  return TimeSeries(building_id, times[0], step, std::move(values));
}

std::vector<BuildingProfile> read_profiles_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw data_error(path + ": empty file");
  const auto header = split_csv_line(line);
  const int id_col = find_column(header, "building", path);
  const int name_col = find_column(header, "name", path);
  const int group_col = find_column(header, "group", path);
  const int rooms_col = find_column(header, "rooms", path);
  const int beds_col = find_column(header, "beds", path);
  const int min_cols = std::max({id_col, name_col, group_col, rooms_col, beds_col}) + 1;

  std::vector<BuildingProfile> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) < min_cols)
      throw data_error(path + ":" + std::to_string(line_no) + ": expected at least " +
                       std::to_string(min_cols) + " columns");
    BuildingProfile p;
    p.building_id = trimmed(fields[id_col]);
    p.name = trimmed(fields[name_col]);
    p.students_group = trimmed(fields[group_col]);
    const double rooms = parse_count(fields[rooms_col], path, line_no);
    const double beds = parse_count(fields[beds_col], path, line_no);
    if (rooms != std::floor(rooms) || beds != std::floor(beds))
      throw data_error(path + ":" + std::to_string(line_no) + ": rooms/beds must be integers");
    p.rooms = static_cast<int>(rooms);
    p.beds = static_cast<int>(beds);
    if (p.building_id.empty())
      throw data_error(path + ":" + std::to_string(line_no) + ": empty building id");
    out.push_back(std::move(p));
  }
  return out;
}

void write_profiles_csv(const std::string& path, const std::vector<BuildingProfile>& profiles) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write '" + path + "'");
  out << "building,name,group,rooms,beds\n";
  for (const auto& p : profiles)
    out << p.building_id << ',' << p.name << ',' << p.students_group << ',' << p.rooms
        << ',' << p.beds << '\n';
  if (!out) throw data_error("write failed for '" + path + "'");
}

}  // namespace cflux

#pragma once

#include <map>
#include <string>
#include <vector>

#include "campusflux/timeseries.hpp"

namespace cflux {

/// Column names for the raw count feed. Remap when the source uses different
/// headers.
struct CsvSchema {
  std::string timestamp_col = "timestamp";
  std::string building_col = "building";
  std::string count_col = "count";
};

/// Read a `timestamp,building,count` feed into one RawSeries per building,
/// sorted by timestamp. Rows sharing (timestamp, building) are summed:
/// access points report independently and counts add.
/// Throws data_error naming the line for any malformed row.
std::vector<RawSeries> ingest_csv(const std::string& path, const CsvSchema& schema = {});

/// Inverse of ingest_csv. Counts are written as integers (nearest), matching
/// the feed format.
void write_ingest_csv(const std::string& path, const std::vector<RawSeries>& series);

/// `timestamp,value` with 6 decimal places.
void write_series_csv(const std::string& path, const TimeSeries& series);
TimeSeries read_series_csv(const std::string& path, const std::string& building_id);

/// `building,name,group,rooms,beds`
std::vector<BuildingProfile> read_profiles_csv(const std::string& path);
void write_profiles_csv(const std::string& path, const std::vector<BuildingProfile>& profiles);

}  // namespace cflux

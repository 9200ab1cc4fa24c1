#pragma once

#include <cstdint>
#include <string>

namespace cflux {

// Timestamps are UTC seconds since the Unix epoch throughout.

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::int64_t kSecondsPerWeek = 7 * kSecondsPerDay;

/// Parse an ISO-8601 UTC timestamp ("2019-10-21T08:00:00Z", the 'T' may be a
/// space, the trailing 'Z' is optional, bare dates mean midnight).
/// Throws data_error on anything unparseable.
std::int64_t parse_iso8601(const std::string& text);

/// Format as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(std::int64_t t);

}  // namespace cflux

#include "campusflux/time.hpp"

#include <cstdio>
#include <ctime>

#include "campusflux/errors.hpp"

namespace cflux {

namespace {

bool is_digit_run(const std::string& s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (s[pos + i] < '0' || s[pos + i] > '9') return false;
  return true;
}

// Days since epoch for a civil date; valid for the proleptic Gregorian
// calendar (Howard Hinnant's algorithm).
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int yoe = static_cast<int>(y - era * 400);
  const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int doe = static_cast<int>(z - era * 146097);
  const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = yoe + era * 400;
  const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

int days_in_month(int y, int m) {
  static const int base[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) return 29;
  return base[m - 1];
}

}  // namespace

std::int64_t parse_iso8601(const std::string& text) {
  // Trim surrounding whitespace.
  std::size_t b = text.find_first_not_of(" \t\r\n");
  std::size_t e = text.find_last_not_of(" \t\r\n");
  if (b == std::string::npos)
    throw data_error("empty timestamp");
  const std::string s = text.substr(b, e - b + 1);

  auto fail = [&]() -> std::int64_t {
    throw data_error("unparseable timestamp '" + s + "'");
  };

  if (!is_digit_run(s, 0, 4) || s.size() < 10 || s[4] != '-' || s[7] != '-' ||
      !is_digit_run(s, 5, 2) || !is_digit_run(s, 8, 2))
    return fail();

  const int year = std::stoi(s.substr(0, 4));
  const int month = std::stoi(s.substr(5, 2));
  const int day = std::stoi(s.substr(8, 2));
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
    return fail();

  int hh = 0, mm = 0, ss = 0;
  if (s.size() > 10) {
    if ((s[10] != 'T' && s[10] != ' ') || s.size() < 19) return fail();
    if (!is_digit_run(s, 11, 2) || s[13] != ':' || !is_digit_run(s, 14, 2) ||
        s[16] != ':' || !is_digit_run(s, 17, 2))
      return fail();
    hh = std::stoi(s.substr(11, 2));
    mm = std::stoi(s.substr(14, 2));
    ss = std::stoi(s.substr(17, 2));
    if (hh > 23 || mm > 59 || ss > 60) return fail();
    std::size_t rest = 19;
    if (rest < s.size() && s[rest] == 'Z') ++rest;
    if (rest != s.size()) return fail();
  }

  return days_from_civil(year, month, day) * kSecondsPerDay + hh * 3600 + mm * 60 + ss;
}

std::string format_iso8601(std::int64_t t) {
  std::int64_t days = t / kSecondsPerDay;
  std::int64_t sod = t % kSecondsPerDay;
  if (sod < 0) {
    sod += kSecondsPerDay;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                static_cast<int>(sod % 60));
  return buf;
}

}  // namespace cflux

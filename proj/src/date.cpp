#include "stancelp/date.hpp"

#include <charconv>
#include <cstdio>

#include "stancelp/error.hpp"

namespace stancelp {

namespace {

bool ParseDigits(std::string_view text, int* out) {
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day)
    : days_(std::chrono::year_month_day{std::chrono::year{year},
                                        std::chrono::month{month},
                                        std::chrono::day{day}}) {}

bool Date::TryParse(std::string_view text, Date* out) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  int y = 0, m = 0, d = 0;
  if (!ParseDigits(text.substr(0, 4), &y) || !ParseDigits(text.substr(5, 2), &m) ||
      !ParseDigits(text.substr(8, 2), &d)) {
    return false;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return false;
  *out = Date{std::chrono::sys_days{ymd}};
  return true;
}

Date Date::Parse(std::string_view text) {
  Date date;
  if (!TryParse(text, &date)) {
    throw Error(ErrorCode::kParse, "invalid ISO-8601 date '" + std::string(text) + "'");
  }
  return date;
}

std::string Date::ToString() const {
  const std::chrono::year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace stancelp

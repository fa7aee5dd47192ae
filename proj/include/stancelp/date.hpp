#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace stancelp {

// Calendar date with day resolution. Parses and prints ISO-8601 (YYYY-MM-DD).
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Returns false on anything that is not a valid YYYY-MM-DD date.
  static bool TryParse(std::string_view text, Date* out);
  // Throws Error(kParse) on failure.
  static Date Parse(std::string_view text);

  std::string ToString() const;
  std::chrono::sys_days days() const { return days_; }
  std::chrono::weekday weekday() const { return std::chrono::weekday{days_}; }

  Date AddDays(int n) const { return Date{days_ + std::chrono::days{n}}; }
  // Signed number of calendar days from `this` to `other`.
  long DaysUntil(const Date& other) const {
    return (other.days_ - days_).count();
  }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace stancelp

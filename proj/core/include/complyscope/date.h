// Copyright 2026 The complyscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPLYSCOPE_DATE_H_
#define COMPLYSCOPE_DATE_H_

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace complyscope {

// Calendar day in UTC. Archive captures and app releases are both tracked at
// day resolution.
class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);
  explicit Date(std::chrono::sys_days days);

  // Accepts "YYYY-MM-DD", "YYYYMMDD", 14-digit archive timestamps
  // ("YYYYMMDDhhmmss") and ISO datetimes; any time component is dropped.
  // Throws Error(kParse) on anything else.
  static Date Parse(std::string_view text);

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

  std::chrono::sys_days days() const { return std::chrono::sys_days(ymd_); }

  // Adds calendar months, clamping the day to the end of the target month.
  Date AddMonths(int months) const;
  Date AddDays(int days) const;

  std::string ToIso() const;      // 2016-07-01
  std::string ToCompact() const;  // 20160701
  std::string ToHttpDate() const; // Fri, 01 Jul 2016 00:00:00 GMT

  friend bool operator==(const Date& a, const Date& b) {
    return a.days() == b.days();
  }
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
    return a.days().time_since_epoch().count() <=>
           b.days().time_since_epoch().count();
  }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970} / 1 / 1};
};

// Signed day difference `to - from`.
int DaysBetween(const Date& from, const Date& to);

}  // namespace complyscope

#endif  // COMPLYSCOPE_DATE_H_

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

#include "complyscope/date.h"

#include <cctype>
#include <cstdio>

#include "complyscope/error.h"

namespace complyscope {
namespace {

bool AllDigits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

int ToInt(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year{year} / std::chrono::month{month} /
           std::chrono::day{day}) {
  if (!ymd_.ok()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "invalid calendar date %04d-%02u-%02u",
                  year, month, day);
    throw Error(ErrorCode::kParse, buf);
  }
}

Date::Date(std::chrono::sys_days days) : ymd_(days) {}

Date Date::Parse(std::string_view text) {
  std::string_view y, m, d;
  if (text.size() >= 10 && text[4] == '-' && text[7] == '-') {
    y = text.substr(0, 4);
    m = text.substr(5, 2);
    d = text.substr(8, 2);
    if (text.size() > 10 && text[10] != 'T' && text[10] != ' ') {
      throw Error(ErrorCode::kParse, "unrecognized date '" + std::string(text) + "'");
    }
  } else if ((text.size() == 8 || text.size() == 14) && AllDigits(text)) {
    y = text.substr(0, 4);
    m = text.substr(4, 2);
    d = text.substr(6, 2);
  } else {
    throw Error(ErrorCode::kParse, "unrecognized date '" + std::string(text) + "'");
  }
  if (!AllDigits(y) || !AllDigits(m) || !AllDigits(d)) {
    throw Error(ErrorCode::kParse, "unrecognized date '" + std::string(text) + "'");
  }
  return Date(ToInt(y), static_cast<unsigned>(ToInt(m)),
              static_cast<unsigned>(ToInt(d)));
}

Date Date::AddMonths(int months) const {
  using namespace std::chrono;
  year_month ym = ymd_.year() / ymd_.month();
  ym += std::chrono::months{months};
  auto month_end = (ym / std::chrono::last).day();
  auto d = ymd_.day() > month_end ? month_end : ymd_.day();
  return Date(sys_days(ym / d));
}

Date Date::AddDays(int n) const {
  return Date(days() + std::chrono::days{n});
}

std::string Date::ToIso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

std::string Date::ToCompact() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d%02u%02u", year(), month(), day());
  return buf;
}

std::string Date::ToHttpDate() const {
  static constexpr const char* kDays[] = {"Sun", "Mon", "Tue", "Wed",
                                          "Thu", "Fri", "Sat"};
  static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr",
                                            "May", "Jun", "Jul", "Aug",
                                            "Sep", "Oct", "Nov", "Dec"};
  std::chrono::weekday wd{days()};
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s, %02u %s %04d 00:00:00 GMT",
                kDays[wd.c_encoding()], day(), kMonths[month() - 1], year());
  return buf;
}

int DaysBetween(const Date& from, const Date& to) {
  return static_cast<int>((to.days() - from.days()).count());
}

}  // namespace complyscope

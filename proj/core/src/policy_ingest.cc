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

#include "complyscope/policy_ingest.h"

#include <algorithm>
#include <array>

#include "complyscope/error.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::policy {
namespace {

struct Contraction {
  std::string_view from;
  std::string_view to;
};

constexpr std::array<Contraction, 15> kContractions = {{
    {"don't", "do not"},         {"doesn't", "does not"},
    {"didn't", "did not"},       {"haven't", "have not"},
    {"hasn't", "has not"},       {"hadn't", "had not"},
    {"won't", "will not"},       {"can't", "can not"},
    {"isn't", "is not"},         {"aren't", "are not"},
    {"wasn't", "was not"},       {"weren't", "were not"},
    {"shouldn't", "should not"}, {"wouldn't", "would not"},
    {"couldn't", "could not"},
}};

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string NormalizeApostrophes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    // U+2018, U+2019, U+02BC, U+00B4
    if (i + 2 < s.size() && s[i] == '\xE2' && s[i + 1] == '\x80' &&
        (s[i + 2] == '\x98' || s[i + 2] == '\x99')) {
      out.push_back('\'');
      i += 2;
    } else if (i + 1 < s.size() && ((s[i] == '\xCA' && s[i + 1] == '\xBC') ||
                                    (s[i] == '\xC2' && s[i + 1] == '\xB4'))) {
      out.push_back('\'');
      i += 1;
    } else if (s[i] == '`') {
      out.push_back('\'');
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::string ExpandContractions(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 16);
  std::size_t i = 0;
  while (i < s.size()) {
    bool replaced = false;
    if (i == 0 || !IsAsciiLetter(s[i - 1])) {
      for (const auto& c : kContractions) {
        if (s.compare(i, c.from.size(), c.from) != 0) continue;
        std::size_t after = i + c.from.size();
        if (after < s.size() && IsAsciiLetter(s[after])) continue;
        out += c.to;
        i = after;
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

}  // namespace

Date EarliestCaptureDate() { return Date(1996, 1, 1); }
Date DefaultReleaseFloor() { return Date(2008, 1, 1); }

std::string PolicySnapshot::id() const {
  return app_id + "@" + capture_date.ToCompact();
}

void ValidateSnapshot(const PolicySnapshot& snapshot) {
  if (snapshot.capture_date < EarliestCaptureDate()) {
    throw Error(ErrorCode::kInvalidArgument,
                "capture date " + snapshot.capture_date.ToIso() +
                    " predates web archiving");
  }
}

void ValidateRelease(const AppRelease& release, const Date& floor) {
  if (release.release_date < floor) {
    throw Error(ErrorCode::kInvalidArgument,
                "release date " + release.release_date.ToIso() + " of " +
                    release.app_id + " is before " + floor.ToIso());
  }
}

std::vector<std::string> SplitParagraphs(std::string_view input) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    std::string para = text::CollapseWhitespace(current);
    if (!para.empty()) out.push_back(std::move(para));
    current.clear();
  };
  for (std::string_view line : text::Split(input, '\n')) {
    if (text::Trim(line).empty()) {
      flush();
    } else {
      current += line;
      current += '\n';
    }
  }
  flush();
  return out;
}

std::vector<Segment> SegmentPolicy(std::string_view input,
                                   std::string_view policy_id,
                                   const SegmentationOptions& options) {
  std::vector<std::string> candidates = SplitParagraphs(input);

  // Heading rule: a short paragraph that is not the last is glued to the
  // one after it, repeatedly, until the unit is long enough.
  struct Unit {
    std::string text;
    std::size_t len;
  };
  std::vector<Unit> units;
  for (std::size_t i = 0; i < candidates.size();) {
    Unit u{candidates[i], text::Utf8Length(candidates[i])};
    ++i;
    while (u.len < options.heading_max_chars && i < candidates.size()) {
      u.text += ' ';
      u.text += candidates[i];
      u.len = text::Utf8Length(u.text);
      ++i;
    }
    units.push_back(std::move(u));
  }

  // Adjacency rule: one merge per pair, no cascading.
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < units.size();) {
    Segment seg;
    seg.policy_id = std::string(policy_id);
    seg.index = segments.size();
    if (i + 1 < units.size() &&
        units[i].len + units[i + 1].len < options.merge_below_chars) {
      seg.raw_text = units[i].text + " " + units[i + 1].text;
      i += 2;
    } else {
      seg.raw_text = units[i].text;
      i += 1;
    }
    seg.char_len = text::Utf8Length(seg.raw_text);
    seg.text = NormalizeSegment(seg.raw_text);
    segments.push_back(std::move(seg));
  }
  return segments;
}

std::string NormalizeSegment(std::string_view input) {
  std::string s = text::CollapseWhitespace(
      text::AsciiLower(NormalizeApostrophes(input)));
  s = ExpandContractions(s);

  std::string letters;
  letters.reserve(s.size());
  for (char c : s) {
    if ((c >= 'a' && c <= 'z') || c == ' ') letters.push_back(c);
  }

  std::string out;
  out.reserve(letters.size());
  for (const std::string& token : text::SplitWhitespace(letters)) {
    if (token.size() < 2) continue;
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

PolicyAssignment AssignPolicyToRelease(const Date& release_date,
                                       std::span<const Date> capture_dates) {
  if (capture_dates.empty()) {
    throw Error(ErrorCode::kNoPolicy, "no policy snapshots to assign");
  }
  auto it = std::lower_bound(capture_dates.begin(), capture_dates.end(),
                             release_date);
  PolicyAssignment a;
  if (it == capture_dates.end()) {
    a.snapshot_index = capture_dates.size() - 1;
    a.fallback_to_latest = true;
  } else {
    a.snapshot_index = static_cast<std::size_t>(it - capture_dates.begin());
  }
  a.gap_days = DaysBetween(release_date, capture_dates[a.snapshot_index]);
  return a;
}

PolicyAssignment AssignPolicyToRelease(
    const AppRelease& release, std::span<const PolicySnapshot> snapshots) {
  std::vector<Date> dates;
  dates.reserve(snapshots.size());
  for (const auto& s : snapshots) dates.push_back(s.capture_date);
  if (!std::is_sorted(dates.begin(), dates.end())) {
    throw Error(ErrorCode::kInvalidArgument,
                "snapshots must be sorted by capture date");
  }
  return AssignPolicyToRelease(release.release_date, dates);
}

std::string SegmentsToJsonl(std::span<const Segment> segments) {
  std::string out;
  for (const auto& s : segments) {
    nlohmann::ordered_json j;
    j["policy_id"] = s.policy_id;
    j["index"] = s.index;
    j["text"] = s.text;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace complyscope::policy

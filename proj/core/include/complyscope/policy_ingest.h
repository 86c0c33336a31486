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

#ifndef COMPLYSCOPE_POLICY_INGEST_H_
#define COMPLYSCOPE_POLICY_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/date.h"

namespace complyscope::policy {

// Earliest date a web archive capture can carry.
Date EarliestCaptureDate();
// Default floor for app release dates.
Date DefaultReleaseFloor();

// A single archived capture of a privacy-policy page.
struct PolicySnapshot {
  std::string app_id;
  std::string source_url;
  Date capture_date;
  std::string raw_html;
  std::string extracted_text;  // empty until ExtractPolicyText has run

  // Stable identifier: "<app_id>@<YYYYMMDD>".
  std::string id() const;
};

// Throws Error(kInvalidArgument) when capture_date predates archiving.
void ValidateSnapshot(const PolicySnapshot& snapshot);

struct Segment {
  std::string policy_id;
  std::size_t index = 0;
  std::string raw_text;  // paragraph text as merged, before normalization
  std::string text;      // NormalizeSegment(raw_text)
  std::size_t char_len = 0;  // code points in raw_text
};

struct AppRelease {
  std::string app_id;
  std::int64_t version_code = 0;
  Date release_date;
  std::optional<std::string> assigned_policy;
};

void ValidateRelease(const AppRelease& release,
                     const Date& floor = DefaultReleaseFloor());

struct ExtractOptions {
  // Pages shorter than this that link to a "privacy" page are treated as
  // pointers to the real policy rather than the policy itself.
  std::size_t unresolvable_max_chars = 300;
};

// Visible body text of an HTML page, one paragraph per blank-line-separated
// block. Drops script/style/meta/noscript content, decodes entities and
// removes a leading archive wrapper ("success ... TIMESTAMPS").
// Throws Error(kMalformedDocument), Error(kEmptyPolicy) or
// Error(kUnresolvable).
std::string ExtractPolicyText(std::string_view html,
                              const ExtractOptions& options = {});
std::string ExtractPolicyText(const PolicySnapshot& snapshot,
                              const ExtractOptions& options = {});

// Removes an archive banner that starts with "success" and ends with
// "TIMESTAMPS". Text without such a prefix is returned unchanged.
std::string StripArchivePrefix(std::string_view text);

struct SegmentationOptions {
  std::size_t heading_max_chars = 50;    // shorter paragraphs are headings
  std::size_t merge_below_chars = 250;   // adjacent pairs shorter are merged
};

// Paragraph candidates: blank-line separated, whitespace collapsed.
std::vector<std::string> SplitParagraphs(std::string_view text);

// Splits extracted policy text into segments. Headings (paragraphs under
// 50 characters that are not last) are glued to the following paragraph,
// then adjacent pairs with combined length under 250 are merged once,
// left to right. Segment text is normalized; char_len counts the raw text.
std::vector<Segment> SegmentPolicy(std::string_view text,
                                   std::string_view policy_id = {},
                                   const SegmentationOptions& options = {});

// Lowercases, expands n't contractions, keeps only ASCII letters and
// spaces, and drops one-letter words. Idempotent.
std::string NormalizeSegment(std::string_view text);

struct PolicyAssignment {
  std::size_t snapshot_index = 0;
  // capture_date - release_date in days; negative when no capture follows the
  // release and the latest one was used instead.
  int gap_days = 0;
  bool fallback_to_latest = false;
};

// Binds a release to the first capture on or after its release date, or the
// latest capture when none follows. `snapshots` must be sorted by date.
// Throws Error(kNoPolicy) on an empty list.
PolicyAssignment AssignPolicyToRelease(const AppRelease& release,
                                       std::span<const PolicySnapshot> snapshots);
PolicyAssignment AssignPolicyToRelease(const Date& release_date,
                                       std::span<const Date> capture_dates);

// {"policy_id","index","text"} per line.
std::string SegmentsToJsonl(std::span<const Segment> segments);

}  // namespace complyscope::policy

#endif  // COMPLYSCOPE_POLICY_INGEST_H_

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

#ifndef COMPLYSCOPE_ARCHIVE_CLIENT_H_
#define COMPLYSCOPE_ARCHIVE_CLIENT_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/date.h"
#include "complyscope/policy_ingest.h"

namespace complyscope::policy {

// A capture located by datetime negotiation, before its content is fetched.
struct CaptureRef {
  std::string app_id;
  std::string source_url;
  Date capture_date;
  std::string location;  // memento URL or fixture path
};

// Memento-style access to archived captures of a URL.
class ArchiveClient {
 public:
  virtual ~ArchiveClient() = default;

  // Capture closest in time to `target`, or nullopt when the archive holds
  // none for `url`. Throws Error(kArchiveUnavailable) on transport failure.
  virtual std::optional<CaptureRef> Nearest(std::string_view url,
                                            const Date& target) = 0;

  virtual PolicySnapshot Fetch(const CaptureRef& ref) = 0;
};

// Reads captures from a fixture tree laid out as
//   <root>/<app_id>/<YYYYMMDD>.html
//   <root>/<app_id>/<YYYYMMDD>.json   {"app_id", "url", "capture_date"}
class OfflineArchive : public ArchiveClient {
 public:
  explicit OfflineArchive(std::filesystem::path root);

  std::optional<CaptureRef> Nearest(std::string_view url,
                                    const Date& target) override;
  PolicySnapshot Fetch(const CaptureRef& ref) override;

  // Every capture stored for an app, sorted by date then path.
  std::vector<CaptureRef> CapturesForApp(std::string_view app_id) const;

 private:
  std::filesystem::path root_;
  std::vector<CaptureRef> captures_;
};

struct TimeGateOptions {
  int max_attempts = 3;
  std::chrono::milliseconds retry_backoff{500};
  std::chrono::seconds timeout{30};
  std::string app_id;  // stamped onto fetched snapshots
};

// Online client for a Memento TimeGate such as
// "https://web.archive.org/web/". Requests are issued sequentially.
class TimeGateArchive : public ArchiveClient {
 public:
  explicit TimeGateArchive(std::string base_url, TimeGateOptions options = {});

  std::optional<CaptureRef> Nearest(std::string_view url,
                                    const Date& target) override;
  PolicySnapshot Fetch(const CaptureRef& ref) override;

 private:
  std::string base_url_;
  TimeGateOptions options_;
};

struct FetchOptions {
  int window_months = 3;
};

// Samples `url` once per window over [from, to]: for each window start the
// archive is asked for the nearest capture, which is kept only if it falls
// inside that window. Captures are deduplicated by day and returned sorted.
// Throws Error(kNoCaptures) if nothing is found.
std::vector<PolicySnapshot> FetchSnapshots(ArchiveClient& client,
                                           std::string_view url,
                                           const Date& from, const Date& to,
                                           const FetchOptions& options = {});

// Writes a snapshot in the OfflineArchive layout under `root`.
void WriteFixture(const PolicySnapshot& snapshot,
                  const std::filesystem::path& root);

// Parses an RFC 1123 HTTP date ("Fri, 15 Jan 2016 10:00:00 GMT").
std::optional<Date> ParseHttpDate(std::string_view value);

}  // namespace complyscope::policy

#endif  // COMPLYSCOPE_ARCHIVE_CLIENT_H_

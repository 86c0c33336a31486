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

#include "complyscope/archive_client.h"

#include <algorithm>
#include <regex>
#include <set>
#include <thread>

#include "complyscope/error.h"
#include "complyscope/text.h"
#include "httplib.h"
#include "json.hpp"

namespace complyscope::policy {
namespace fs = std::filesystem;
namespace {

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;    // always begins with '/'
};

UrlParts SplitUrl(std::string_view url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected an absolute URL, got '" + std::string(url) + "'");
  }
  std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string_view::npos) {
    return {std::string(url), "/"};
  }
  return {std::string(url.substr(0, path_start)),
          std::string(url.substr(path_start))};
}

std::optional<Date> TimestampFromMementoUrl(std::string_view location) {
  static const std::regex kStamp(R"(/(\d{14})[a-z_]*/)");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(location.begin(), location.end(), m, kStamp)) {
    return Date::Parse(m[1].str());
  }
  return std::nullopt;
}

// Issues `request` up to max_attempts times while the failure is transient.
template <typename Request>
httplib::Result WithRetry(const TimeGateOptions& options, std::string_view what,
                          Request&& request) {
  std::string last_error = "no attempt made";
  for (int attempt = 1; attempt <= std::max(1, options.max_attempts);
       ++attempt) {
    httplib::Result res = request();
    if (res && res->status < 500) return res;
    last_error = res ? "HTTP " + std::to_string(res->status)
                     : httplib::to_string(res.error());
    if (attempt < options.max_attempts) {
      std::this_thread::sleep_for(options.retry_backoff * attempt);
    }
  }
  throw Error(ErrorCode::kArchiveUnavailable,
              std::string(what) + ": " + last_error);
}

httplib::Client MakeClient(const std::string& origin,
                           const TimeGateOptions& options) {
  httplib::Client client(origin);
  client.set_connection_timeout(options.timeout);
  client.set_read_timeout(options.timeout);
  return client;
}

}  // namespace

std::optional<Date> ParseHttpDate(std::string_view value) {
  static const std::regex kRfc1123(
      R"(^\s*[A-Za-z]{3},\s*(\d{1,2})\s+([A-Za-z]{3})\s+(\d{4}))");
  static constexpr const char* kMonths[] = {"jan", "feb", "mar", "apr",
                                            "may", "jun", "jul", "aug",
                                            "sep", "oct", "nov", "dec"};
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(value.begin(), value.end(), m, kRfc1123)) {
    return std::nullopt;
  }
  std::string mon = text::AsciiLower(m[2].str());
  for (unsigned i = 0; i < 12; ++i) {
    if (mon == kMonths[i]) {
      return Date(std::stoi(m[3].str()), i + 1,
                  static_cast<unsigned>(std::stoi(m[1].str())));
    }
  }
  return std::nullopt;
}

// ----------------------------------------------------------------------------
// OfflineArchive

OfflineArchive::OfflineArchive(fs::path root) : root_(std::move(root)) {
  if (!fs::is_directory(root_)) {
    throw Error(ErrorCode::kIo,
                "fixture directory '" + root_.string() + "' does not exist");
  }
  for (const auto& entry : fs::recursive_directory_iterator(root_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") {
      continue;
    }
    fs::path html = entry.path();
    html.replace_extension(".html");
    if (!fs::exists(html)) continue;
    nlohmann::json side;
    try {
      side = nlohmann::json::parse(text::ReadFile(entry.path().string()));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse,
                  entry.path().string() + ": " + std::string(e.what()));
    }
    CaptureRef ref;
    ref.app_id = side.value("app_id", entry.path().parent_path().filename().string());
    ref.source_url = side.value("url", "");
    std::string date = side.value("capture_date", entry.path().stem().string());
    ref.capture_date = Date::Parse(date);
    ref.location = html.string();
    captures_.push_back(std::move(ref));
  }
  std::sort(captures_.begin(), captures_.end(),
            [](const CaptureRef& a, const CaptureRef& b) {
              if (a.capture_date != b.capture_date) {
                return a.capture_date < b.capture_date;
              }
              return a.location < b.location;
            });
}

std::optional<CaptureRef> OfflineArchive::Nearest(std::string_view url,
                                                  const Date& target) {
  const CaptureRef* best = nullptr;
  int best_distance = 0;
  for (const auto& c : captures_) {
    if (c.source_url != url) continue;
    int distance = std::abs(DaysBetween(target, c.capture_date));
    // captures_ is date-sorted, so strict '<' prefers the earlier on ties.
    if (best == nullptr || distance < best_distance) {
      best = &c;
      best_distance = distance;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

PolicySnapshot OfflineArchive::Fetch(const CaptureRef& ref) {
  PolicySnapshot s;
  s.app_id = ref.app_id;
  s.source_url = ref.source_url;
  s.capture_date = ref.capture_date;
  s.raw_html = text::ReadFile(ref.location);
  return s;
}

std::vector<CaptureRef> OfflineArchive::CapturesForApp(
    std::string_view app_id) const {
  std::vector<CaptureRef> out;
  for (const auto& c : captures_) {
    if (c.app_id == app_id) out.push_back(c);
  }
  return out;
}

// ----------------------------------------------------------------------------
// TimeGateArchive

TimeGateArchive::TimeGateArchive(std::string base_url, TimeGateOptions options)
    : base_url_(std::move(base_url)), options_(std::move(options)) {
  SplitUrl(base_url_);  // validates
}

std::optional<CaptureRef> TimeGateArchive::Nearest(std::string_view url,
                                                   const Date& target) {
  UrlParts base = SplitUrl(base_url_);
  httplib::Client client = MakeClient(base.origin, options_);
  client.set_follow_location(false);
  std::string path = base.path + std::string(url);
  httplib::Headers headers = {{"Accept-Datetime", target.ToHttpDate()}};

  httplib::Result res = WithRetry(options_, "TimeGate " + base.origin,
                                  [&] { return client.Get(path, headers); });
  if (res->status == 404) return std::nullopt;

  CaptureRef ref;
  ref.app_id = options_.app_id;
  ref.source_url = std::string(url);
  if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
    ref.location = res->get_header_value("Location");
    if (!ref.location.empty() && ref.location[0] == '/') {
      ref.location = base.origin + ref.location;
    }
  } else if (res->status == 200) {
    ref.location = base.origin + path;
  } else {
    throw Error(ErrorCode::kIo, "TimeGate answered HTTP " +
                                    std::to_string(res->status) + " for " +
                                    std::string(url));
  }

  std::optional<Date> when;
  if (res->has_header("Memento-Datetime")) {
    when = ParseHttpDate(res->get_header_value("Memento-Datetime"));
  }
  if (!when) when = TimestampFromMementoUrl(ref.location);
  if (!when) {
    throw Error(ErrorCode::kParse,
                "cannot determine capture date of " + ref.location);
  }
  ref.capture_date = *when;
  return ref;
}

PolicySnapshot TimeGateArchive::Fetch(const CaptureRef& ref) {
  UrlParts parts = SplitUrl(ref.location);
  httplib::Client client = MakeClient(parts.origin, options_);
  client.set_follow_location(true);
  httplib::Result res = WithRetry(options_, "memento " + ref.location,
                                  [&] { return client.Get(parts.path); });
  if (res->status != 200) {
    throw Error(ErrorCode::kIo, "memento " + ref.location + " answered HTTP " +
                                    std::to_string(res->status));
  }
  PolicySnapshot s;
  s.app_id = ref.app_id;
  s.source_url = ref.source_url;
  s.capture_date = ref.capture_date;
  s.raw_html = res->body;
  return s;
}

// ----------------------------------------------------------------------------

std::vector<PolicySnapshot> FetchSnapshots(ArchiveClient& client,
                                           std::string_view url,
                                           const Date& from, const Date& to,
                                           const FetchOptions& options) {
  if (to < from) {
    throw Error(ErrorCode::kInvalidArgument, "fetch range ends before it starts");
  }
  if (options.window_months <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "window must be positive");
  }
  std::vector<PolicySnapshot> out;
  std::set<Date> seen_days;
  const Date range_end = to.AddDays(1);
  for (int k = 0;; ++k) {
    Date window_start = from.AddMonths(k * options.window_months);
    if (to < window_start) break;
    Date window_end = std::min(from.AddMonths((k + 1) * options.window_months),
                               range_end);
    std::optional<CaptureRef> ref = client.Nearest(url, window_start);
    if (!ref) continue;
    if (ref->capture_date < window_start || !(ref->capture_date < window_end)) {
      continue;  // missed window
    }
    if (!seen_days.insert(ref->capture_date).second) continue;
    out.push_back(client.Fetch(*ref));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kNoCaptures,
                "no captures of " + std::string(url) + " between " +
                    from.ToIso() + " and " + to.ToIso());
  }
  std::sort(out.begin(), out.end(),
            [](const PolicySnapshot& a, const PolicySnapshot& b) {
              return a.capture_date < b.capture_date;
            });
  return out;
}

void WriteFixture(const PolicySnapshot& snapshot, const fs::path& root) {
  fs::path dir = root / snapshot.app_id;
  fs::create_directories(dir);
  std::string stem = snapshot.capture_date.ToCompact();
  text::WriteFile((dir / (stem + ".html")).string(), snapshot.raw_html);
  nlohmann::ordered_json side;
  side["app_id"] = snapshot.app_id;
  side["url"] = snapshot.source_url;
  side["capture_date"] = snapshot.capture_date.ToIso();
  text::WriteFile((dir / (stem + ".json")).string(), side.dump(2) + "\n");
}

}  // namespace complyscope::policy

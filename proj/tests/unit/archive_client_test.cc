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

#include <atomic>
#include <chrono>
#include <string>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "complyscope/error.h"
#include "synthetic.h"

namespace complyscope::policy {
namespace {

namespace fs = std::filesystem;
using complyscope::testing::TempDir;

constexpr char kUrl[] = "https://example.com/privacy";

PolicySnapshot Snap(const Date& d) {
  PolicySnapshot s;
  s.app_id = "com.example.app";
  s.source_url = kUrl;
  s.capture_date = d;
  s.raw_html = "<body><p>Policy as of " + d.ToIso() + "</p></body>";
  return s;
}

TEST(OfflineArchiveTest, EnumeratesCapturesInRange) {
  TempDir dir;
  for (Date d : {Date(2016, 1, 5), Date(2016, 7, 5), Date(2017, 1, 5)}) {
    WriteFixture(Snap(d), dir.path());
  }
  OfflineArchive archive(dir.path());
  auto snaps = FetchSnapshots(archive, kUrl, Date(2016, 1, 1), Date(2017, 1, 31));
  ASSERT_EQ(snaps.size(), 3u);
  EXPECT_EQ(snaps[1].capture_date, Date(2016, 7, 5));
  EXPECT_NE(snaps[2].raw_html.find("2017-01-05"), std::string::npos);
  EXPECT_EQ(archive.CapturesForApp("com.example.app").size(), 3u);
}

TEST(OfflineArchiveTest, EmptyRangeHasNoCaptures) {
  TempDir dir;
  WriteFixture(Snap(Date(2016, 1, 5)), dir.path());
  OfflineArchive archive(dir.path());
  try {
    FetchSnapshots(archive, kUrl, Date(2018, 1, 1), Date(2018, 12, 31));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoCaptures);
  }
}

TEST(OfflineArchiveTest, DuplicateDayReturnedOnce) {
  TempDir dir;
  WriteFixture(Snap(Date(2016, 2, 1)), dir.path());
  // Same capture day filed under a second directory.
  PolicySnapshot dup = Snap(Date(2016, 2, 1));
  WriteFixture(dup, dir.path() / "mirror");
  OfflineArchive archive(dir.path());
  auto snaps =
      FetchSnapshots(archive, kUrl, Date(2016, 1, 1), Date(2016, 12, 31),
                     FetchOptions{.window_months = 1});
  EXPECT_EQ(snaps.size(), 1u);
}

TEST(OfflineArchiveTest, MissingRootThrows) {
  EXPECT_THROW(OfflineArchive("/nonexistent/complyscope"), Error);
}

TEST(HttpDateTest, Parses) {
  EXPECT_EQ(ParseHttpDate("Fri, 15 Jan 2016 10:00:00 GMT"), Date(2016, 1, 15));
  EXPECT_FALSE(ParseHttpDate("yesterday"));
}

class TimeGateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Get(R"(/web/(.*))", [this](const httplib::Request& req,
                                       httplib::Response& res) {
      ++hits_;
      if (failures_left_ > 0) {
        --failures_left_;
        res.status = 503;
        return;
      }
      if (req.matches[1] == "https://example.com/missing") {
        res.status = 404;
        return;
      }
      res.status = 302;
      res.set_header("Location", "/memento/20160715000000/" +
                                     std::string(req.matches[1]));
      res.set_header("Memento-Datetime", "Fri, 15 Jul 2016 00:00:00 GMT");
    });
    server_.Get(R"(/memento/.*)", [](const httplib::Request&,
                                     httplib::Response& res) {
      res.set_content("<body><p>We collect email.</p></body>", "text/html");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  TimeGateArchive Client(int attempts = 3) {
    TimeGateOptions opts;
    opts.max_attempts = attempts;
    opts.retry_backoff = std::chrono::milliseconds(1);
    opts.timeout = std::chrono::seconds(5);
    opts.app_id = "com.example.app";
    return TimeGateArchive(
        "http://127.0.0.1:" + std::to_string(port_) + "/web/", opts);
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::atomic<int> failures_left_{0};
};

TEST_F(TimeGateTest, FollowsRedirectToMemento) {
  TimeGateArchive client = Client();
  auto ref = client.Nearest(kUrl, Date(2016, 7, 1));
  ASSERT_TRUE(ref);
  EXPECT_EQ(ref->capture_date, Date(2016, 7, 15));
  PolicySnapshot s = client.Fetch(*ref);
  EXPECT_EQ(s.app_id, "com.example.app");
  EXPECT_EQ(ExtractPolicyText(s), "We collect email.");
}

TEST_F(TimeGateTest, NotFoundIsNoCapture) {
  TimeGateArchive client = Client();
  EXPECT_FALSE(client.Nearest("https://example.com/missing", Date(2016, 7, 1)));
}

TEST_F(TimeGateTest, RetriesTransientFailures) {
  failures_left_ = 2;
  TimeGateArchive client = Client(3);
  EXPECT_TRUE(client.Nearest(kUrl, Date(2016, 7, 1)));
  EXPECT_EQ(hits_.load(), 3);
}

TEST_F(TimeGateTest, PersistentFailureIsRetryable) {
  failures_left_ = 10;
  TimeGateArchive client = Client(2);
  try {
    client.Nearest(kUrl, Date(2016, 7, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArchiveUnavailable);
    EXPECT_TRUE(e.retryable());
  }
  EXPECT_EQ(hits_.load(), 2);
}

TEST(TimeGateArchiveTest, RejectsRelativeBase) {
  EXPECT_THROW(TimeGateArchive("web.archive.org/web/"), Error);
}

}  // namespace
}  // namespace complyscope::policy

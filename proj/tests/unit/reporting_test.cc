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

#include "complyscope/reporting.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "complyscope/text.h"
#include "synthetic.h"

namespace complyscope::reporting {
namespace {

using complyscope::testing::FixtureDir;
using pipeline::ViolationReport;

ViolationReport Apk(std::string app, std::int64_t version, Date date,
                    std::size_t third_violations,
                    std::vector<std::string> undisclosed = {}) {
  ViolationReport r;
  r.app_id = std::move(app);
  r.version_code = version;
  r.release_date = date;
  for (std::size_t i = 0; i < third_violations; ++i) {
    PiiLabel l = AllPiiLabels()[i];
    r.leaks.leaks[{l, Party::kThirdParty}] = Provenance::kStatic;
    r.violations.push_back({l, {l}, {l}, Party::kThirdParty, Provenance::kStatic});
  }
  for (const auto& d : undisclosed) r.leaks.third_party_domains.insert(d);
  r.domain_disclosure.undisclosed = std::move(undisclosed);
  r.domain_disclosure.classification = r.domain_disclosure.undisclosed.empty()
                                           ? compliance::DomainClass::kAll
                                           : compliance::DomainClass::kNone;
  return r;
}

TEST(AnnualTest, OneOfFourCompliant) {
  std::vector<ViolationReport> reports = {
      Apk("a", 1, Date(2016, 1, 1), 0), Apk("b", 1, Date(2016, 2, 1), 1),
      Apk("c", 1, Date(2016, 3, 1), 2), Apk("d", 1, Date(2016, 4, 1), 1)};
  auto rows = AggregateAnnual(reports);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].year, 2016);
  EXPECT_EQ(rows[0].apks, 4u);
  EXPECT_DOUBLE_EQ(rows[0].compliant_percent, 25.0);
  EXPECT_DOUBLE_EQ(rows[0].violations_third_per_apk, 1.0);
}

TEST(AnnualTest, EdgeCases) {
  std::vector<ViolationReport> one = {Apk("a", 1, Date(2015, 1, 1), 0)};
  auto rows = AggregateAnnual(one);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].leaks_first_per_apk, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].compliant_percent, 100.0);
  EXPECT_TRUE(AggregateAnnual({}).empty());
}

TEST(DeltaTest, IncreasingAppAndSingleVersion) {
  std::vector<ViolationReport> reports = {Apk("a", 1, Date(2016, 1, 1), 0),
                                          Apk("a", 2, Date(2016, 5, 1), 2),
                                          Apk("b", 1, Date(2016, 6, 1), 3)};
  auto rows = AggregateDeltas(reports);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].apks_compared, 1u);
  EXPECT_DOUBLE_EQ(rows[0].third_increase_percent, 100.0);
  EXPECT_DOUBLE_EQ(rows[0].first_increase_percent, 0.0);
}

TEST(CdfTest, Examples) {
  auto pts = CdfPoints({1, 1, 2});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].first, 1.0);
  EXPECT_DOUBLE_EQ(pts[0].second, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(pts[1].second, 1.0);
  EXPECT_TRUE(CdfPoints({}).empty());
  EXPECT_EQ(CdfPoints({4, 4, 4}), (std::vector<std::pair<double, double>>{{4.0, 1.0}}));
}

TEST(DomainRankTest, Examples) {
  std::vector<ViolationReport> reports = {
      Apk("a", 1, Date(2016, 1, 1), 0, {"x.com"}),
      Apk("b", 1, Date(2016, 1, 1), 0, {"x.com", "b.com"}),
      Apk("c", 1, Date(2016, 1, 1), 0, {"a.com"}), Apk("d", 1, Date(2016, 1, 1), 0)};
  auto ranks = RankUndisclosedDomains(reports);
  ASSERT_EQ(ranks.size(), 3u);
  EXPECT_EQ(ranks[0].domain, "x.com");
  EXPECT_DOUBLE_EQ(ranks[0].percent, 50.0);
  EXPECT_EQ(ranks[0].analyzed_apks, 4u);
  EXPECT_EQ(ranks[1].domain, "a.com");
  EXPECT_EQ(ranks[2].domain, "b.com");
  EXPECT_EQ(RankUndisclosedDomains(reports, 1).size(), 1u);
  std::vector<ViolationReport> clean = {Apk("a", 1, Date(2016, 1, 1), 0)};
  EXPECT_TRUE(RankUndisclosedDomains(clean).empty());
}

class FixtureTest : public ::testing::Test {
 protected:
  void SetUp() override {
    reports_ = pipeline::ReadReports(FixtureDir() / "reporting" / "reports.jsonl");
    want_ = nlohmann::json::parse(
        text::ReadFile((FixtureDir() / "reporting" / "expected.json").string()));
  }
  std::vector<ViolationReport> reports_;
  nlohmann::json want_;
};

TEST_F(FixtureTest, DeltasMatchHandCount) {
  auto rows = AggregateDeltas(reports_);
  ASSERT_EQ(rows.size(), want_["deltas"].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& w = want_["deltas"][i];
    EXPECT_EQ(rows[i].year, w["year"].get<int>());
    EXPECT_EQ(rows[i].apks_compared, w["apks_compared"].get<std::size_t>());
    EXPECT_NEAR(rows[i].third_increase_percent, w["third_increase_percent"].get<double>(), 1e-9);
    EXPECT_NEAR(rows[i].third_decrease_percent, w["third_decrease_percent"].get<double>(), 1e-9);
    EXPECT_NEAR(rows[i].first_increase_percent, w["first_increase_percent"].get<double>(), 1e-9);
    EXPECT_NEAR(rows[i].disclosure_decrease_percent,
                w["disclosure_decrease_percent"].get<double>(), 1e-9);
  }
}

TEST_F(FixtureTest, DomainsMatchHandCount) {
  auto ranks = RankUndisclosedDomains(reports_);
  ASSERT_EQ(ranks.size(), want_["domains"].size());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    EXPECT_EQ(ranks[i].domain, want_["domains"][i]["domain"].get<std::string>());
    EXPECT_EQ(ranks[i].apks, want_["domains"][i]["apks"].get<std::size_t>());
  }
}

TEST_F(FixtureTest, CsvShapes) {
  auto annual = AggregateAnnual(reports_);
  std::string csv = AnnualToCsv(annual);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'),
            static_cast<long>(annual.size() + 1));
  EXPECT_EQ(csv.substr(0, 5), "year,");
  EXPECT_FALSE(DeltasToCsv(AggregateDeltas(reports_)).empty());
  EXPECT_FALSE(CdfToCsv(CdfByYear(reports_)).empty());
  EXPECT_NE(DomainsToCsv(RankUndisclosedDomains(reports_)).find("facebook.com"),
            std::string::npos);
}

}  // namespace
}  // namespace complyscope::reporting

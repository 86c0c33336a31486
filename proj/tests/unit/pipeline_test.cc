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

#include "complyscope/pipeline.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "complyscope/archive_client.h"
#include "complyscope/error.h"
#include "complyscope/text.h"
#include "synthetic.h"

namespace complyscope::pipeline {
namespace {

namespace fs = std::filesystem;
using complyscope::testing::DataDir;
using complyscope::testing::FixtureDir;
using complyscope::testing::TempDir;
using json = nlohmann::json;

constexpr char kFitbit[] = "com.fitbit.FitbitMobile";

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    models_ = new TempDir("pipeline-models");
    auto corpus = complyscope::testing::SyntheticPolicyCorpus();
    auto split = policy::SplitByPolicy(corpus, 250, 100, 0);
    policy::SuiteTrainOptions opts;
    opts.stopwords = features::LoadStopwords(DataDir() / "stopwords_en.txt");
    opts.catalog = features::KeywordCatalog::Load(DataDir() / "keyword_catalog.json");
    policy::TrainSuite(corpus, split, opts).suite.Save(models_->path() / "policy.json");

    auto profile = dynamic::DeviceProfile::Load(Fitbit() / "device_profile.json");
    complyscope::testing::FlowCorpusOptions fopts;
    fopts.app_id = kFitbit;
    auto tree = dynamic::TrainLeakClassifier(
        complyscope::testing::SyntheticFlowCorpus(profile, fopts));
    text::WriteFile((models_->path() / "flows.json").string(), tree.ToJson());
  }

  static void TearDownTestSuite() {
    delete models_;
    models_ = nullptr;
  }

  static fs::path Fitbit() { return FixtureDir() / "fitbit"; }

  json Config(unsigned threads = 1) const {
    fs::path m = models_->path();
    return {{"policy_model", (m / "policy.json").string()},
            {"flow_model", (m / "flows.json").string()},
            {"pii_rules", (DataDir() / "pii_rules.json").string()},
            {"device_profile", (Fitbit() / "device_profile.json").string()},
            {"api_catalog", (DataDir() / "api_catalog.json").string()},
            {"ownership", (DataDir() / "ownership.json").string()},
            {"mapping_table", (DataDir() / "mapping_table.json").string()},
            {"threads", threads}};
  }

  json Release(int version, const std::string& date, bool flows = true) const {
    json r = {{"app_id", kFitbit},
              {"version_code", version},
              {"release_date", date},
              {"apk_dir", (Fitbit() / "apk").string()},
              {"policies", (Fitbit() / "policies").string()}};
    if (flows) r["flows"] = (Fitbit() / "flows.jsonl").string();
    return r;
  }

  DatasetManifest Manifest(json releases, unsigned threads = 1) const {
    json m = {{"config", Config(threads)}, {"releases", std::move(releases)}};
    return ParseManifestJson(m.dump(), tmp_.path());
  }

  static std::string Serialize(const PipelineResult& r) {
    std::string out;
    for (const auto& rep : r.reports) out += ReportToJson(rep) + "\n";
    return out;
  }

  static TempDir* models_;
  TempDir tmp_;
};

TempDir* PipelineTest::models_ = nullptr;

TEST_F(PipelineTest, ThreeReleasesAreStable) {
  json releases = {Release(2140, "2016-06-01"), Release(2145, "2016-11-02"),
                   Release(2150, "2017-02-01")};
  PipelineResult a = RunPipeline(Manifest(releases, 1));
  ASSERT_TRUE(a.failures.empty()) << a.failures[0].message;
  ASSERT_EQ(a.reports.size(), 3u);
  EXPECT_EQ(a.exit_code(), 0);
  PipelineResult b = RunPipeline(Manifest(releases, 3));
  EXPECT_EQ(Serialize(a), Serialize(b));
  for (const auto& r : a.reports) {
    EXPECT_EQ(r.ViolationCount(Party::kThirdParty), 2u);
    EXPECT_EQ(r.policy_capture_date, Date(2016, 12, 1));
  }
}

TEST_F(PipelineTest, ReleaseWithoutFlowsIsStaticOnly) {
  PipelineResult r = RunPipeline(Manifest({Release(2145, "2016-11-02", false)}));
  ASSERT_EQ(r.reports.size(), 1u);
  const ViolationReport& rep = r.reports[0];
  EXPECT_TRUE(rep.static_analyzed);
  EXPECT_FALSE(rep.dynamic_analyzed);
  for (const auto& [label, provenance] : rep.leaks.leaks) {
    EXPECT_EQ(provenance, Provenance::kStatic);
  }
}

TEST_F(PipelineTest, PolicyWithoutValidSegmentIsSkipped) {
  fs::path policies = tmp_.path() / "blank";
  policy::PolicySnapshot s;
  s.app_id = kFitbit;
  s.source_url = "https://example.com/privacy";
  s.capture_date = Date(2016, 10, 1);
  s.raw_html =
      "<body><p>This page describes the general terms of use of the website "
      "and the conditions that apply to the product.</p></body>";
  policy::WriteFixture(s, policies);
  json rel = Release(2145, "2016-09-01");
  rel["policies"] = policies.string();
  PipelineResult r = RunPipeline(Manifest({rel, Release(2150, "2017-02-01")}));
  EXPECT_EQ(r.reports.size(), 1u);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].version_code, 2145);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST_F(PipelineTest, MissingCapturesAreFailures) {
  json rel = Release(2145, "2016-11-02");
  rel["app_id"] = "com.other.app";
  PipelineResult r = RunPipeline(Manifest({rel, Release(2150, "2017-02-01")}));
  EXPECT_EQ(r.reports.size(), 1u);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].error_code, "NoPolicy");
  EXPECT_EQ(r.exit_code(), 2);
}

TEST_F(PipelineTest, OutputRoundTrips) {
  PipelineResult r = RunPipeline(Manifest({Release(2145, "2016-11-02")}));
  WritePipelineOutput(r, tmp_.path() / "out");
  auto back = ReadReports(tmp_.path() / "out" / "reports.jsonl");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(ReportToJson(back[0]), ReportToJson(r.reports[0]));
  EXPECT_TRUE(fs::exists(tmp_.path() / "out" / "ledger.json"));
}

TEST_F(PipelineTest, ManifestValidation) {
  EXPECT_THROW(Manifest({Release(2145, "2016-11-02"), Release(2145, "2016-12-02")}),
               Error);
  json rel = Release(2145, "2016-11-02");
  rel["apk_dir"] = "does/not/exist";
  EXPECT_THROW(Manifest({rel}), Error);
  EXPECT_THROW(ParseManifestJson("{", tmp_.path()), Error);
}

}  // namespace
}  // namespace complyscope::pipeline

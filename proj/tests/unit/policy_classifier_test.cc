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

#include "complyscope/policy_classifier.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "complyscope/app350.h"
#include "complyscope/error.h"
#include "synthetic.h"

namespace complyscope::policy {
namespace {

using complyscope::testing::DataDir;
using complyscope::testing::SyntheticPolicyCorpus;
using Labels = std::set<std::string>;

constexpr PiiLabel kEmail = PiiLabel::kContactEMailAddress;

SuiteTrainOptions Options() {
  SuiteTrainOptions opts;
  opts.stopwords = features::LoadStopwords(DataDir() / "stopwords_en.txt");
  opts.catalog = features::KeywordCatalog::Load(DataDir() / "keyword_catalog.json");
  return opts;
}

const TrainedSuite& Synthetic() {
  static const TrainedSuite* trained = [] {
    auto corpus = SyntheticPolicyCorpus();
    auto split = SplitByPolicy(corpus, 250, 100, 0);
    return new TrainedSuite(TrainSuite(corpus, split, Options()));
  }();
  return *trained;
}

TEST(DerivePracticesTest, PerformedWins) {
  DerivedPractices d = DerivePractices(
      {"Contact_E_Mail_Address", "Performed", "Not_Performed", "1stParty"});
  EXPECT_TRUE(d.valid);
  EXPECT_EQ(d.practices, (std::set<PracticeDisclosure>{
                             {kEmail, Procedure::kPerformed, Party::kFirstParty}}));
}

TEST(DerivePracticesTest, BothParties) {
  DerivedPractices d =
      DerivePractices({"Identifier_Cookie", "Performed", "1stParty", "3rdParty"});
  EXPECT_EQ(d.practices.size(), 2u);
}

TEST(DerivePracticesTest, NoPiiIsInvalid) {
  DerivedPractices d = DerivePractices({"Performed", "1stParty"});
  EXPECT_FALSE(d.valid);
  EXPECT_TRUE(d.practices.empty());
}

TEST(DerivePracticesTest, TruthTable) {
  const std::vector<std::string> flags = {"Performed", "Not_Performed",
                                          "1stParty", "3rdParty"};
  for (int pii = 0; pii < 2; ++pii) {
    for (int mask = 0; mask < 16; ++mask) {
      Labels labels;
      if (pii) labels.insert("Location_GPS");
      for (int b = 0; b < 4; ++b) {
        if (mask & (1 << b)) labels.insert(flags[b]);
      }
      DerivedPractices d = DerivePractices(labels);
      bool proc = mask & 3, party = mask & 12;
      EXPECT_EQ(d.valid, pii && proc && party);
      EXPECT_EQ(d.practices.empty(), !d.valid);
      std::size_t parties = ((mask >> 2) & 1) + ((mask >> 3) & 1);
      if (d.valid) EXPECT_EQ(d.practices.size(), parties);
      for (const auto& p : d.practices) {
        EXPECT_EQ(p.procedure == Procedure::kNotPerformed, !(mask & 1));
      }
    }
  }
}

TEST(AggregateTest, UnionAndCounts) {
  std::vector<Labels> segs = {
      {"Contact_E_Mail_Address", "Performed", "1stParty"},
      {"Location", "Performed", "3rdParty"},
      {"Contact_E_Mail_Address", "Performed", "1stParty"},
      {"Performed"}};
  PolicyDisclosureProfile p = AggregateLabelSets("pid", segs);
  EXPECT_EQ(p.disclosed.size(), 2u);
  EXPECT_EQ(p.valid_segment_count, 3u);
  EXPECT_EQ(p.total_segment_count, 4u);

  std::vector<Labels> a(segs.begin(), segs.begin() + 1);
  std::vector<Labels> b(segs.begin() + 1, segs.end());
  auto left = AggregateLabelSets("pid", a).disclosed;
  auto right = AggregateLabelSets("pid", b).disclosed;
  left.insert(right.begin(), right.end());
  EXPECT_EQ(left, p.disclosed);

  PolicyDisclosureProfile none = AggregateLabelSets("x", std::vector<Labels>{{"Performed"}});
  EXPECT_EQ(none.valid_segment_count, 0u);
  EXPECT_TRUE(none.disclosed.empty());
  PolicyDisclosureProfile back = ProfileFromJson(ProfileToJson(p));
  EXPECT_EQ(back.disclosed, p.disclosed);
  EXPECT_EQ(back.valid_segment_count, 3u);
}

TEST(EvaluateTest, PerfectAndConstantConventions) {
  std::vector<Labels> gold = {{"Location"}, {}, {"Location", "Performed"}};
  EvaluationReport perfect = EvaluatePredictions(gold, gold);
  EXPECT_DOUBLE_EQ(perfect.metrics("Location").f1, 1.0);
  EXPECT_DOUBLE_EQ(perfect.metrics("Location").accuracy, 1.0);

  std::vector<Labels> none(3);
  EvaluationReport neg = EvaluatePredictions(none, none);
  EXPECT_DOUBLE_EQ(neg.metrics("Contact_ZIP").accuracy, 1.0);
  EXPECT_DOUBLE_EQ(neg.metrics("Contact_ZIP").precision, 0.0);
  EXPECT_EQ(neg.models.size(), 32u);
}

TEST(SplitTest, GroupsByPolicy) {
  std::vector<AnnotatedSegment> corpus;
  for (int p = 0; p < 10; ++p) {
    for (int s = 0; s < 3; ++s) {
      corpus.push_back({"p" + std::to_string(p), "text", {}});
    }
  }
  CorpusSplit split = SplitByPolicy(corpus, 6, 4, 9);
  EXPECT_EQ(split.train.size(), 18u);
  EXPECT_EQ(split.test.size(), 12u);
  std::set<std::string> train_ids;
  for (auto i : split.train) train_ids.insert(corpus[i].policy_id);
  for (auto i : split.test) EXPECT_FALSE(train_ids.count(corpus[i].policy_id));
  EXPECT_THROW(SplitByPolicy(corpus, 8, 4, 9), Error);
}

TEST(TrainSuiteTest, RejectsOverlap) {
  auto corpus = SyntheticPolicyCorpus({.policies = 5, .segments_per_policy = 2});
  CorpusSplit split{{0, 1, 2}, {2, 3}};
  EXPECT_THROW(TrainSuite(corpus, split, Options()), Error);
}

TEST(TrainSuiteTest, EmptyTestSplitNotComputed) {
  auto corpus = SyntheticPolicyCorpus({.policies = 20, .segments_per_policy = 4});
  CorpusSplit split;
  for (std::size_t i = 0; i < corpus.size(); ++i) split.train.push_back(i);
  TrainedSuite t = TrainSuite(corpus, split, Options());
  EXPECT_FALSE(t.report.computed);
  EXPECT_EQ(t.suite.models().size(), 32u);
}

TEST(SyntheticSuiteTest, ClassifiesEmailSharing) {
  const TrainedSuite& t = Synthetic();
  EXPECT_TRUE(t.report.computed);
  EXPECT_GE(t.report.macro_f1, 0.95);
  EXPECT_EQ(ClassifySegment(t.suite, "we share your email address with advertisers"),
            (Labels{"Contact_E_Mail_Address", "Performed", "3rdParty"}));
  for (const auto& l : ClassifySegment(t.suite, "")) {
    EXPECT_TRUE(t.suite.model(l).constant);
  }
}

TEST(SyntheticSuiteTest, SerializationRoundTrip) {
  const TrainedSuite& t = Synthetic();
  std::string json = t.suite.ToJson();
  ClassifierSuite back = ClassifierSuite::FromJson(json);
  EXPECT_EQ(back.ToJson(), json);
  EXPECT_EQ(back.feature_space_hash(), t.suite.feature_space_hash());
  std::string seg = "we never share your gps location with third parties";
  EXPECT_EQ(ClassifySegment(back, seg), ClassifySegment(t.suite, seg));
}

TEST(SyntheticSuiteTest, TamperedFeatureSpaceRefused) {
  std::string json = Synthetic().suite.ToJson();
  std::size_t at = json.find("\"feature_space_hash\"");
  ASSERT_NE(at, std::string::npos);
  std::size_t quote = json.find('"', json.find(':', at) + 1);
  json[quote + 1] = json[quote + 1] == 'a' ? 'b' : 'a';
  try {
    ClassifierSuite::FromJson(json);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFeatureSpaceMismatch);
  }
}

TEST(SuiteTest, CardinalityEnforced) {
  const ClassifierSuite& s = Synthetic().suite;
  std::vector<ml::LinearModel> models = s.models();
  models.pop_back();
  EXPECT_THROW(ClassifierSuite(s.vocabulary(), s.catalog(), models), Error);
}

TEST(AnnotatedTest, JsonlRoundTrip) {
  std::string line =
      R"({"policy_id":"p","text":"We use cookies.","triples":[["Identifier_Cookie","Performed","3rdParty"]]})"
      "\n";
  auto corpus = ParseAnnotatedJsonl(line);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(TargetLabels(corpus[0].gold),
            (Labels{"Identifier_Cookie", "Performed", "3rdParty"}));
  EXPECT_EQ(ParseAnnotatedJsonl(AnnotatedToJsonl(corpus))[0].gold, corpus[0].gold);
  EXPECT_THROW(ParseAnnotatedJsonl(R"({"text":"x","triples":[["Bogus","Performed","3rdParty"]]})"),
               Error);
}

TEST(App350Test, ConvertsPracticesAndSkipsOthers) {
  App350Conversion c = ConvertApp350Yaml(R"(policy_id: 1234
segments:
  - segment_text: We use cookies to serve ads.
    annotations:
      - practice: Identifier_Cookie_or_similar_Tech_3rdParty
        modality: PERFORMED
      - practice: SSO
        modality: PERFORMED
  - segment_text: We do not collect your location.
    annotations:
      - practice: Location_1stParty
        modality: NOT_PERFORMED
  - segment_text: Contact us.
    annotations: []
)");
  ASSERT_EQ(c.segments.size(), 3u);
  EXPECT_EQ(c.segments[0].policy_id, "1234");
  EXPECT_EQ(c.segments[0].gold,
            (std::set<PracticeDisclosure>{
                {PiiLabel::kIdentifierCookie, Procedure::kPerformed, Party::kThirdParty}}));
  EXPECT_EQ(c.segments[1].gold.begin()->procedure, Procedure::kNotPerformed);
  EXPECT_TRUE(c.segments[2].gold.empty());
  EXPECT_EQ(c.skipped_practices.at("SSO/PERFORMED"), 1u);
  EXPECT_THROW(ConvertApp350Yaml("policy_id: 1\n"), Error);
}

}  // namespace
}  // namespace complyscope::policy

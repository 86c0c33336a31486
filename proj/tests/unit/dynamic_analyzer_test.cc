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

#include "complyscope/dynamic_analyzer.h"

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "complyscope/error.h"
#include "synthetic.h"

namespace complyscope::dynamic {
namespace {

using complyscope::testing::DataDir;
using complyscope::testing::FixtureDir;
using Labels = std::set<DynamicLeakLabel>;

const PiiRuleSet& Rules() {
  static const PiiRuleSet rules = PiiRuleSet::Load(DataDir() / "pii_rules.json");
  return rules;
}

DeviceProfile Profile() {
  return DeviceProfile::Load(FixtureDir() / "fitbit" / "device_profile.json");
}

FlowRecord Get(std::string uri, std::string body = {}) {
  FlowRecord f;
  f.dst_host = "x.com";
  f.method = body.empty() ? "GET" : "POST";
  f.uri = std::move(uri);
  f.headers = {{"Host", "x.com"}};
  f.post_body = std::move(body);
  return f;
}

TEST(FlowTest, FeatureTextLayout) {
  EXPECT_EQ(FlowFeatureText(Get("/track?imei=123")), "/track?imei=123  Host=x.com");
  FlowRecord ref = Get("/a", "k=v");
  ref.headers.push_back({"Referer", "http://r.com/"});
  EXPECT_EQ(FlowFeatureText(ref), "/a http://r.com/ k=v Host=x.com");
}

TEST(FlowTest, BinaryBodyIsSanitized) {
  std::string text = FlowFeatureText(Get("/u", std::string("\xff\xfe\x00z", 4)));
  EXPECT_NE(text.find("\xef\xbf\xbd"), std::string::npos);
}

TEST(FlowTest, JsonRoundTrip) {
  auto flows = LoadFlows(FixtureDir() / "fitbit" / "flows.jsonl");
  ASSERT_EQ(flows.size(), 4u);
  EXPECT_EQ(flows[1].post_body.substr(0, 6), "event=");
  FlowRecord back = ParseFlowJson(FlowToJson(flows[1]));
  EXPECT_EQ(back.post_body, flows[1].post_body);
  EXPECT_EQ(back.headers, flows[1].headers);
  EXPECT_EQ(HeaderValue(back, "content-type"), "application/x-www-form-urlencoded");
}

TEST(FlowTest, ParseErrors) {
  EXPECT_THROW(ParseFlowJson(R"({"uri": "/"})"), Error);
  EXPECT_THROW(ParseFlowJson(R"({"dst_host": "a", "post_body_b64": "@@"})"), Error);
  EXPECT_THROW(
      ParseFlowJson(R"({"dst_host": "a", "headers": {"Host": "a", "host": "b"}})"),
      Error);
}

TEST(FlowTest, KeyValues) {
  FlowRecord f = Get("/p?a=1&b=x%40y", R"({"user": {"email": "e@x.org"}})");
  auto kv = ParseKeyValues(f);
  EXPECT_NE(std::find(kv.begin(), kv.end(), KeyValue{"b", "x@y"}), kv.end());
  EXPECT_NE(std::find(kv.begin(), kv.end(), KeyValue{"user.email", "e@x.org"}),
            kv.end());
  EXPECT_EQ(FlowTokens("/A?imei=1 X"), (std::vector<std::string>{"imei"}));
}

TEST(TreeTest, SeparableSplitsOnOneToken) {
  std::vector<std::vector<std::string>> tokens;
  std::vector<bool> labels;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> t = {"host", "v" + std::to_string(i % 5)};
    if (i % 2) t.push_back("imei");
    std::sort(t.begin(), t.end());
    tokens.push_back(t);
    labels.push_back(i % 2);
  }
  std::unique_ptr<bool[]> raw(new bool[labels.size()]);
  for (std::size_t i = 0; i < labels.size(); ++i) raw[i] = labels[i];
  DecisionTree tree = DecisionTree::Train(tokens, {raw.get(), labels.size()});
  EXPECT_EQ(tree.depth(), 1u);
  EXPECT_EQ(tree.nodes()[0].token, "imei");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    EXPECT_EQ(tree.Predict(tokens[i]), labels[i]);
  }
  // Unseen tokens fall to the absent branch.
  EXPECT_FALSE(tree.Predict(std::vector<std::string>{"zzz"}));
  EXPECT_EQ(DecisionTree::FromJson(tree.ToJson()).ToJson(), tree.ToJson());
}

TEST(TreeTest, ConsistentCorpusFitsExactly) {
  std::mt19937_64 rng(4);
  std::vector<std::vector<std::string>> tokens;
  std::set<std::vector<std::string>> seen;
  std::vector<char> labels;
  while (tokens.size() < 200) {
    std::vector<std::string> t;
    for (int k = 0; k < 8; ++k) {
      if (rng() % 2) t.push_back("t" + std::to_string(k));
    }
    if (!seen.insert(t).second) continue;
    tokens.push_back(t);
    labels.push_back(static_cast<char>(rng() % 2));
  }
  std::unique_ptr<bool[]> raw(new bool[labels.size()]);
  for (std::size_t i = 0; i < labels.size(); ++i) raw[i] = labels[i];
  DecisionTree tree = DecisionTree::Train(
      tokens, {raw.get(), labels.size()}, TreeOptions{.min_node_size = 1});
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    EXPECT_EQ(tree.Predict(tokens[i]), static_cast<bool>(labels[i]));
  }
  DecisionTree again = DecisionTree::Train(
      tokens, {raw.get(), labels.size()}, TreeOptions{.min_node_size = 1});
  EXPECT_EQ(again.ToJson(), tree.ToJson());
}

TEST(TreeTest, SingleClassRejected) {
  std::vector<std::vector<std::string>> tokens = {{"a"}, {"b"}};
  bool labels[] = {true, true};
  try {
    DecisionTree::Train(tokens, labels);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingleClassCorpus);
  }
}

TEST(PiiRulesTest, KnownValuesAndHashes) {
  DeviceProfile p = Profile();
  EXPECT_EQ(ExtractPii(Get("/x?device_id=9774d56d682e549c"), Rules(), p),
            (Labels{DynamicLeakLabel::kAndroidId}));
  std::string digest = Sha256Hex("358240051111110");
  EXPECT_EQ(ExtractPii(Get("/x", "payload " + digest), Rules(), p),
            (Labels{DynamicLeakLabel::kImei}));
  EXPECT_EQ(ExtractPii(Get("/x?lat=42.36&lon=-71.05"), Rules(), p),
            (Labels{DynamicLeakLabel::kLocation}));
  EXPECT_TRUE(ExtractPii(Get("/x?device_id=0000111122223333"), Rules(), p).empty());
}

TEST(PiiRulesTest, RejectsBadRules) {
  EXPECT_THROW(PiiRuleSet::FromJson(R"([{"label": "imei", "keys": ["("]}])"), Error);
  EXPECT_THROW(PiiRuleSet::FromJson(R"([{"label": "serial", "keys": ["s"]}])"), Error);
  EXPECT_THROW(PiiRuleSet::FromJson(R"([{"label": "imei"}])"), Error);
}

TEST(AnalyzeFlowsTest, SyntheticTreeOnFixture) {
  DeviceProfile p = Profile();
  auto corpus = complyscope::testing::SyntheticFlowCorpus(p);
  DecisionTree tree = TrainLeakClassifier(corpus);
  auto flows = LoadFlows(FixtureDir() / "fitbit" / "flows.jsonl");
  auto leaks = AnalyzeFlows(flows, tree, Rules(), p);
  std::set<std::pair<std::string, DynamicLeakLabel>> got;
  for (const auto& l : leaks) got.insert({l.domain, l.label});
  EXPECT_TRUE(got.count({"facebook.com", DynamicLeakLabel::kSimId}));
  EXPECT_TRUE(got.count({"facebook.com", DynamicLeakLabel::kAndroidId}));
  EXPECT_TRUE(got.count({"fitbit.com", DynamicLeakLabel::kEmail}));
  EXPECT_FALSE(PredictLeak(tree, flows[3]));
}

}  // namespace
}  // namespace complyscope::dynamic

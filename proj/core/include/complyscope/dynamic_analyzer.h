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

#ifndef COMPLYSCOPE_DYNAMIC_ANALYZER_H_
#define COMPLYSCOPE_DYNAMIC_ANALYZER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "complyscope/digest.h"
#include "complyscope/labels.h"

namespace complyscope::dynamic {

struct FlowRecord {
  std::string app_id;
  std::int64_t version_code = 0;
  std::string timestamp;
  std::string dst_host;
  std::string method;
  std::string uri;
  std::vector<std::pair<std::string, std::string>> headers;  // received order
  std::string post_body;                                      // raw bytes
  std::optional<bool> leak;  // set in annotated corpora
};

// {"app_id","version_code","ts","dst_host","method","uri","headers":{...},
//  "post_body_b64"[,"leak"]}. Throws Error(kParse) on a missing dst_host,
// bad base64 or duplicate header names (compared case-insensitively).
FlowRecord ParseFlowJson(std::string_view line);
std::vector<FlowRecord> ParseFlowJsonl(std::string_view jsonl);
std::vector<FlowRecord> LoadFlows(const std::filesystem::path& path);
std::string FlowToJson(const FlowRecord& flow);

std::optional<std::string> HeaderValue(const FlowRecord& flow,
                                       std::string_view name);

// uri, Referer value (empty if absent), body as sanitized UTF-8 (omitted
// when empty), then every other header as key=value, space separated.
std::string FlowFeatureText(const FlowRecord& flow);

// Lowercased alphanumeric runs of length >= 2, sorted and unique.
std::vector<std::string> FlowTokens(std::string_view feature_text);

struct KeyValue {
  std::string key;  // dotted path for nested JSON
  std::string value;

  friend auto operator<=>(const KeyValue&, const KeyValue&) = default;
};

// Pairs from the uri query and the body (JSON flattened by dotted path,
// urlencoded forms, and loose key:value / key=value text). Keys and values
// are percent-decoded where they came from urlencoded text.
std::vector<KeyValue> ParseKeyValues(const FlowRecord& flow);

struct TreeOptions {
  std::size_t min_node_size = 2;
  std::size_t max_depth = 30;
};

// Binary token-presence decision tree grown with the gain-ratio criterion.
class DecisionTree {
 public:
  struct Node {
    bool leaf = true;
    bool label = false;      // majority class, ties negative
    std::string token;       // internal nodes only
    int present = -1;        // child index when the token occurs
    int absent = -1;
    std::size_t samples = 0;
    std::size_t positives = 0;
  };

  DecisionTree() = default;

  // `tokens[i]` must be sorted and unique. Throws Error(kSingleClassCorpus)
  // unless both classes occur, Error(kInvalidArgument) on size mismatch.
  static DecisionTree Train(std::span<const std::vector<std::string>> tokens,
                            std::span<const bool> labels,
                            const TreeOptions& options = {});

  bool Predict(std::span<const std::string> sorted_tokens) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t depth() const;
  const TreeOptions& options() const { return options_; }

  // Preorder node list.
  std::string ToJson() const;
  static DecisionTree FromJson(std::string_view json);

 private:
  std::vector<Node> nodes_;
  TreeOptions options_;
};

// Trains on flows carrying a `leak` annotation.
DecisionTree TrainLeakClassifier(std::span<const FlowRecord> flows,
                                 const TreeOptions& options = {});
bool PredictLeak(const DecisionTree& tree, const FlowRecord& flow);

enum class RuleKind { kLiteral, kKnownDeviceValue, kFormat };

std::string_view RuleKindName(RuleKind kind);

struct PiiRule {
  DynamicLeakLabel label;
  RuleKind kind = RuleKind::kLiteral;
  std::vector<std::string> key_patterns;   // regex, case-insensitive search
  std::string value_pattern;               // Format: value must match
  std::vector<std::string> text_patterns;  // Format: search feature text
  std::string profile_field;               // KnownDeviceValue; default label
  bool hash = true;                        // also match hex digests
};

// True values of the capture device, keyed by dynamic label name.
class DeviceProfile {
 public:
  DeviceProfile() = default;
  explicit DeviceProfile(std::map<std::string, std::string, std::less<>> values,
                         std::vector<HashFamily> hashes = {
                             HashFamily::kMd5, HashFamily::kSha1,
                             HashFamily::kSha256})
      : values_(std::move(values)), hashes_(std::move(hashes)) {}

  // {"imei": "...", ..., "hashes": ["md5","sha1","sha256"]}
  static DeviceProfile FromJson(std::string_view json);
  static DeviceProfile Load(const std::filesystem::path& path);

  std::optional<std::string> Get(std::string_view field) const;
  const std::vector<HashFamily>& hashes() const { return hashes_; }
  const std::map<std::string, std::string, std::less<>>& values() const {
    return values_;
  }

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::vector<HashFamily> hashes_ = {HashFamily::kMd5, HashFamily::kSha1,
                                     HashFamily::kSha256};
};

class PiiRuleSet {
 public:
  PiiRuleSet();
  ~PiiRuleSet();
  PiiRuleSet(PiiRuleSet&&) noexcept;
  PiiRuleSet& operator=(PiiRuleSet&&) noexcept;

  // [{"label":"imei","keys":["(^|_)imei$"],"kind":"KnownDeviceValue"}, ...]
  // Optional fields: "value_pattern", "patterns", "profile_field", "hash".
  // Throws Error(kParse) for bad regexes, Error(kUnknownDynamicLabel), or
  // Error(kInvalidArgument) for a rule without any pattern.
  static PiiRuleSet FromJson(std::string_view json);
  static PiiRuleSet Load(const std::filesystem::path& path);

  const std::vector<PiiRule>& rules() const;

  std::set<DynamicLeakLabel> Match(const FlowRecord& flow,
                                   const DeviceProfile& profile) const;

 private:
  struct Compiled;
  std::unique_ptr<Compiled> compiled_;
};

// Union of labels whose rules fire on the flow.
std::set<DynamicLeakLabel> ExtractPii(const FlowRecord& flow,
                                      const PiiRuleSet& rules,
                                      const DeviceProfile& profile);

struct DynamicLeak {
  DynamicLeakLabel label;
  std::string dst_host;
  std::string domain;  // registrable domain of dst_host
};

// Classifies every flow and extracts PII from those predicted to leak.
std::vector<DynamicLeak> AnalyzeFlows(std::span<const FlowRecord> flows,
                                      const DecisionTree& tree,
                                      const PiiRuleSet& rules,
                                      const DeviceProfile& profile);

}  // namespace complyscope::dynamic

#endif  // COMPLYSCOPE_DYNAMIC_ANALYZER_H_

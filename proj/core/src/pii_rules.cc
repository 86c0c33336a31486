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

#include <regex>

#include "complyscope/dynamic_analyzer.h"
#include "complyscope/error.h"
#include "complyscope/ownership.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::dynamic {

namespace {

std::regex CompileOrThrow(const std::string& pattern) {
  try {
    return std::regex(pattern, std::regex::ECMAScript | std::regex::icase |
                                   std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::kParse, "bad rule pattern '" + pattern + "': " + e.what());
  }
}

std::optional<RuleKind> ParseRuleKind(std::string_view s) {
  if (s == "Literal") return RuleKind::kLiteral;
  if (s == "KnownDeviceValue") return RuleKind::kKnownDeviceValue;
  if (s == "Format") return RuleKind::kFormat;
  return std::nullopt;
}

std::optional<HashFamily> ParseHashFamily(std::string_view s) {
  std::string l = text::AsciiLower(s);
  if (l == "md5") return HashFamily::kMd5;
  if (l == "sha1" || l == "sha-1") return HashFamily::kSha1;
  if (l == "sha256" || l == "sha-256") return HashFamily::kSha256;
  return std::nullopt;
}

std::string_view LeafKey(std::string_view key) {
  std::size_t dot = key.rfind('.');
  return dot == std::string_view::npos ? key : key.substr(dot + 1);
}

}  // namespace

std::string_view RuleKindName(RuleKind kind) {
  switch (kind) {
    case RuleKind::kLiteral:
      return "Literal";
    case RuleKind::kKnownDeviceValue:
      return "KnownDeviceValue";
    case RuleKind::kFormat:
      return "Format";
  }
  return "?";
}

struct PiiRuleSet::Compiled {
  struct Rule {
    std::vector<std::regex> keys;
    std::optional<std::regex> value;
    std::vector<std::regex> text;
  };
  std::vector<PiiRule> rules;
  std::vector<Rule> regexes;
};

PiiRuleSet::PiiRuleSet() : compiled_(std::make_unique<Compiled>()) {}
PiiRuleSet::~PiiRuleSet() = default;
PiiRuleSet::PiiRuleSet(PiiRuleSet&&) noexcept = default;
PiiRuleSet& PiiRuleSet::operator=(PiiRuleSet&&) noexcept = default;

const std::vector<PiiRule>& PiiRuleSet::rules() const { return compiled_->rules; }

PiiRuleSet PiiRuleSet::FromJson(std::string_view s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("PII rules: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::kParse, "PII rules must be a list");
  PiiRuleSet set;
  try {
    for (const auto& jr : j) {
      PiiRule r;
      r.label = ParseDynamicLabelOrThrow(jr.at("label").get<std::string>());
      std::string kind = jr.value("kind", "Literal");
      auto k = ParseRuleKind(kind);
      if (!k) throw Error(ErrorCode::kParse, "PII rules: unknown kind " + kind);
      r.kind = *k;
      if (jr.contains("keys")) r.key_patterns = jr["keys"].get<std::vector<std::string>>();
      r.value_pattern = jr.value("value_pattern", "");
      if (jr.contains("patterns")) {
        r.text_patterns = jr["patterns"].get<std::vector<std::string>>();
      }
      r.profile_field = jr.value("profile_field", std::string(DynamicLabelName(r.label)));
      r.hash = jr.value("hash", true);
      if (r.key_patterns.empty() && r.text_patterns.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "PII rule for " + std::string(DynamicLabelName(r.label)) +
                        " has no pattern");
      }
      Compiled::Rule c;
      for (const auto& p : r.key_patterns) c.keys.push_back(CompileOrThrow(p));
      if (!r.value_pattern.empty()) c.value = CompileOrThrow(r.value_pattern);
      for (const auto& p : r.text_patterns) c.text.push_back(CompileOrThrow(p));
      set.compiled_->rules.push_back(std::move(r));
      set.compiled_->regexes.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("PII rules: ") + e.what());
  }
  return set;
}

PiiRuleSet PiiRuleSet::Load(const std::filesystem::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

DeviceProfile DeviceProfile::FromJson(std::string_view s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("device profile: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "device profile must be an object");
  std::map<std::string, std::string, std::less<>> values;
  std::vector<HashFamily> hashes = {HashFamily::kMd5, HashFamily::kSha1,
                                    HashFamily::kSha256};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "hashes") {
      hashes.clear();
      for (const auto& h : it.value()) {
        auto f = ParseHashFamily(h.get<std::string>());
        if (!f) throw Error(ErrorCode::kParse, "device profile: unknown hash " + h.dump());
        hashes.push_back(*f);
      }
      continue;
    }
    std::string v = it.value().is_string() ? it.value().get<std::string>()
                                           : it.value().dump();
    if (!v.empty()) values.emplace(it.key(), std::move(v));
  }
  return DeviceProfile(std::move(values), std::move(hashes));
}

DeviceProfile DeviceProfile::Load(const std::filesystem::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

std::optional<std::string> DeviceProfile::Get(std::string_view field) const {
  auto it = values_.find(field);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::set<DynamicLeakLabel> PiiRuleSet::Match(const FlowRecord& flow,
                                             const DeviceProfile& profile) const {
  std::set<DynamicLeakLabel> out;
  const std::vector<KeyValue> pairs = ParseKeyValues(flow);
  const std::string feature = FlowFeatureText(flow);
  const std::string lower = text::AsciiLower(feature);
  const std::string decoded = text::AsciiLower(text::PercentDecode(feature));
  auto contains = [&](const std::string& needle) {
    return !needle.empty() && (lower.find(needle) != std::string::npos ||
                               decoded.find(needle) != std::string::npos);
  };

  for (std::size_t i = 0; i < compiled_->rules.size(); ++i) {
    const PiiRule& rule = compiled_->rules[i];
    const Compiled::Rule& rx = compiled_->regexes[i];
    if (out.contains(rule.label)) continue;
    bool fired = false;
    for (const auto& kv : pairs) {
      if (fired) break;
      if (kv.value.empty()) continue;
      bool key_hit = false;
      for (const auto& k : rx.keys) {
        if (std::regex_search(kv.key, k) ||
            std::regex_search(std::string(LeafKey(kv.key)), k)) {
          key_hit = true;
          break;
        }
      }
      if (!key_hit) continue;
      fired = !rx.value || std::regex_search(kv.value, *rx.value);
    }
    if (!fired) {
      for (const auto& t : rx.text) {
        if (std::regex_search(feature, t)) {
          fired = true;
          break;
        }
      }
    }
    if (!fired && rule.kind == RuleKind::kKnownDeviceValue) {
      if (auto value = profile.Get(rule.profile_field)) {
        fired = contains(text::AsciiLower(*value));
        if (rule.hash) {
          for (HashFamily h : profile.hashes()) {
            if (fired) break;
            fired = contains(HexDigest(h, *value));
          }
        }
      }
    }
    if (fired) out.insert(rule.label);
  }
  return out;
}

std::set<DynamicLeakLabel> ExtractPii(const FlowRecord& flow,
                                      const PiiRuleSet& rules,
                                      const DeviceProfile& profile) {
  return rules.Match(flow, profile);
}

std::vector<DynamicLeak> AnalyzeFlows(std::span<const FlowRecord> flows,
                                      const DecisionTree& tree,
                                      const PiiRuleSet& rules,
                                      const DeviceProfile& profile) {
  std::vector<DynamicLeak> out;
  for (const auto& f : flows) {
    if (!PredictLeak(tree, f)) continue;
    for (DynamicLeakLabel l : ExtractPii(f, rules, profile)) {
      out.push_back({l, f.dst_host, RegistrableDomain(f.dst_host)});
    }
  }
  return out;
}

}  // namespace complyscope::dynamic

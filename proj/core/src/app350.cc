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

#include "complyscope/app350.h"

#include <algorithm>

#include <yaml-cpp/yaml.h>

#include "complyscope/error.h"
#include "complyscope/text.h"

namespace complyscope::policy {

namespace {

struct PracticeAlias {
  std::string_view from;
  std::string_view to;
};

constexpr PracticeAlias kAliases[] = {
    {"Identifier_Cookie_or_similar_Tech", "Identifier_Cookie"},
};

std::optional<PiiLabel> ResolvePractice(std::string_view name) {
  for (const auto& a : kAliases) {
    if (name == a.from) name = a.to;
  }
  return ParsePiiLabel(name);
}

void Merge(App350Conversion& into, App350Conversion&& from) {
  for (auto& s : from.segments) into.segments.push_back(std::move(s));
  for (auto& [k, v] : from.skipped_practices) into.skipped_practices[k] += v;
}

}  // namespace

App350Conversion ConvertApp350Yaml(std::string_view yaml,
                                   std::string_view fallback_policy_id) {
  App350Conversion out;
  try {
    YAML::Node root = YAML::Load(std::string(yaml));
    std::string policy_id(fallback_policy_id);
    if (root["policy_id"]) policy_id = root["policy_id"].as<std::string>();
    const YAML::Node segments = root["segments"];
    if (!segments || !segments.IsSequence()) {
      throw Error(ErrorCode::kParse, "APP-350 document has no segments list");
    }
    for (const auto& seg : segments) {
      AnnotatedSegment a;
      a.policy_id = policy_id;
      a.text = seg["segment_text"].as<std::string>("");
      for (const auto& ann : seg["annotations"]) {
        std::string practice = ann["practice"].as<std::string>("");
        std::string modality = ann["modality"].as<std::string>("");
        std::optional<Party> party;
        if (text::EndsWith(practice, "_1stParty")) party = Party::kFirstParty;
        if (text::EndsWith(practice, "_3rdParty")) party = Party::kThirdParty;
        std::optional<PiiLabel> pii;
        if (party) pii = ResolvePractice(std::string_view(practice).substr(0, practice.size() - 9));
        std::optional<Procedure> proc;
        if (modality == "PERFORMED") proc = Procedure::kPerformed;
        if (modality == "NOT_PERFORMED") proc = Procedure::kNotPerformed;
        if (!pii || !proc) {
          ++out.skipped_practices[practice + "/" + modality];
          continue;
        }
        a.gold.insert({*pii, *proc, *party});
      }
      out.segments.push_back(std::move(a));
    }
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("APP-350 YAML: ") + e.what());
  }
  return out;
}

App350Conversion ConvertApp350Directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (auto it = std::filesystem::recursive_directory_iterator(dir, ec);
       !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
    auto ext = it->path().extension();
    if (it->is_regular_file() && (ext == ".yml" || ext == ".yaml")) {
      files.push_back(it->path());
    }
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot walk " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  App350Conversion out;
  for (const auto& f : files) {
    Merge(out, ConvertApp350Yaml(text::ReadFile(f.string()), f.stem().string()));
  }
  return out;
}

}  // namespace complyscope::policy

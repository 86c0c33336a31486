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

#include <algorithm>

#include "complyscope/compliance.h"
#include "complyscope/error.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::compliance {

namespace {

std::optional<PiiLabel> ParseStaticName(std::string_view name) {
  std::string s(text::Trim(name));
  std::replace(s.begin(), s.end(), ' ', '_');
  if (text::StartsWith(s, "Demographics")) s.erase(11, 1);
  return ParsePiiLabel(s);
}

}  // namespace

MappingTable::MappingTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  std::map<PiiLabel, std::size_t> owner;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    if (row.static_labels.empty() || row.dynamic_labels.empty()) {
      throw Error(ErrorCode::kInvalidMappingTable,
                  "mapping row " + std::to_string(r) + " is empty on one side");
    }
    for (PiiLabel l : row.static_labels) {
      auto [it, inserted] = owner.emplace(l, r);
      if (!inserted && it->second != r) {
        throw Error(ErrorCode::kInvalidMappingTable,
                    std::string(PiiLabelName(l)) +
                        " appears in two rows; groups would not partition");
      }
    }
    for (DynamicLeakLabel d : row.dynamic_labels) {
      forward_[d].insert(row.static_labels.begin(), row.static_labels.end());
    }
  }
  for (DynamicLeakLabel d : AllDynamicLabels()) {
    if (!forward_.contains(d)) {
      throw Error(ErrorCode::kInvalidMappingTable,
                  "dynamic label " + std::string(DynamicLabelName(d)) +
                      " has no mapping");
    }
  }
  for (PiiLabel l : AllPiiLabels()) {
    if (group_index_.contains(l)) continue;
    std::vector<PiiLabel> members;
    if (auto it = owner.find(l); it != owner.end()) {
      std::set<PiiLabel> uniq(rows_[it->second].static_labels.begin(),
                              rows_[it->second].static_labels.end());
      members.assign(uniq.begin(), uniq.end());
    } else {
      members = {l};
    }
    for (PiiLabel m : members) group_index_[m] = groups_.size();
    groups_.push_back(std::move(members));
  }
}

MappingTable MappingTable::FromJson(std::string_view s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidMappingTable, std::string("mapping table: ") + e.what());
  }
  if (!j.is_array()) {
    throw Error(ErrorCode::kInvalidMappingTable, "mapping table must be a list of rows");
  }
  std::vector<Row> rows;
  try {
    for (const auto& jr : j) {
      Row row;
      for (const auto& name : jr.at("static")) {
        auto l = ParseStaticName(name.get<std::string>());
        if (!l) {
          throw Error(ErrorCode::kInvalidMappingTable,
                      "mapping table: unknown static label " + name.dump());
        }
        row.static_labels.push_back(*l);
      }
      for (const auto& name : jr.at("dynamic")) {
        row.dynamic_labels.push_back(ParseDynamicLabelOrThrow(name.get<std::string>()));
      }
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidMappingTable, std::string("mapping table: ") + e.what());
  }
  return MappingTable(std::move(rows));
}

MappingTable MappingTable::Load(const std::filesystem::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

const std::set<PiiLabel>& MappingTable::Map(DynamicLeakLabel label) const {
  return forward_.at(label);
}

const std::vector<PiiLabel>& MappingTable::GroupOf(PiiLabel label) const {
  return groups_[group_index_.at(label)];
}

}  // namespace complyscope::compliance

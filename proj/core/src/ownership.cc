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

#include "complyscope/ownership.h"

#include "complyscope/error.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope {

std::string RegistrableDomain(std::string_view host) {
  std::string h = text::AsciiLower(text::Trim(host));
  if (auto colon = h.find(':'); colon != std::string::npos) h.resize(colon);
  while (!h.empty() && h.back() == '.') h.pop_back();
  std::size_t last = h.rfind('.');
  if (last == std::string::npos || last == 0) return h;
  std::size_t prev = h.rfind('.', last - 1);
  return prev == std::string::npos ? h : h.substr(prev + 1);
}

OwnershipMap OwnershipMap::FromJson(std::string_view s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("ownership map: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "ownership map must be an object");
  OwnershipMap m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<std::string> terms;
    for (const auto& t : it.value()) terms.push_back(text::AsciiLower(t.get<std::string>()));
    if (terms.empty()) {
      throw Error(ErrorCode::kParse, "ownership map: no terms for " + it.key());
    }
    m.entries_.emplace(text::AsciiLower(it.key()), std::move(terms));
  }
  return m;
}

OwnershipMap OwnershipMap::Load(const std::filesystem::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

std::vector<std::string> OwnershipMap::Expand(std::string_view domain) const {
  std::string d = RegistrableDomain(domain);
  if (auto it = entries_.find(d); it != entries_.end()) return it->second;
  return {d.substr(0, d.find('.'))};
}

}  // namespace complyscope

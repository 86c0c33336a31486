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

#include "complyscope/compliance.h"

#include <algorithm>

#include "complyscope/error.h"
#include "complyscope/policy_ingest.h"
#include "complyscope/text.h"

namespace complyscope::compliance {

std::set<PartyLabel> MapDynamic(
    std::span<const std::pair<DynamicLeakLabel, Party>> leaks,
    const MappingTable& table) {
  std::set<PartyLabel> out;
  for (const auto& [label, party] : leaks) {
    for (PiiLabel l : table.Map(label)) out.insert({l, party});
  }
  return out;
}

std::set<PartyLabel> MapDynamic(std::span<const std::pair<std::string, Party>> leaks,
                                const MappingTable& table) {
  std::vector<std::pair<DynamicLeakLabel, Party>> typed;
  typed.reserve(leaks.size());
  for (const auto& [name, party] : leaks) {
    typed.emplace_back(ParseDynamicLabelOrThrow(name), party);
  }
  return MapDynamic(typed, table);
}

Party DynamicParty(std::string_view dst_host, std::string_view app_package) {
  std::vector<std::string_view> comps = text::Split(app_package, '.');
  if (comps.size() < 2) return Party::kThirdParty;
  std::string own = text::AsciiLower(comps[1]) + "." + text::AsciiLower(comps[0]);
  return RegistrableDomain(dst_host) == own ? Party::kFirstParty : Party::kThirdParty;
}

DynamicLeakSummary AttributeDynamicLeaks(std::span<const dynamic::DynamicLeak> leaks,
                                         std::string_view app_package) {
  DynamicLeakSummary out;
  std::set<std::pair<DynamicLeakLabel, Party>> seen;
  for (const auto& leak : leaks) {
    Party p = DynamicParty(leak.dst_host, app_package);
    if (seen.insert({leak.label, p}).second) out.leaks.emplace_back(leak.label, p);
    if (p == Party::kThirdParty) out.third_party_domains.insert(leak.domain);
  }
  return out;
}

std::size_t CombinedLeakSet::Count(Party party) const {
  return static_cast<std::size_t>(std::count_if(
      leaks.begin(), leaks.end(), [&](const auto& e) { return e.first.second == party; }));
}

CombinedLeakSet UnionLeaks(std::span<const static_analysis::StaticLeak> static_leaks,
                           const std::set<PartyLabel>& dynamic_mapped,
                           const std::set<std::string>& dynamic_domains) {
  CombinedLeakSet out;
  for (const auto& leak : static_leaks) {
    out.leaks.emplace(PartyLabel{leak.pii, leak.party}, Provenance::kStatic);
    if (leak.party == Party::kThirdParty && leak.domain) {
      out.third_party_domains.insert(*leak.domain);
    }
  }
  for (const auto& key : dynamic_mapped) {
    auto [it, inserted] = out.leaks.emplace(key, Provenance::kDynamic);
    if (!inserted) it->second = Merge(it->second, Provenance::kDynamic);
  }
  out.third_party_domains.insert(dynamic_domains.begin(), dynamic_domains.end());
  return out;
}

std::vector<ViolationRecord> CheckCompliance(
    const CombinedLeakSet& leaks, const std::set<PracticeDisclosure>& disclosed,
    const MappingTable& table) {
  std::map<std::pair<Party, PiiLabel>, ViolationRecord> by_group;
  for (const auto& [key, provenance] : leaks.leaks) {
    const auto& [label, party] = key;
    const std::vector<PiiLabel>& group = table.GroupOf(label);
    bool covered = std::any_of(group.begin(), group.end(), [&](PiiLabel m) {
      return disclosed.contains({m, Procedure::kPerformed, party});
    });
    if (covered) continue;
    auto [it, inserted] = by_group.try_emplace(
        {party, group.front()},
        ViolationRecord{group.front(), group, {}, party, provenance});
    if (!inserted) it->second.provenance = Merge(it->second.provenance, provenance);
    it->second.leaked.push_back(label);
  }
  std::vector<ViolationRecord> out;
  out.reserve(by_group.size());
  for (auto& [k, v] : by_group) out.push_back(std::move(v));
  return out;
}

std::vector<ViolationRecord> CheckCompliance(
    const CombinedLeakSet& leaks, const policy::PolicyDisclosureProfile& profile,
    const MappingTable& table) {
  if (profile.valid_segment_count == 0) {
    throw Error(ErrorCode::kPrecondition,
                "policy " + profile.policy_id + " has no valid segment");
  }
  return CheckCompliance(leaks, profile.disclosed, table);
}

std::string_view DomainClassName(DomainClass c) {
  switch (c) {
    case DomainClass::kAll:
      return "ALL";
    case DomainClass::kNone:
      return "NONE";
    case DomainClass::kPartial:
      return "PARTIAL";
  }
  return "?";
}

namespace {

bool ContainsTerm(std::string_view haystack, std::string_view term, bool whole_word) {
  if (term.empty()) return false;
  for (std::size_t at = haystack.find(term); at != std::string_view::npos;
       at = haystack.find(term, at + 1)) {
    if (!whole_word) return true;
    bool left = at == 0 || haystack[at - 1] == ' ';
    std::size_t end = at + term.size();
    bool right = end == haystack.size() || haystack[end] == ' ';
    if (left && right) return true;
  }
  return false;
}

}  // namespace

DomainDisclosureReport CheckDomainDisclosure(const std::set<std::string>& domains,
                                             std::string_view normalized_policy,
                                             const OwnershipMap& ownership,
                                             const DomainMatchOptions& options) {
  DomainDisclosureReport r;
  for (const std::string& domain : domains) {
    std::vector<std::string> hits;
    for (const std::string& term : ownership.Expand(domain)) {
      if (ContainsTerm(normalized_policy, policy::NormalizeSegment(term),
                       options.word_boundary)) {
        hits.push_back(term);
      }
    }
    if (hits.empty()) {
      r.undisclosed.push_back(domain);
    } else {
      r.matched_terms.emplace(domain, std::move(hits));
    }
  }
  if (r.undisclosed.empty()) {
    r.classification = DomainClass::kAll;
  } else if (r.matched_terms.empty()) {
    r.classification = DomainClass::kNone;
  } else {
    r.classification = DomainClass::kPartial;
  }
  return r;
}

std::string_view DeltaName(Delta d) {
  switch (d) {
    case Delta::kIncrease:
      return "Increase";
    case Delta::kDecrease:
      return "Decrease";
    case Delta::kEqual:
      return "Equal";
  }
  return "?";
}

Delta CompareCounts(std::size_t prev, std::size_t next) {
  if (next > prev) return Delta::kIncrease;
  if (next < prev) return Delta::kDecrease;
  return Delta::kEqual;
}

std::map<Party, Delta> CompareVersions(const VersionViolations& prev,
                                       const VersionViolations& next) {
  if (prev.app_id != next.app_id) {
    throw Error(ErrorCode::kNotAdjacent,
                "cannot compare " + prev.app_id + " with " + next.app_id);
  }
  if (!(prev.release_date < next.release_date) ||
      prev.version_code >= next.version_code) {
    throw Error(ErrorCode::kNotAdjacent,
                prev.app_id + ": version " + std::to_string(prev.version_code) +
                    " does not precede " + std::to_string(next.version_code));
  }
  std::map<Party, Delta> out;
  for (Party p : kAllParties) {
    auto count = [p](const VersionViolations& v) {
      return static_cast<std::size_t>(std::count_if(
          v.violations.begin(), v.violations.end(),
          [p](const ViolationRecord& r) { return r.party == p; }));
    };
    out[p] = CompareCounts(count(prev), count(next));
  }
  return out;
}

}  // namespace complyscope::compliance

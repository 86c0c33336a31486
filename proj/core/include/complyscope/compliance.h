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

#ifndef COMPLYSCOPE_COMPLIANCE_H_
#define COMPLYSCOPE_COMPLIANCE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "complyscope/date.h"
#include "complyscope/dynamic_analyzer.h"
#include "complyscope/labels.h"
#include "complyscope/ownership.h"
#include "complyscope/policy_classifier.h"
#include "complyscope/static_analyzer.h"

namespace complyscope::compliance {

// Dynamic -> static label conversion. Each row maps a set of dynamic labels
// onto a set of static labels; the static sets of the rows become the
// equivalence groups and every other label is a singleton.
class MappingTable {
 public:
  struct Row {
    std::vector<PiiLabel> static_labels;
    std::vector<DynamicLeakLabel> dynamic_labels;
  };

  // Throws Error(kInvalidMappingTable) when rows overlap on a static label
  // or a dynamic label is left unmapped.
  explicit MappingTable(std::vector<Row> rows);

  // [{"static": ["Identifier_Ad_ID", "Identifier_Cookie"],
  //   "dynamic": ["gsf_id", "advertiser_id"]}, ...]
  // Static names may use spaces for underscores; "Demographics" is read as
  // "Demographic".
  static MappingTable FromJson(std::string_view json);
  static MappingTable Load(const std::filesystem::path& path);

  const std::vector<Row>& rows() const { return rows_; }
  const std::set<PiiLabel>& Map(DynamicLeakLabel label) const;

  // Partition of all 28 labels; members and groups in enum order.
  const std::vector<std::vector<PiiLabel>>& groups() const { return groups_; }
  const std::vector<PiiLabel>& GroupOf(PiiLabel label) const;

 private:
  std::vector<Row> rows_;
  std::map<DynamicLeakLabel, std::set<PiiLabel>> forward_;
  std::vector<std::vector<PiiLabel>> groups_;
  std::map<PiiLabel, std::size_t> group_index_;
};

using PartyLabel = std::pair<PiiLabel, Party>;

// Expands each dynamic leak to its static labels, keeping the party.
std::set<PartyLabel> MapDynamic(
    std::span<const std::pair<DynamicLeakLabel, Party>> leaks,
    const MappingTable& table);
// Name-based overload; throws Error(kUnknownDynamicLabel).
std::set<PartyLabel> MapDynamic(
    std::span<const std::pair<std::string, Party>> leaks,
    const MappingTable& table);

// A flow goes to the first party when its registrable domain is the app
// package's first two components reversed (com.fitbit.* -> fitbit.com).
Party DynamicParty(std::string_view dst_host, std::string_view app_package);

struct DynamicLeakSummary {
  std::vector<std::pair<DynamicLeakLabel, Party>> leaks;
  std::set<std::string> third_party_domains;
};

DynamicLeakSummary AttributeDynamicLeaks(
    std::span<const dynamic::DynamicLeak> leaks, std::string_view app_package);

struct CombinedLeakSet {
  std::map<PartyLabel, Provenance> leaks;
  std::set<std::string> third_party_domains;

  std::size_t Count(Party party) const;
};

CombinedLeakSet UnionLeaks(std::span<const static_analysis::StaticLeak> static_leaks,
                           const std::set<PartyLabel>& dynamic_mapped,
                           const std::set<std::string>& dynamic_domains = {});

struct ViolationRecord {
  PiiLabel representative;             // first group member
  std::vector<PiiLabel> group;         // full equivalence group
  std::vector<PiiLabel> leaked;        // members observed leaking
  Party party;
  Provenance provenance;

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

// One record per (group, party) with a leak but no Performed disclosure of
// any group member for that party. Sorted by (party, group).
std::vector<ViolationRecord> CheckCompliance(
    const CombinedLeakSet& leaks, const std::set<PracticeDisclosure>& disclosed,
    const MappingTable& table);
// Throws Error(kPrecondition) when the profile has no valid segment.
std::vector<ViolationRecord> CheckCompliance(
    const CombinedLeakSet& leaks, const policy::PolicyDisclosureProfile& profile,
    const MappingTable& table);

enum class DomainClass { kAll, kNone, kPartial };

std::string_view DomainClassName(DomainClass c);

struct DomainDisclosureReport {
  DomainClass classification = DomainClass::kAll;
  std::vector<std::string> undisclosed;  // sorted
  std::map<std::string, std::vector<std::string>> matched_terms;
};

struct DomainMatchOptions {
  bool word_boundary = false;  // require whole-word term matches
};

// A domain is disclosed when any of its ownership terms, normalized like
// policy text, occurs in the normalized policy text.
DomainDisclosureReport CheckDomainDisclosure(
    const std::set<std::string>& domains, std::string_view normalized_policy,
    const OwnershipMap& ownership, const DomainMatchOptions& options = {});

enum class Delta { kIncrease, kDecrease, kEqual };

std::string_view DeltaName(Delta d);

Delta CompareCounts(std::size_t prev, std::size_t next);

struct VersionViolations {
  std::string app_id;
  std::int64_t version_code = 0;
  Date release_date;
  std::vector<ViolationRecord> violations;
};

// Per-party change in violation count between adjacent versions. Throws
// Error(kNotAdjacent) for different apps or out-of-order versions.
std::map<Party, Delta> CompareVersions(const VersionViolations& prev,
                                       const VersionViolations& next);

}  // namespace complyscope::compliance

#endif  // COMPLYSCOPE_COMPLIANCE_H_

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

#ifndef COMPLYSCOPE_PIPELINE_H_
#define COMPLYSCOPE_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/compliance.h"
#include "complyscope/date.h"
#include "complyscope/labels.h"

namespace complyscope::pipeline {

struct ReleaseEntry {
  std::string app_id;
  std::int64_t version_code = 0;
  Date release_date;
  std::optional<std::filesystem::path> apk_dir;
  std::optional<std::filesystem::path> flows;     // JSONL flow log
  std::optional<std::filesystem::path> policies;  // offline archive root
};

struct PipelineConfig {
  std::filesystem::path policy_model;
  std::filesystem::path flow_model;
  std::filesystem::path pii_rules;
  std::filesystem::path device_profile;
  std::filesystem::path api_catalog;
  std::filesystem::path ownership;
  std::filesystem::path mapping_table;
  unsigned threads = 1;
};

struct DatasetManifest {
  PipelineConfig config;
  std::vector<ReleaseEntry> releases;
};

// {"config": {"policy_model": ..., "flow_model": ..., "pii_rules": ...,
//   "device_profile": ..., "api_catalog": ..., "ownership": ...,
//   "mapping_table": ..., "threads": N},
//  "releases": [{"app_id", "version_code", "release_date", "apk_dir",
//   "flows", "policies"}, ...]}
// Paths resolve against `base_dir`. Throws Error(kParse) on malformed input
// and Error(kInvalidArgument) for duplicate (app_id, version_code) pairs or
// referenced paths that do not exist.
DatasetManifest ParseManifestJson(std::string_view json,
                                  const std::filesystem::path& base_dir);
DatasetManifest LoadDatasetManifest(const std::filesystem::path& path);

struct ViolationReport {
  std::string app_id;
  std::int64_t version_code = 0;
  Date release_date;
  std::optional<Date> policy_capture_date;
  std::string policy_id;
  std::set<PracticeDisclosure> disclosed;
  std::size_t valid_segment_count = 0;
  compliance::CombinedLeakSet leaks;
  std::vector<compliance::ViolationRecord> violations;
  compliance::DomainDisclosureReport domain_disclosure;
  bool static_analyzed = false;
  bool dynamic_analyzed = false;

  bool compliant() const { return violations.empty(); }
  std::size_t ViolationCount(Party party) const;
};

std::string ReportToJson(const ViolationReport& report);
ViolationReport ReportFromJson(std::string_view json);

struct SkippedRelease {
  std::string app_id;
  std::int64_t version_code = 0;
  std::string reason;
};

struct FailedRelease {
  std::string app_id;
  std::int64_t version_code = 0;
  std::string error_code;
  std::string message;
};

struct PipelineResult {
  std::vector<ViolationReport> reports;  // sorted by (app_id, version_code)
  std::vector<SkippedRelease> skipped;
  std::vector<FailedRelease> failures;

  // 0 when every release was processed or skipped, 2 with failures.
  int exit_code() const { return failures.empty() ? 0 : 2; }
};

// Runs every release through policy assignment and classification, static
// and dynamic analysis, leak union and compliance checks on a bounded pool
// of workers. Per-release errors land in `failures`; releases whose policy
// has no valid segment land in `skipped`. Configuration errors throw.
PipelineResult RunPipeline(const DatasetManifest& manifest);

// Writes reports.jsonl and ledger.json into `out_dir`.
void WritePipelineOutput(const PipelineResult& result,
                         const std::filesystem::path& out_dir);
std::vector<ViolationReport> ReadReports(const std::filesystem::path& path);

}  // namespace complyscope::pipeline

#endif  // COMPLYSCOPE_PIPELINE_H_

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

#ifndef COMPLYSCOPE_TESTS_SUPPORT_SYNTHETIC_H_
#define COMPLYSCOPE_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "complyscope/dynamic_analyzer.h"
#include "complyscope/policy_classifier.h"

namespace complyscope::testing {

std::filesystem::path SourceDir();
std::filesystem::path FixtureDir();
std::filesystem::path DataDir();

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "cs");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

void CopyTree(const std::filesystem::path& from, const std::filesystem::path& to);

struct PolicyCorpusOptions {
  std::size_t policies = 350;
  std::size_t segments_per_policy = 8;
  // Share of label-free distractor segments, and of filler tokens replaced
  // by random words.
  double noise = 0.1;
  std::uint64_t seed = 1;
};

// Segments built from fixed per-label phrases. Negation uses "never" and
// "do not".
std::vector<policy::AnnotatedSegment> SyntheticPolicyCorpus(
    const PolicyCorpusOptions& options = {});

// The phrase a generated segment uses for a PII label.
std::string PiiPhrase(PiiLabel label, std::size_t variant = 0);

// One sentence disclosing `pii` with the given procedure and party, in the
// generator's style.
std::string DisclosureSentence(const std::vector<PiiLabel>& pii,
                               Procedure procedure, Party party);

dynamic::DeviceProfile RandomDeviceProfile(std::mt19937_64& rng);

struct FlowCorpusOptions {
  std::size_t flows = 2000;
  // Share of flows given junk headers and parameters.
  double noise = 0.05;
  std::uint64_t seed = 7;
  std::string app_id = "com.example.tracker";
};

// Flows labelled leak iff they carry a device value or PII parameter.
std::vector<dynamic::FlowRecord> SyntheticFlowCorpus(
    const dynamic::DeviceProfile& profile, const FlowCorpusOptions& options = {});

}  // namespace complyscope::testing

#endif  // COMPLYSCOPE_TESTS_SUPPORT_SYNTHETIC_H_

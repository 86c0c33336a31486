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

#ifndef COMPLYSCOPE_APP350_H_
#define COMPLYSCOPE_APP350_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/policy_classifier.h"

namespace complyscope::policy {

struct App350Conversion {
  std::vector<AnnotatedSegment> segments;
  // Practice names outside the 28-label universe, with occurrence counts.
  std::map<std::string, std::size_t> skipped_practices;
};

// Converts one APP-350 annotation YAML document (policy_id, segments with
// segment_text and annotations of practice "<Label>_<1st|3rd>Party" plus
// modality PERFORMED / NOT_PERFORMED) into annotated segments.
// Throws Error(kParse).
App350Conversion ConvertApp350Yaml(std::string_view yaml,
                                   std::string_view fallback_policy_id = {});

// Converts every *.yml / *.yaml file below `dir`, in path order.
App350Conversion ConvertApp350Directory(const std::filesystem::path& dir);

}  // namespace complyscope::policy

#endif  // COMPLYSCOPE_APP350_H_

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

#ifndef COMPLYSCOPE_ERROR_H_
#define COMPLYSCOPE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace complyscope {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  // policy ingestion
  kMalformedDocument,
  kEmptyPolicy,
  kUnresolvable,
  kArchiveUnavailable,
  kNoCaptures,
  kNoPolicy,
  // features / classifier
  kEmptyCorpus,
  kDimensionMismatch,
  kFeatureSpaceMismatch,
  kSuiteCardinality,
  // static analysis
  kMalformedManifest,
  kMissingPackage,
  // dynamic analysis
  kSingleClassCorpus,
  // compliance
  kUnknownDynamicLabel,
  kInvalidMappingTable,
  kNotAdjacent,
  kPrecondition,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception type; callers branch on
// code() rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  // Transport failures against the web archive are the only retryable kind.
  bool retryable() const noexcept {
    return code_ == ErrorCode::kArchiveUnavailable;
  }

 private:
  ErrorCode code_;
};

}  // namespace complyscope

#endif  // COMPLYSCOPE_ERROR_H_

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

#include "complyscope/error.h"

namespace complyscope {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kEmptyPolicy: return "EmptyPolicy";
    case ErrorCode::kUnresolvable: return "Unresolvable";
    case ErrorCode::kArchiveUnavailable: return "ArchiveUnavailable";
    case ErrorCode::kNoCaptures: return "NoCaptures";
    case ErrorCode::kNoPolicy: return "NoPolicy";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFeatureSpaceMismatch: return "FeatureSpaceMismatch";
    case ErrorCode::kSuiteCardinality: return "SuiteCardinality";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kMissingPackage: return "MissingPackage";
    case ErrorCode::kSingleClassCorpus: return "SingleClassCorpus";
    case ErrorCode::kUnknownDynamicLabel: return "UnknownDynamicLabel";
    case ErrorCode::kInvalidMappingTable: return "InvalidMappingTable";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kPrecondition: return "PreconditionViolated";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace complyscope

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

#ifndef COMPLYSCOPE_DIGEST_H_
#define COMPLYSCOPE_DIGEST_H_

#include <string>
#include <string_view>

namespace complyscope {

enum class HashFamily { kMd5, kSha1, kSha256 };

// Lowercase hex digest of `data`.
std::string HexDigest(HashFamily family, std::string_view data);

inline std::string Sha256Hex(std::string_view data) {
  return HexDigest(HashFamily::kSha256, data);
}

// Standard (RFC 4648) base64; whitespace is ignored. Throws Error(kParse).
std::string Base64Decode(std::string_view encoded);
std::string Base64Encode(std::string_view data);

}  // namespace complyscope

#endif  // COMPLYSCOPE_DIGEST_H_

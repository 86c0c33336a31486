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

#ifndef COMPLYSCOPE_OWNERSHIP_H_
#define COMPLYSCOPE_OWNERSHIP_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace complyscope {

// Last two dot-separated labels of a host name, lowercased, with any port
// and trailing dot removed. "ads.flurry.com:443" -> "flurry.com".
std::string RegistrableDomain(std::string_view host);

// Registrable domain -> company terms (the domain's own label, its owner,
// the owner's parent, ...).
class OwnershipMap {
 public:
  OwnershipMap() = default;

  // {"adsense.com": ["adsense", "google", "alphabet"], ...}
  static OwnershipMap FromJson(std::string_view json);
  static OwnershipMap Load(const std::filesystem::path& path);

  // Terms for the domain; unknown domains yield their first label only.
  std::vector<std::string> Expand(std::string_view domain) const;

  const std::map<std::string, std::vector<std::string>, std::less<>>& entries()
      const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

}  // namespace complyscope

#endif  // COMPLYSCOPE_OWNERSHIP_H_

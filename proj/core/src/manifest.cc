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

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "complyscope/error.h"
#include "complyscope/static_analyzer.h"
#include "complyscope/text.h"

namespace complyscope::static_analysis {

namespace {

namespace pt = boost::property_tree;

bool LooksLikeBinaryXml(std::string_view s) {
  return s.size() >= 4 && s[0] == '\x03' && s[1] == '\x00' && s[2] == '\x08' &&
         s[3] == '\x00';
}

// Attribute value by local name, whatever namespace prefix the file uses.
std::optional<std::string> Attr(const pt::ptree& node, std::string_view local) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  for (const auto& [key, value] : *attrs) {
    std::string_view k = key;
    if (auto colon = k.find(':'); colon != std::string_view::npos) {
      k.remove_prefix(colon + 1);
    }
    if (k == local) return value.data();
  }
  return std::nullopt;
}

}  // namespace

Manifest ParseManifest(std::string_view xml) {
  if (LooksLikeBinaryXml(xml)) {
    throw Error(ErrorCode::kMalformedManifest,
                "binary AXML manifest; decode it before analysis");
  }
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree);
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorCode::kMalformedManifest, e.what());
  }
  auto root = tree.get_child_optional("manifest");
  if (!root) throw Error(ErrorCode::kMalformedManifest, "no <manifest> element");

  Manifest m;
  // "package" carries no namespace prefix, so read it directly.
  m.package_name = std::string(text::Trim(root->get("<xmlattr>.package", "")));
  if (m.package_name.empty()) {
    throw Error(ErrorCode::kMissingPackage, "manifest has no package attribute");
  }
  for (const auto& [tag, child] : *root) {
    if (tag != "uses-permission" && tag != "uses-permission-sdk-23") continue;
    if (auto name = Attr(child, "name"); name && !name->empty()) {
      m.permissions.insert(*name);
    }
  }
  return m;
}

}  // namespace complyscope::static_analysis

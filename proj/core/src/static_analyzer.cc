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

#include "complyscope/static_analyzer.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "complyscope/error.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::static_analysis {

namespace fs = std::filesystem;
using nlohmann::json;

ApiCatalog ApiCatalog::FromJson(std::string_view s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("API catalog: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::kParse, "API catalog must be a list");
  ApiCatalog c;
  try {
    for (const auto& e : j) {
      ApiCatalogEntry entry;
      entry.signature = e.at("signature").get<std::string>();
      std::string pii = e.at("pii").get<std::string>();
      auto label = ParsePiiLabel(pii);
      if (!label) throw Error(ErrorCode::kParse, "API catalog: unknown label " + pii);
      entry.pii = *label;
      if (e.contains("permissions")) {
        for (const auto& p : e["permissions"]) {
          entry.required_permissions.insert(p.get<std::string>());
        }
      }
      c.entries_.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("API catalog: ") + e.what());
  }
  std::sort(c.entries_.begin(), c.entries_.end(),
            [](const auto& a, const auto& b) { return a.signature < b.signature; });
  for (std::size_t i = 1; i < c.entries_.size(); ++i) {
    if (c.entries_[i].signature == c.entries_[i - 1].signature) {
      throw Error(ErrorCode::kParse,
                  "API catalog: duplicate signature " + c.entries_[i].signature);
    }
  }
  return c;
}

ApiCatalog ApiCatalog::Load(const fs::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

const ApiCatalogEntry* ApiCatalog::Find(std::string_view signature) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), signature,
      [](const ApiCatalogEntry& e, std::string_view s) { return e.signature < s; });
  return it != entries_.end() && it->signature == signature ? &*it : nullptr;
}

std::optional<std::string> InvokeTarget(std::string_view line) {
  line = text::Trim(line);
  if (!text::StartsWith(line, "invoke-")) return std::nullopt;
  std::size_t brace = line.find("},");
  if (brace == std::string_view::npos) return std::nullopt;
  std::string_view target = text::Trim(line.substr(brace + 2));
  std::size_t arrow = target.find(";->");
  if (target.empty() || target[0] != 'L' || arrow == std::string_view::npos) {
    return std::nullopt;
  }
  std::size_t paren = target.find('(', arrow);
  return std::string(target.substr(0, paren));
}

std::string CallerPackage(std::string_view relative_path) {
  std::string p(relative_path);
  std::replace(p.begin(), p.end(), '\\', '/');
  std::size_t slash = p.rfind('/');
  if (slash == std::string::npos) {
    std::string_view name = p;
    if (text::EndsWith(name, ".smali")) name.remove_suffix(6);
    return std::string(name);
  }
  p.resize(slash);
  std::replace(p.begin(), p.end(), '/', '.');
  return p;
}

std::vector<ApiCallRecord> ScanSmaliSource(std::string_view source,
                                           std::string_view caller_path,
                                           std::string_view caller_package,
                                           const ApiCatalog& catalog) {
  std::vector<ApiCallRecord> out;
  for (std::string_view line : text::Split(source, '\n')) {
    auto target = InvokeTarget(line);
    if (!target) continue;
    if (const ApiCatalogEntry* e = catalog.Find(*target)) {
      out.push_back({std::string(caller_path), std::string(caller_package),
                     e->signature, e->pii});
    }
  }
  return out;
}

SmaliScan ScanSmali(const fs::path& apk_dir, const ApiCatalog& catalog) {
  SmaliScan scan;
  std::error_code ec;
  std::vector<fs::path> roots;
  for (const auto& entry : fs::directory_iterator(apk_dir, ec)) {
    if (entry.is_directory() &&
        text::StartsWith(entry.path().filename().string(), "smali")) {
      roots.push_back(entry.path());
    }
  }
  if (ec) {
    scan.errors.push_back(apk_dir.string() + ": " + ec.message());
    return scan;
  }
  std::sort(roots.begin(), roots.end());
  for (const auto& root : roots) {
    for (auto it = fs::recursive_directory_iterator(root, ec);
         !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (!it->is_regular_file() || it->path().extension() != ".smali") continue;
      std::string rel_root = it->path().lexically_relative(root).generic_string();
      std::string rel_apk = it->path().lexically_relative(apk_dir).generic_string();
      try {
        auto found = ScanSmaliSource(text::ReadFile(it->path().string()), rel_apk,
                                     CallerPackage(rel_root), catalog);
        scan.records.insert(scan.records.end(), found.begin(), found.end());
      } catch (const Error& e) {
        scan.errors.push_back(e.what());
      }
    }
    if (ec) {
      scan.errors.push_back(root.string() + ": " + ec.message());
      ec.clear();
    }
  }
  std::sort(scan.records.begin(), scan.records.end());
  return scan;
}

std::string_view PartyKindName(PartyKind kind) {
  switch (kind) {
    case PartyKind::kSystem:
      return "System";
    case PartyKind::kFirstParty:
      return "1stParty";
    case PartyKind::kThirdParty:
      return "3rdParty";
  }
  return "?";
}

PartyAttribution AttributeParty(std::string_view caller_package,
                                std::string_view app_package,
                                const AttributionOptions& options) {
  for (std::string_view prefix : {"android.", "java.", "dalvik."}) {
    if (text::StartsWith(caller_package, prefix)) return {PartyKind::kSystem, {}};
  }
  std::vector<std::string_view> caller = text::Split(caller_package, '.');
  std::vector<std::string_view> app = text::Split(app_package, '.');
  if (caller.size() >= 2 && app.size() >= 2 && caller[0] == app[0] &&
      caller[1] == app[1]) {
    return {PartyKind::kFirstParty, {}};
  }
  bool obfuscated = std::all_of(caller.begin(), caller.end(), [&](auto c) {
    return c.size() <= options.obfuscated_max_component;
  });
  // Default-package classes count as the app's own.
  if (obfuscated || caller.size() < 2) return {PartyKind::kFirstParty, {}};
  return {PartyKind::kThirdParty,
          text::AsciiLower(caller[1]) + "." + text::AsciiLower(caller[0])};
}

std::vector<AttributedCall> AttributeCalls(std::span<const ApiCallRecord> records,
                                           std::string_view app_package,
                                           const AttributionOptions& options) {
  std::vector<AttributedCall> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r, AttributeParty(r.caller_package, app_package, options)});
  }
  return out;
}

std::vector<StaticLeak> DetectStaticLeaks(std::span<const AttributedCall> calls,
                                          const std::set<std::string>& permissions,
                                          const ApiCatalog& catalog) {
  using Key = std::tuple<PiiLabel, Party, std::optional<std::string>>;
  std::map<Key, std::vector<ApiCallRecord>> groups;
  for (const auto& call : calls) {
    if (call.party.kind == PartyKind::kSystem) continue;
    const ApiCatalogEntry* entry = catalog.Find(call.record.api_signature);
    if (entry == nullptr) continue;
    bool granted = std::all_of(
        entry->required_permissions.begin(), entry->required_permissions.end(),
        [&](const std::string& p) { return permissions.contains(p); });
    if (!granted) continue;
    Party party = call.party.kind == PartyKind::kFirstParty ? Party::kFirstParty
                                                           : Party::kThirdParty;
    groups[{entry->pii, party, call.party.domain}].push_back(call.record);
  }
  std::vector<StaticLeak> out;
  out.reserve(groups.size());
  for (auto& [key, evidence] : groups) {
    std::sort(evidence.begin(), evidence.end());
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                   std::move(evidence)});
  }
  return out;
}

ApkArtifact LoadApkArtifact(const fs::path& apk_dir) {
  ApkArtifact a;
  a.root = apk_dir;
  Manifest m = ParseManifest(text::ReadFile((apk_dir / "AndroidManifest.xml").string()));
  a.package_name = m.package_name;
  a.requested_permissions = std::move(m.permissions);
  if (text::Split(a.package_name, '.').size() < 2) {
    throw Error(ErrorCode::kMalformedManifest,
                "package name '" + a.package_name + "' needs two components");
  }
  a.app_id = a.package_name;
  fs::path meta = apk_dir / "meta.json";
  if (fs::exists(meta)) {
    try {
      json j = json::parse(text::ReadFile(meta.string()));
      a.app_id = j.value("app_id", a.package_name);
      a.version_code = j.value("version_code", std::int64_t{0});
      if (j.contains("release_date")) {
        a.release_date = Date::Parse(j["release_date"].get<std::string>());
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, meta.string() + ": " + e.what());
    }
  }
  return a;
}

StaticAnalysis AnalyzeApk(const fs::path& apk_dir, const ApiCatalog& catalog,
                          const AttributionOptions& options) {
  StaticAnalysis out;
  out.artifact = LoadApkArtifact(apk_dir);
  SmaliScan scan = ScanSmali(apk_dir, catalog);
  out.calls = std::move(scan.records);
  out.errors = std::move(scan.errors);
  auto attributed = AttributeCalls(out.calls, out.artifact.package_name, options);
  out.leaks = DetectStaticLeaks(attributed, out.artifact.requested_permissions,
                                catalog);
  return out;
}

std::string StaticAnalysisToJson(const StaticAnalysis& analysis) {
  nlohmann::ordered_json j;
  const ApkArtifact& a = analysis.artifact;
  j["app_id"] = a.app_id;
  j["version_code"] = a.version_code;
  j["release_date"] = a.release_date.ToIso();
  j["package_name"] = a.package_name;
  j["permissions"] = a.requested_permissions;
  nlohmann::ordered_json leaks = nlohmann::ordered_json::array();
  for (const auto& leak : analysis.leaks) {
    nlohmann::ordered_json l;
    l["pii"] = PiiLabelName(leak.pii);
    l["party"] = PartyName(leak.party);
    l["domain"] = leak.domain ? json(*leak.domain) : json(nullptr);
    nlohmann::ordered_json ev = nlohmann::ordered_json::array();
    for (const auto& r : leak.evidence) {
      ev.push_back({{"caller_path", r.caller_path},
                    {"caller_package", r.caller_package},
                    {"api", r.api_signature}});
    }
    l["evidence"] = std::move(ev);
    leaks.push_back(std::move(l));
  }
  j["leaks"] = std::move(leaks);
  j["errors"] = analysis.errors;
  return j.dump(2);
}

}  // namespace complyscope::static_analysis

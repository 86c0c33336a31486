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

#ifndef COMPLYSCOPE_STATIC_ANALYZER_H_
#define COMPLYSCOPE_STATIC_ANALYZER_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/date.h"
#include "complyscope/labels.h"

namespace complyscope::static_analysis {

struct Manifest {
  std::string package_name;
  std::set<std::string> permissions;
};

// Reads the package attribute and every uses-permission (and
// uses-permission-sdk-23) android:name from decoded manifest XML.
// Throws Error(kMalformedManifest) for binary AXML or unparsable XML and
// Error(kMissingPackage) when the package attribute is absent.
Manifest ParseManifest(std::string_view xml);

struct ApiCatalogEntry {
  std::string signature;  // "Landroid/telephony/TelephonyManager;->getImei"
  PiiLabel pii;
  std::set<std::string> required_permissions;
};

class ApiCatalog {
 public:
  ApiCatalog() = default;

  // [{"signature": ..., "pii": ..., "permissions": [...]}, ...]
  // Throws Error(kParse) on unknown labels or duplicate signatures.
  static ApiCatalog FromJson(std::string_view json);
  static ApiCatalog Load(const std::filesystem::path& path);

  const std::vector<ApiCatalogEntry>& entries() const { return entries_; }
  const ApiCatalogEntry* Find(std::string_view signature) const;

 private:
  std::vector<ApiCatalogEntry> entries_;  // sorted by signature
};

struct ApiCallRecord {
  std::string caller_path;     // relative to the apk directory
  std::string caller_package;  // "com.example.app"
  std::string api_signature;
  PiiLabel pii;

  friend auto operator<=>(const ApiCallRecord&, const ApiCallRecord&) = default;
};

// Target of an invoke-* instruction in "Lpkg/Cls;->method" form, or
// nullopt for any other line.
std::optional<std::string> InvokeTarget(std::string_view line);

// Package of a smali file from its path below a smali root:
// "com/example/app/Main.smali" -> "com.example.app". Files at the root
// yield their class name.
std::string CallerPackage(std::string_view relative_path);

// Catalog hits in one smali file, one record per invoke.
std::vector<ApiCallRecord> ScanSmaliSource(std::string_view source,
                                           std::string_view caller_path,
                                           std::string_view caller_package,
                                           const ApiCatalog& catalog);

struct SmaliScan {
  std::vector<ApiCallRecord> records;  // sorted
  std::vector<std::string> errors;     // unreadable files, non-fatal
};

// Walks every smali* directory of `apk_dir` (smali, smali_classes2, ...).
SmaliScan ScanSmali(const std::filesystem::path& apk_dir,
                    const ApiCatalog& catalog);

enum class PartyKind { kSystem, kFirstParty, kThirdParty };

std::string_view PartyKindName(PartyKind kind);

struct PartyAttribution {
  PartyKind kind = PartyKind::kSystem;
  std::optional<std::string> domain;  // set iff kThirdParty

  friend bool operator==(const PartyAttribution&,
                         const PartyAttribution&) = default;
};

struct AttributionOptions {
  // A caller whose package components are all at most this long looks
  // obfuscated and is counted as the app's own code.
  std::size_t obfuscated_max_component = 2;
};

// android./java./dalvik. callers are System; callers sharing the app's
// first two package components, or looking obfuscated, are FirstParty;
// everything else is ThirdParty with the domain "second.first".
PartyAttribution AttributeParty(std::string_view caller_package,
                                std::string_view app_package,
                                const AttributionOptions& options = {});

struct AttributedCall {
  ApiCallRecord record;
  PartyAttribution party;
};

std::vector<AttributedCall> AttributeCalls(
    std::span<const ApiCallRecord> records, std::string_view app_package,
    const AttributionOptions& options = {});

struct StaticLeak {
  PiiLabel pii;
  Party party;
  std::optional<std::string> domain;
  std::vector<ApiCallRecord> evidence;  // sorted, non-empty
};

// Drops System calls and calls whose catalog permissions are not all
// requested, then groups the rest by (pii, party, domain). Output is sorted
// and independent of record order.
std::vector<StaticLeak> DetectStaticLeaks(
    std::span<const AttributedCall> calls,
    const std::set<std::string>& permissions, const ApiCatalog& catalog);

struct ApkArtifact {
  std::string app_id;
  std::int64_t version_code = 0;
  Date release_date;
  std::string package_name;
  std::set<std::string> requested_permissions;
  std::filesystem::path root;
};

// Reads <apk_dir>/meta.json {"app_id","version_code","release_date"} and
// <apk_dir>/AndroidManifest.xml. app_id defaults to the package name.
ApkArtifact LoadApkArtifact(const std::filesystem::path& apk_dir);

struct StaticAnalysis {
  ApkArtifact artifact;
  std::vector<ApiCallRecord> calls;
  std::vector<StaticLeak> leaks;
  std::vector<std::string> errors;
};

StaticAnalysis AnalyzeApk(const std::filesystem::path& apk_dir,
                          const ApiCatalog& catalog,
                          const AttributionOptions& options = {});

std::string StaticAnalysisToJson(const StaticAnalysis& analysis);

}  // namespace complyscope::static_analysis

#endif  // COMPLYSCOPE_STATIC_ANALYZER_H_

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

#include "complyscope/pipeline.h"

#include <algorithm>
#include <atomic>
#include <thread>
#include <variant>

#include "complyscope/archive_client.h"
#include "complyscope/error.h"
#include "complyscope/policy_classifier.h"
#include "complyscope/policy_ingest.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void RequireExists(const fs::path& p, std::string_view what) {
  if (!fs::exists(p)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " not found: " + p.string());
  }
}

struct Context {
  policy::ClassifierSuite suite;
  static_analysis::ApiCatalog catalog;
  OwnershipMap ownership;
  compliance::MappingTable mapping;
  std::optional<dynamic::DecisionTree> tree;
  std::optional<dynamic::PiiRuleSet> rules;
  std::optional<dynamic::DeviceProfile> profile;
};

Context LoadContext(const DatasetManifest& m) {
  const PipelineConfig& c = m.config;
  bool need_flows = std::any_of(m.releases.begin(), m.releases.end(),
                                [](const ReleaseEntry& e) { return e.flows.has_value(); });
  Context ctx{policy::ClassifierSuite::Load(c.policy_model),
              static_analysis::ApiCatalog::Load(c.api_catalog),
              OwnershipMap::Load(c.ownership),
              compliance::MappingTable::Load(c.mapping_table),
              std::nullopt, std::nullopt, std::nullopt};
  if (need_flows) {
    if (c.flow_model.empty() || c.pii_rules.empty() || c.device_profile.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "flow logs need flow_model, pii_rules and device_profile");
    }
    ctx.tree = dynamic::DecisionTree::FromJson(text::ReadFile(c.flow_model.string()));
    ctx.rules = dynamic::PiiRuleSet::Load(c.pii_rules);
    ctx.profile = dynamic::DeviceProfile::Load(c.device_profile);
  }
  return ctx;
}

using Outcome = std::variant<ViolationReport, SkippedRelease, FailedRelease>;

Outcome ProcessRelease(const ReleaseEntry& e, const Context& ctx) {
  try {
    ViolationReport r;
    r.app_id = e.app_id;
    r.version_code = e.version_code;
    r.release_date = e.release_date;

    if (!e.policies) throw Error(ErrorCode::kNoPolicy, "no policy archive given");
    policy::OfflineArchive archive(*e.policies);
    std::vector<policy::CaptureRef> captures = archive.CapturesForApp(e.app_id);
    if (captures.empty()) {
      throw Error(ErrorCode::kNoPolicy, "no policy captures for " + e.app_id);
    }
    std::vector<Date> dates;
    for (const auto& c : captures) dates.push_back(c.capture_date);
    policy::PolicyAssignment a = policy::AssignPolicyToRelease(e.release_date, dates);
    policy::PolicySnapshot snap = archive.Fetch(captures[a.snapshot_index]);
    snap.extracted_text = policy::ExtractPolicyText(snap);
    r.policy_capture_date = snap.capture_date;
    r.policy_id = snap.id();
    std::vector<policy::Segment> segments =
        policy::SegmentPolicy(snap.extracted_text, r.policy_id);
    policy::PolicyDisclosureProfile profile = policy::AggregatePolicy(ctx.suite, segments);
    if (profile.valid_segment_count == 0) {
      return SkippedRelease{e.app_id, e.version_code,
                            "policy " + r.policy_id + " has no valid segment"};
    }
    r.disclosed = profile.disclosed;
    r.valid_segment_count = profile.valid_segment_count;

    std::string package = e.app_id;
    std::vector<static_analysis::StaticLeak> static_leaks;
    if (e.apk_dir) {
      static_analysis::StaticAnalysis sa = static_analysis::AnalyzeApk(*e.apk_dir, ctx.catalog);
      package = sa.artifact.package_name;
      static_leaks = std::move(sa.leaks);
      r.static_analyzed = true;
    }
    std::set<compliance::PartyLabel> mapped;
    std::set<std::string> dyn_domains;
    if (e.flows) {
      std::vector<dynamic::FlowRecord> flows = dynamic::LoadFlows(*e.flows);
      auto leaks = dynamic::AnalyzeFlows(flows, *ctx.tree, *ctx.rules, *ctx.profile);
      compliance::DynamicLeakSummary s = compliance::AttributeDynamicLeaks(leaks, package);
      mapped = compliance::MapDynamic(s.leaks, ctx.mapping);
      dyn_domains = std::move(s.third_party_domains);
      r.dynamic_analyzed = true;
    }
    r.leaks = compliance::UnionLeaks(static_leaks, mapped, dyn_domains);
    r.violations = compliance::CheckCompliance(r.leaks, profile, ctx.mapping);
    r.domain_disclosure = compliance::CheckDomainDisclosure(
        r.leaks.third_party_domains, policy::NormalizeSegment(snap.extracted_text),
        ctx.ownership);
    return r;
  } catch (const Error& err) {
    return FailedRelease{e.app_id, e.version_code,
                         std::string(ErrorCodeName(err.code())), err.what()};
  } catch (const std::exception& err) {
    return FailedRelease{e.app_id, e.version_code, "Internal", err.what()};
  }
}

json LabelList(const std::vector<PiiLabel>& labels) {
  json arr = json::array();
  for (PiiLabel l : labels) arr.push_back(PiiLabelName(l));
  return arr;
}

std::vector<PiiLabel> ParseLabelList(const json& arr) {
  std::vector<PiiLabel> out;
  for (const auto& n : arr) {
    auto l = ParsePiiLabel(n.get<std::string>());
    if (!l) throw Error(ErrorCode::kParse, "report: unknown label " + n.dump());
    out.push_back(*l);
  }
  return out;
}

template <typename T>
T ParseOr(std::optional<T> v, const std::string& what) {
  if (!v) throw Error(ErrorCode::kParse, "report: bad value " + what);
  return *v;
}

}  // namespace

DatasetManifest ParseManifestJson(std::string_view s, const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  DatasetManifest m;
  try {
    const json& c = j.at("config");
    auto path_of = [&](const char* key, bool required) {
      if (!c.contains(key)) {
        if (required) throw Error(ErrorCode::kParse, std::string("manifest: config.") + key + " missing");
        return fs::path();
      }
      fs::path p = Resolve(base_dir, c[key].get<std::string>());
      RequireExists(p, key);
      return p;
    };
    m.config.policy_model = path_of("policy_model", true);
    m.config.api_catalog = path_of("api_catalog", true);
    m.config.ownership = path_of("ownership", true);
    m.config.mapping_table = path_of("mapping_table", true);
    m.config.flow_model = path_of("flow_model", false);
    m.config.pii_rules = path_of("pii_rules", false);
    m.config.device_profile = path_of("device_profile", false);
    m.config.threads = c.value("threads", 1u);

    std::set<std::pair<std::string, std::int64_t>> seen;
    for (const auto& jr : j.at("releases")) {
      ReleaseEntry e;
      e.app_id = jr.at("app_id").get<std::string>();
      e.version_code = jr.at("version_code").get<std::int64_t>();
      e.release_date = Date::Parse(jr.at("release_date").get<std::string>());
      if (!seen.insert({e.app_id, e.version_code}).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "manifest: duplicate release " + e.app_id + " " +
                        std::to_string(e.version_code));
      }
      for (auto [key, slot] : {std::pair{"apk_dir", &e.apk_dir},
                               std::pair{"flows", &e.flows},
                               std::pair{"policies", &e.policies}}) {
        if (!jr.contains(key) || jr[key].is_null()) continue;
        fs::path p = Resolve(base_dir, jr[key].get<std::string>());
        RequireExists(p, key);
        *slot = p;
      }
      m.releases.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: ") + e.what());
  }
  return m;
}

DatasetManifest LoadDatasetManifest(const fs::path& path) {
  return ParseManifestJson(text::ReadFile(path.string()),
                           fs::absolute(path).parent_path());
}

std::size_t ViolationReport::ViolationCount(Party party) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [&](const auto& v) { return v.party == party; }));
}

std::string ReportToJson(const ViolationReport& r) {
  ojson j;
  j["app_id"] = r.app_id;
  j["version_code"] = r.version_code;
  j["release_date"] = r.release_date.ToIso();
  j["policy_capture_date"] =
      r.policy_capture_date ? ojson(r.policy_capture_date->ToIso()) : ojson(nullptr);
  j["policy_id"] = r.policy_id;
  j["valid_segment_count"] = r.valid_segment_count;
  ojson disclosed = ojson::array();
  for (const auto& d : r.disclosed) {
    disclosed.push_back({PiiLabelName(d.pii), ProcedureName(d.procedure),
                         PartyName(d.party)});
  }
  j["disclosed"] = std::move(disclosed);
  j["static_analyzed"] = r.static_analyzed;
  j["dynamic_analyzed"] = r.dynamic_analyzed;
  ojson leaks = ojson::array();
  for (const auto& [key, prov] : r.leaks.leaks) {
    leaks.push_back({{"pii", PiiLabelName(key.first)},
                     {"party", PartyName(key.second)},
                     {"provenance", ProvenanceName(prov)}});
  }
  j["leaks"] = std::move(leaks);
  j["third_party_domains"] = r.leaks.third_party_domains;
  j["violation_unit"] = "equivalence_group";
  ojson violations = ojson::array();
  for (const auto& v : r.violations) {
    ojson jv;
    jv["group"] = LabelList(v.group);
    jv["leaked"] = LabelList(v.leaked);
    jv["party"] = PartyName(v.party);
    jv["provenance"] = ProvenanceName(v.provenance);
    violations.push_back(std::move(jv));
  }
  j["violations"] = std::move(violations);
  ojson dd;
  dd["classification"] = compliance::DomainClassName(r.domain_disclosure.classification);
  dd["undisclosed"] = r.domain_disclosure.undisclosed;
  dd["matched_terms"] = r.domain_disclosure.matched_terms;
  j["domain_disclosure"] = std::move(dd);
  j["compliant"] = r.compliant();
  return j.dump();
}

ViolationReport ReportFromJson(std::string_view s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report: ") + e.what());
  }
  ViolationReport r;
  try {
    r.app_id = j.at("app_id").get<std::string>();
    r.version_code = j.at("version_code").get<std::int64_t>();
    r.release_date = Date::Parse(j.at("release_date").get<std::string>());
    if (j.contains("policy_capture_date") && !j["policy_capture_date"].is_null()) {
      r.policy_capture_date = Date::Parse(j["policy_capture_date"].get<std::string>());
    }
    r.policy_id = j.value("policy_id", "");
    r.valid_segment_count = j.value("valid_segment_count", std::size_t{0});
    for (const auto& t : j.value("disclosed", json::array())) {
      r.disclosed.insert({ParseOr(ParsePiiLabel(t.at(0).get<std::string>()), t.dump()),
                          ParseOr(ParseProcedure(t.at(1).get<std::string>()), t.dump()),
                          ParseOr(ParseParty(t.at(2).get<std::string>()), t.dump())});
    }
    r.static_analyzed = j.value("static_analyzed", false);
    r.dynamic_analyzed = j.value("dynamic_analyzed", false);
    for (const auto& l : j.value("leaks", json::array())) {
      std::string pii = l.at("pii").get<std::string>();
      std::string party = l.at("party").get<std::string>();
      std::string prov = l.at("provenance").get<std::string>();
      r.leaks.leaks.emplace(compliance::PartyLabel{ParseOr(ParsePiiLabel(pii), pii),
                                                   ParseOr(ParseParty(party), party)},
                            ParseOr(ParseProvenance(prov), prov));
    }
    for (const auto& d : j.value("third_party_domains", json::array())) {
      r.leaks.third_party_domains.insert(d.get<std::string>());
    }
    for (const auto& jv : j.at("violations")) {
      compliance::ViolationRecord v;
      v.group = ParseLabelList(jv.at("group"));
      if (v.group.empty()) throw Error(ErrorCode::kParse, "report: empty violation group");
      v.representative = v.group.front();
      v.leaked = ParseLabelList(jv.value("leaked", json::array()));
      std::string party = jv.at("party").get<std::string>();
      v.party = ParseOr(ParseParty(party), party);
      std::string prov = jv.value("provenance", "static");
      v.provenance = ParseOr(ParseProvenance(prov), prov);
      r.violations.push_back(std::move(v));
    }
    if (j.contains("domain_disclosure")) {
      const json& dd = j["domain_disclosure"];
      std::string cls = dd.value("classification", "ALL");
      if (cls == "ALL") r.domain_disclosure.classification = compliance::DomainClass::kAll;
      else if (cls == "NONE") r.domain_disclosure.classification = compliance::DomainClass::kNone;
      else if (cls == "PARTIAL") r.domain_disclosure.classification = compliance::DomainClass::kPartial;
      else throw Error(ErrorCode::kParse, "report: bad classification " + cls);
      r.domain_disclosure.undisclosed =
          dd.value("undisclosed", std::vector<std::string>{});
      r.domain_disclosure.matched_terms =
          dd.value("matched_terms", std::map<std::string, std::vector<std::string>>{});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report: ") + e.what());
  }
  return r;
}

PipelineResult RunPipeline(const DatasetManifest& manifest) {
  Context ctx = LoadContext(manifest);
  const std::size_t n = manifest.releases.size();
  std::vector<std::optional<Outcome>> outcomes(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      outcomes[i] = ProcessRelease(manifest.releases[i], ctx);
    }
  };
  unsigned threads = std::clamp<unsigned>(manifest.config.threads, 1u,
                                          static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  PipelineResult result;
  for (auto& o : outcomes) {
    if (auto* r = std::get_if<ViolationReport>(&*o)) result.reports.push_back(std::move(*r));
    if (auto* s = std::get_if<SkippedRelease>(&*o)) result.skipped.push_back(std::move(*s));
    if (auto* f = std::get_if<FailedRelease>(&*o)) result.failures.push_back(std::move(*f));
  }
  auto by_key = [](const auto& a, const auto& b) {
    return std::tie(a.app_id, a.version_code) < std::tie(b.app_id, b.version_code);
  };
  std::sort(result.reports.begin(), result.reports.end(), by_key);
  std::sort(result.skipped.begin(), result.skipped.end(), by_key);
  std::sort(result.failures.begin(), result.failures.end(), by_key);
  return result;
}

void WritePipelineOutput(const PipelineResult& result, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  std::string lines;
  for (const auto& r : result.reports) {
    lines += ReportToJson(r);
    lines += '\n';
  }
  text::WriteFile((out_dir / "reports.jsonl").string(), lines);
  ojson ledger;
  ledger["reports"] = result.reports.size();
  ojson skipped = ojson::array();
  for (const auto& s : result.skipped) {
    skipped.push_back({{"app_id", s.app_id}, {"version_code", s.version_code},
                       {"reason", s.reason}});
  }
  ledger["skipped"] = std::move(skipped);
  ojson failures = ojson::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"app_id", f.app_id}, {"version_code", f.version_code},
                        {"error", f.error_code}, {"message", f.message}});
  }
  ledger["failures"] = std::move(failures);
  text::WriteFile((out_dir / "ledger.json").string(), ledger.dump(2) + "\n");
}

std::vector<ViolationReport> ReadReports(const fs::path& path) {
  fs::path file = fs::is_directory(path) ? path / "reports.jsonl" : path;
  std::vector<ViolationReport> out;
  std::string content = text::ReadFile(file.string());
  for (std::string_view line : text::Split(content, '\n')) {
    if (text::Trim(line).empty()) continue;
    out.push_back(ReportFromJson(line));
  }
  return out;
}

}  // namespace complyscope::pipeline

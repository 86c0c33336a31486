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

#include "commands.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "complyscope/app350.h"
#include "complyscope/archive_client.h"
#include "complyscope/compliance.h"
#include "complyscope/dynamic_analyzer.h"
#include "complyscope/error.h"
#include "complyscope/linear_model.h"
#include "complyscope/pipeline.h"
#include "complyscope/policy_classifier.h"
#include "complyscope/policy_ingest.h"
#include "complyscope/reporting.h"
#include "complyscope/static_analyzer.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string DataPath(const std::string& name) {
  if (const char* env = std::getenv("COMPLYSCOPE_DATA")) {
    return (fs::path(env) / name).string();
  }
  return (fs::path(COMPLYSCOPE_DEFAULT_DATA_DIR) / name).string();
}

void Emit(std::ostream& out, const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    out << body;
    if (!body.empty() && body.back() != '\n') out << '\n';
  } else {
    text::WriteFile(path, body);
  }
}

ojson TriplesJson(const std::set<PracticeDisclosure>& triples) {
  ojson arr = ojson::array();
  for (const auto& d : triples) {
    arr.push_back({PiiLabelName(d.pii), ProcedureName(d.procedure), PartyName(d.party)});
  }
  return arr;
}

// Segment texts from JSONL ({"text": ...} per line) or, for any other
// file, the segments of its contents read as extracted policy text.
std::vector<std::string> ReadSegmentTexts(const std::string& path) {
  std::string content = text::ReadFile(path);
  std::vector<std::string> out;
  if (text::EndsWith(path, ".jsonl")) {
    for (std::string_view line : text::Split(content, '\n')) {
      if (text::Trim(line).empty()) continue;
      auto j = nlohmann::json::parse(line);
      out.push_back(j.at("text").get<std::string>());
    }
    return out;
  }
  for (const auto& s : policy::SegmentPolicy(content)) out.push_back(s.raw_text);
  return out;
}

struct Options {
  // ingest-policy
  std::string html, policy_id, out;
  // fetch-snapshots
  std::string url, from, to, archive_base, offline_fixtures, app_id;
  // train-policy / eval / classify
  std::string corpus, split = "250:100", catalog, stopwords, model, segments, test,
              report;
  std::uint64_t seed = 0;
  int epochs = 20;
  unsigned threads = 1;
  // train-flows / analyze-flows
  std::string rules, profile, flows, app_package;
  double holdout = 0.0;
  std::size_t min_node_size = 2, max_depth = 30;
  // analyze-apk / check
  std::string apk, api_catalog, ownership, mapping, policy, flow_model,
              release_date;
  std::int64_t version_code = 0;
  // run / report
  std::string manifest, reports, kind;
  std::size_t top = 0;
  // convert-app350
  std::string input;
};

int IngestPolicy(const Options& o, std::ostream& out) {
  policy::PolicySnapshot snap;
  snap.raw_html = text::ReadFile(o.html);
  std::string text = policy::ExtractPolicyText(snap.raw_html);
  std::string id = o.policy_id.empty() ? fs::path(o.html).stem().string() : o.policy_id;
  auto segs = policy::SegmentPolicy(text, id);
  Emit(out, o.out, policy::SegmentsToJsonl(segs));
  return 0;
}

int FetchSnapshots(const Options& o, std::ostream& out) {
  if (o.archive_base.empty() == o.offline_fixtures.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --archive-base and --offline-fixtures");
  }
  std::unique_ptr<policy::ArchiveClient> client;
  if (!o.archive_base.empty()) {
    policy::TimeGateOptions opts;
    opts.app_id = o.app_id;
    client = std::make_unique<policy::TimeGateArchive>(o.archive_base, opts);
  } else {
    client = std::make_unique<policy::OfflineArchive>(o.offline_fixtures);
  }
  auto snaps = policy::FetchSnapshots(*client, o.url, Date::Parse(o.from), Date::Parse(o.to));
  ojson listing = ojson::array();
  for (auto& s : snaps) {
    if (s.app_id.empty()) s.app_id = o.app_id;
    if (!o.out.empty()) policy::WriteFixture(s, o.out);
    listing.push_back({{"app_id", s.app_id},
                       {"capture_date", s.capture_date.ToIso()},
                       {"url", s.source_url}});
  }
  out << listing.dump(2) << '\n';
  return 0;
}

std::pair<std::size_t, std::size_t> ParseSplit(const std::string& s) {
  auto parts = text::Split(s, ':');
  if (parts.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "split must look like 250:100");
  }
  try {
    return {std::stoul(std::string(parts[0])), std::stoul(std::string(parts[1]))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "split must look like 250:100");
  }
}

int TrainPolicy(const Options& o, std::ostream& out) {
  auto corpus = policy::LoadAnnotatedCorpus(o.corpus);
  auto [n_train, n_test] = ParseSplit(o.split);
  policy::CorpusSplit split = policy::SplitByPolicy(corpus, n_train, n_test, o.seed);
  policy::SuiteTrainOptions opts;
  opts.train.seed = o.seed;
  opts.train.epochs = o.epochs;
  opts.threads = o.threads;
  opts.stopwords = features::LoadStopwords(o.stopwords.empty() ? DataPath("stopwords_en.txt")
                                                               : o.stopwords);
  opts.catalog = features::KeywordCatalog::Load(
      o.catalog.empty() ? DataPath("keyword_catalog.json") : o.catalog);
  policy::TrainedSuite trained = policy::TrainSuite(corpus, split, opts);
  trained.suite.Save(o.model);
  Emit(out, o.report, trained.report.ToJson());
  return 0;
}

int ClassifyPolicy(const Options& o, std::ostream& out) {
  auto suite = policy::ClassifierSuite::Load(o.model);
  std::vector<std::set<std::string>> labels;
  std::string lines;
  std::size_t index = 0;
  for (const auto& seg : ReadSegmentTexts(o.segments)) {
    auto l = policy::ClassifySegment(suite, seg);
    auto d = policy::DerivePractices(l);
    ojson j;
    j["index"] = index++;
    j["labels"] = l;
    j["valid"] = d.valid;
    j["practices"] = TriplesJson(d.practices);
    lines += j.dump() + "\n";
    labels.push_back(std::move(l));
  }
  auto profile = policy::AggregateLabelSets(
      o.policy_id.empty() ? fs::path(o.segments).stem().string() : o.policy_id, labels);
  lines += policy::ProfileToJson(profile) + "\n";
  Emit(out, o.out, lines);
  return 0;
}

int EvalPolicy(const Options& o, std::ostream& out) {
  auto suite = policy::ClassifierSuite::Load(o.model);
  auto test = policy::LoadAnnotatedCorpus(o.test);
  Emit(out, o.out, policy::EvaluateSuite(suite, test).ToJson());
  return 0;
}

int TrainFlows(const Options& o, std::ostream& out) {
  auto flows = dynamic::LoadFlows(o.corpus);
  dynamic::TreeOptions topts{o.min_node_size, o.max_depth};
  std::vector<dynamic::FlowRecord> train, held;
  if (o.holdout > 0.0) {
    std::vector<std::size_t> order(flows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(o.seed);
    ml::ShuffleIndices(order, rng);
    std::size_t n_held = static_cast<std::size_t>(o.holdout * static_cast<double>(flows.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
      (k < n_held ? held : train).push_back(flows[order[k]]);
    }
  } else {
    train = flows;
  }
  auto tree = dynamic::TrainLeakClassifier(train, topts);
  text::WriteFile(o.model, tree.ToJson());
  auto accuracy = [&](const std::vector<dynamic::FlowRecord>& set) {
    std::size_t ok = 0;
    for (const auto& f : set) ok += dynamic::PredictLeak(tree, f) == f.leak.value_or(false);
    return set.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(set.size());
  };
  ojson j;
  j["train_size"] = train.size();
  j["train_accuracy"] = accuracy(train);
  if (!held.empty()) {
    j["holdout_size"] = held.size();
    j["holdout_accuracy"] = accuracy(held);
  }
  j["nodes"] = tree.nodes().size();
  j["depth"] = tree.depth();
  Emit(out, o.out, j.dump(2));
  return 0;
}

int AnalyzeApk(const Options& o, std::ostream& out) {
  auto catalog = static_analysis::ApiCatalog::Load(
      o.api_catalog.empty() ? DataPath("api_catalog.json") : o.api_catalog);
  auto result = static_analysis::AnalyzeApk(o.apk, catalog);
  Emit(out, o.out, static_analysis::StaticAnalysisToJson(result));
  return 0;
}

int AnalyzeFlows(const Options& o, std::ostream& out) {
  auto tree = dynamic::DecisionTree::FromJson(text::ReadFile(o.model));
  auto rules = dynamic::PiiRuleSet::Load(o.rules.empty() ? DataPath("pii_rules.json") : o.rules);
  auto profile = dynamic::DeviceProfile::Load(o.profile);
  auto flows = dynamic::LoadFlows(o.flows);
  std::string package = o.app_package;
  if (package.empty() && !flows.empty()) package = flows.front().app_id;
  ojson arr = ojson::array();
  for (const auto& f : flows) {
    bool leak = dynamic::PredictLeak(tree, f);
    ojson j;
    j["dst_host"] = f.dst_host;
    j["uri"] = f.uri;
    j["leak"] = leak;
    ojson labels = ojson::array();
    if (leak) {
      for (auto l : dynamic::ExtractPii(f, rules, profile)) labels.push_back(DynamicLabelName(l));
    }
    j["labels"] = std::move(labels);
    j["party"] = PartyName(compliance::DynamicParty(f.dst_host, package));
    arr.push_back(std::move(j));
  }
  Emit(out, o.out, arr.dump(2));
  return 0;
}

int Check(const Options& o, std::ostream& out) {
  auto suite = policy::ClassifierSuite::Load(o.model);
  auto catalog = static_analysis::ApiCatalog::Load(
      o.api_catalog.empty() ? DataPath("api_catalog.json") : o.api_catalog);
  auto ownership = OwnershipMap::Load(o.ownership.empty() ? DataPath("ownership.json") : o.ownership);
  auto mapping = compliance::MappingTable::Load(
      o.mapping.empty() ? DataPath("mapping_table.json") : o.mapping);

  pipeline::ViolationReport r;
  r.app_id = o.app_id;
  r.version_code = o.version_code;
  if (!o.release_date.empty()) r.release_date = Date::Parse(o.release_date);
  std::string policy_text = policy::ExtractPolicyText(text::ReadFile(o.policy));
  r.policy_id = fs::path(o.policy).stem().string();
  auto profile = policy::AggregatePolicy(suite, policy::SegmentPolicy(policy_text, r.policy_id));
  r.disclosed = profile.disclosed;
  r.valid_segment_count = profile.valid_segment_count;

  std::string package = o.app_id;
  std::vector<static_analysis::StaticLeak> static_leaks;
  if (!o.apk.empty()) {
    auto sa = static_analysis::AnalyzeApk(o.apk, catalog);
    package = sa.artifact.package_name;
    if (r.app_id.empty()) r.app_id = sa.artifact.app_id;
    if (r.version_code == 0) r.version_code = sa.artifact.version_code;
    if (o.release_date.empty()) r.release_date = sa.artifact.release_date;
    static_leaks = std::move(sa.leaks);
    r.static_analyzed = true;
  }
  std::set<compliance::PartyLabel> mapped;
  std::set<std::string> domains;
  if (!o.flows.empty()) {
    auto tree = dynamic::DecisionTree::FromJson(text::ReadFile(o.flow_model));
    auto rules = dynamic::PiiRuleSet::Load(o.rules.empty() ? DataPath("pii_rules.json") : o.rules);
    auto device = dynamic::DeviceProfile::Load(o.profile);
    auto flows = dynamic::LoadFlows(o.flows);
    auto summary = compliance::AttributeDynamicLeaks(
        dynamic::AnalyzeFlows(flows, tree, rules, device), package);
    mapped = compliance::MapDynamic(summary.leaks, mapping);
    domains = std::move(summary.third_party_domains);
    r.dynamic_analyzed = true;
  }
  r.leaks = compliance::UnionLeaks(static_leaks, mapped, domains);
  r.violations = compliance::CheckCompliance(r.leaks, profile, mapping);
  r.domain_disclosure = compliance::CheckDomainDisclosure(
      r.leaks.third_party_domains, policy::NormalizeSegment(policy_text), ownership);
  Emit(out, o.out, ojson::parse(pipeline::ReportToJson(r)).dump(2));
  return 0;
}

int RunManifest(const Options& o, std::ostream& out, std::ostream& err) {
  auto manifest = pipeline::LoadDatasetManifest(o.manifest);
  auto result = pipeline::RunPipeline(manifest);
  pipeline::WritePipelineOutput(result, o.out);
  out << result.reports.size() << " reports, " << result.skipped.size()
      << " skipped, " << result.failures.size() << " failed\n";
  for (const auto& f : result.failures) {
    err << f.app_id << " " << f.version_code << ": " << f.message << '\n';
  }
  return result.exit_code();
}

int Report(const Options& o, std::ostream& out) {
  auto reports = pipeline::ReadReports(o.reports);
  std::string csv;
  if (o.kind == "annual") {
    csv = reporting::AnnualToCsv(reporting::AggregateAnnual(reports));
  } else if (o.kind == "deltas") {
    csv = reporting::DeltasToCsv(reporting::AggregateDeltas(reports));
  } else if (o.kind == "cdf") {
    csv = reporting::CdfToCsv(reporting::CdfByYear(reports));
  } else if (o.kind == "domains") {
    csv = reporting::DomainsToCsv(reporting::RankUndisclosedDomains(reports, o.top));
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown report kind " + o.kind);
  }
  Emit(out, o.out, csv);
  return 0;
}

int ConvertApp350(const Options& o, std::ostream& out, std::ostream& err) {
  policy::App350Conversion conv =
      fs::is_directory(o.input)
          ? policy::ConvertApp350Directory(o.input)
          : policy::ConvertApp350Yaml(text::ReadFile(o.input),
                                      fs::path(o.input).stem().string());
  Emit(out, o.out, policy::AnnotatedToJsonl(conv.segments));
  for (const auto& [name, n] : conv.skipped_practices) {
    err << "skipped " << name << " x" << n << '\n';
  }
  return 0;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Privacy-policy compliance analysis for Android apps", "complyscope"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest-policy", "Extract and segment a policy page");
  ingest->add_option("--html", o.html, "Archived policy HTML")->required()->check(CLI::ExistingFile);
  ingest->add_option("--policy-id", o.policy_id, "Identifier stamped on segments");
  ingest->add_option("--out", o.out, "Output JSONL (default stdout)");

  auto* fetch = app.add_subcommand("fetch-snapshots", "Sample archived policy captures");
  fetch->add_option("--url", o.url, "Policy URL")->required();
  fetch->add_option("--from", o.from, "First date")->required();
  fetch->add_option("--to", o.to, "Last date")->required();
  fetch->add_option("--archive-base", o.archive_base, "TimeGate base URL");
  fetch->add_option("--offline-fixtures", o.offline_fixtures, "Offline archive root")
      ->check(CLI::ExistingDirectory);
  fetch->add_option("--app-id", o.app_id, "App identifier");
  fetch->add_option("--out", o.out, "Write captures as fixtures under this directory");

  auto* train = app.add_subcommand("train-policy", "Train the 32-model policy suite");
  train->add_option("--corpus", o.corpus, "Annotated JSONL corpus")->required()->check(CLI::ExistingFile);
  train->add_option("--split", o.split, "Train:test policy counts")->capture_default_str();
  train->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  train->add_option("--epochs", o.epochs, "SGD epochs")->capture_default_str();
  train->add_option("--threads", o.threads, "Parallel model training")->capture_default_str();
  train->add_option("--catalog", o.catalog, "Keyword catalog JSON");
  train->add_option("--stopwords", o.stopwords, "Stopword list");
  train->add_option("--model", o.model, "Output suite JSON")->required();
  train->add_option("--report", o.report, "Evaluation report output (default stdout)");

  auto* classify = app.add_subcommand("classify-policy", "Classify policy segments");
  classify->add_option("--model", o.model, "Suite JSON")->required()->check(CLI::ExistingFile);
  classify->add_option("--segments", o.segments, "Segments JSONL or policy text")
      ->required()->check(CLI::ExistingFile);
  classify->add_option("--policy-id", o.policy_id, "Policy identifier");
  classify->add_option("--out", o.out, "Output (default stdout)");

  auto* eval = app.add_subcommand("eval-policy", "Evaluate a suite on annotated segments");
  eval->add_option("--model", o.model, "Suite JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--test", o.test, "Annotated JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", o.out, "Output (default stdout)");

  auto* tflows = app.add_subcommand("train-flows", "Train the flow leak decision tree");
  tflows->add_option("--corpus", o.corpus, "Annotated flow JSONL")->required()->check(CLI::ExistingFile);
  tflows->add_option("--model", o.model, "Output tree JSON")->required();
  tflows->add_option("--holdout", o.holdout, "Fraction held out for evaluation")->check(CLI::Range(0.0, 0.9));
  tflows->add_option("--seed", o.seed, "Holdout shuffle seed");
  tflows->add_option("--min-node-size", o.min_node_size, "Smallest splittable node")->capture_default_str();
  tflows->add_option("--max-depth", o.max_depth, "Depth cap")->capture_default_str();
  tflows->add_option("--out", o.out, "Summary output (default stdout)");

  auto* apk = app.add_subcommand("analyze-apk", "Static leaks of a decompiled app");
  apk->add_option("--apk", o.apk, "Decompiled app directory")->required()->check(CLI::ExistingDirectory);
  apk->add_option("--catalog", o.api_catalog, "API catalog JSON");
  apk->add_option("--out", o.out, "Output (default stdout)");

  auto* aflows = app.add_subcommand("analyze-flows", "Leaks in captured flows");
  aflows->add_option("--model", o.model, "Tree JSON")->required()->check(CLI::ExistingFile);
  aflows->add_option("--rules", o.rules, "PII rules JSON");
  aflows->add_option("--profile", o.profile, "Device profile JSON")->required()->check(CLI::ExistingFile);
  aflows->add_option("--flows", o.flows, "Flow JSONL")->required()->check(CLI::ExistingFile);
  aflows->add_option("--app-package", o.app_package, "Package for party attribution");
  aflows->add_option("--out", o.out, "Output (default stdout)");

  auto* check = app.add_subcommand("check", "Compliance report for a single app version");
  check->add_option("--model", o.model, "Policy suite JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--policy", o.policy, "Policy HTML")->required()->check(CLI::ExistingFile);
  check->add_option("--apk", o.apk, "Decompiled app directory")->check(CLI::ExistingDirectory);
  check->add_option("--flows", o.flows, "Flow JSONL")->check(CLI::ExistingFile);
  check->add_option("--flow-model", o.flow_model, "Tree JSON")->check(CLI::ExistingFile);
  check->add_option("--rules", o.rules, "PII rules JSON");
  check->add_option("--profile", o.profile, "Device profile JSON");
  check->add_option("--catalog", o.api_catalog, "API catalog JSON");
  check->add_option("--ownership", o.ownership, "Ownership map JSON");
  check->add_option("--mapping", o.mapping, "Mapping table JSON");
  check->add_option("--app-id", o.app_id, "App identifier");
  check->add_option("--version-code", o.version_code, "Version code");
  check->add_option("--release-date", o.release_date, "Release date");
  check->add_option("--out", o.out, "Output (default stdout)");

  auto* run = app.add_subcommand("run", "Run the pipeline over a dataset manifest");
  run->add_option("--manifest", o.manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", o.out, "Output directory")->required();

  auto* report = app.add_subcommand("report", "Aggregate pipeline reports to CSV");
  report->add_option("--kind", o.kind, "annual, deltas, cdf or domains")
      ->required()->check(CLI::IsMember({"annual", "deltas", "cdf", "domains"}));
  report->add_option("--reports", o.reports, "reports.jsonl or run output directory")
      ->required()->check(CLI::ExistingPath);
  report->add_option("--top", o.top, "Keep the first N domains");
  report->add_option("--out", o.out, "Output CSV (default stdout)");

  auto* app350 = app.add_subcommand("convert-app350", "Convert APP-350 YAML annotations");
  app350->add_option("--input", o.input, "YAML file or directory")->required()->check(CLI::ExistingPath);
  app350->add_option("--out", o.out, "Output JSONL (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) return IngestPolicy(o, out);
    if (fetch->parsed()) return FetchSnapshots(o, out);
    if (train->parsed()) return TrainPolicy(o, out);
    if (classify->parsed()) return ClassifyPolicy(o, out);
    if (eval->parsed()) return EvalPolicy(o, out);
    if (tflows->parsed()) return TrainFlows(o, out);
    if (apk->parsed()) return AnalyzeApk(o, out);
    if (aflows->parsed()) return AnalyzeFlows(o, out);
    if (check->parsed()) return Check(o, out);
    if (run->parsed()) return RunManifest(o, out, err);
    if (report->parsed()) return Report(o, out);
    if (app350->parsed()) return ConvertApp350(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace complyscope::cli

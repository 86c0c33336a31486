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

#include "complyscope/policy_classifier.h"

#include <algorithm>
#include <map>
#include <random>
#include <thread>

#include "complyscope/digest.h"
#include "complyscope/error.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::policy {

using nlohmann::json;

namespace {

constexpr std::string_view kSuiteFormat = "complyscope.policy_suite";
constexpr int kSuiteVersion = 1;

std::size_t SuiteIndex(std::string_view label) {
  const auto& names = SuiteLabelNames();
  auto it = std::find(names.begin(), names.end(), label);
  return it == names.end() ? kSuiteSize
                           : static_cast<std::size_t>(it - names.begin());
}

json TriplesToJson(const std::set<PracticeDisclosure>& triples) {
  json arr = json::array();
  for (const auto& d : triples) {
    arr.push_back({PiiLabelName(d.pii), ProcedureName(d.procedure),
                   PartyName(d.party)});
  }
  return arr;
}

std::set<PracticeDisclosure> TriplesFromJson(const json& arr,
                                             const std::string& where) {
  std::set<PracticeDisclosure> out;
  if (!arr.is_array()) throw Error(ErrorCode::kParse, where + ": triples must be a list");
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3) {
      throw Error(ErrorCode::kParse, where + ": triple must have three names");
    }
    auto pii = ParsePiiLabel(t[0].get<std::string>());
    auto proc = ParseProcedure(t[1].get<std::string>());
    auto party = ParseParty(t[2].get<std::string>());
    if (!pii || !proc || !party) {
      throw Error(ErrorCode::kParse, where + ": unknown label in " + t.dump());
    }
    out.insert({*pii, *proc, *party});
  }
  return out;
}

json ParseJsonOrThrow(std::string_view s, std::string_view what) {
  try {
    return json::parse(s);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string CorpusHash(std::span<const AnnotatedSegment> corpus,
                       std::span<const std::size_t> indices) {
  std::string blob;
  for (std::size_t i : indices) {
    blob += corpus[i].text;
    blob += '\x1f';
    blob += TriplesToJson(corpus[i].gold).dump();
    blob += '\x1e';
  }
  return Sha256Hex(blob);
}

}  // namespace

std::vector<AnnotatedSegment> ParseAnnotatedJsonl(std::string_view jsonl) {
  std::vector<AnnotatedSegment> out;
  std::size_t line_no = 0;
  for (std::string_view line : text::Split(jsonl, '\n')) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    std::string where = "line " + std::to_string(line_no);
    json j = ParseJsonOrThrow(line, where);
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
      throw Error(ErrorCode::kParse, where + ": missing \"text\"");
    }
    AnnotatedSegment seg;
    seg.text = j["text"].get<std::string>();
    if (j.contains("policy_id")) seg.policy_id = j["policy_id"].get<std::string>();
    if (j.contains("triples")) seg.gold = TriplesFromJson(j["triples"], where);
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<AnnotatedSegment> LoadAnnotatedCorpus(
    const std::filesystem::path& path) {
  return ParseAnnotatedJsonl(text::ReadFile(path.string()));
}

std::string AnnotatedToJsonl(std::span<const AnnotatedSegment> corpus) {
  std::string out;
  for (const auto& seg : corpus) {
    nlohmann::ordered_json j;
    if (!seg.policy_id.empty()) j["policy_id"] = seg.policy_id;
    j["text"] = seg.text;
    j["triples"] = TriplesToJson(seg.gold);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::set<std::string> TargetLabels(const std::set<PracticeDisclosure>& gold) {
  std::set<std::string> out;
  for (const auto& d : gold) {
    out.emplace(PiiLabelName(d.pii));
    out.emplace(ProcedureName(d.procedure));
    out.emplace(PartyName(d.party));
  }
  return out;
}

ClassifierSuite::ClassifierSuite(features::Vocabulary vocab,
                                 features::KeywordCatalog catalog,
                                 std::vector<ml::LinearModel> models,
                                 std::string corpus_hash)
    : vocab_(std::move(vocab)),
      catalog_(std::move(catalog)),
      corpus_hash_(std::move(corpus_hash)) {
  if (models.size() != kSuiteSize) {
    throw Error(ErrorCode::kSuiteCardinality,
                "suite needs " + std::to_string(kSuiteSize) + " models, got " +
                    std::to_string(models.size()));
  }
  std::vector<std::optional<ml::LinearModel>> slots(kSuiteSize);
  const std::size_t dim = vocab_.size() + catalog_.size();
  for (auto& m : models) {
    std::size_t i = SuiteIndex(m.label);
    if (i == kSuiteSize || slots[i]) {
      throw Error(ErrorCode::kSuiteCardinality,
                  "unknown or duplicate model label '" + m.label + "'");
    }
    if (m.weights.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "model " + m.label + " has " + std::to_string(m.weights.size()) +
                      " weights, feature space has " + std::to_string(dim));
    }
    slots[i] = std::move(m);
  }
  models_.reserve(kSuiteSize);
  for (auto& s : slots) models_.push_back(std::move(*s));
  feature_space_hash_ = features::FeatureSpaceHash(vocab_, catalog_);
}

const ml::LinearModel& ClassifierSuite::model(std::string_view label) const {
  std::size_t i = SuiteIndex(label);
  if (i == kSuiteSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "no model for label '" + std::string(label) + "'");
  }
  return models_[i];
}

features::FeatureVector ClassifierSuite::Featurize(
    std::string_view normalized) const {
  return features::Featurize(normalized, vocab_, catalog_);
}

std::set<std::string> ClassifierSuite::ClassifyNormalized(
    std::string_view normalized) const {
  features::FeatureVector x = Featurize(normalized);
  std::set<std::string> out;
  for (const auto& m : models_) {
    if (m.Predict(x)) out.insert(m.label);
  }
  return out;
}

std::string ClassifierSuite::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = kSuiteFormat;
  j["version"] = kSuiteVersion;
  j["feature_space_hash"] = feature_space_hash_;
  j["corpus_hash"] = corpus_hash_;
  j["vocabulary"] = json::parse(vocab_.ToJson());
  j["stopwords"] = vocab_.stopwords();
  j["catalog"] = json::parse(catalog_.ToJson());
  nlohmann::ordered_json models = nlohmann::ordered_json::array();
  for (const auto& m : models_) {
    nlohmann::ordered_json jm;
    jm["label"] = m.label;
    jm["bias"] = m.bias;
    jm["seed"] = m.seed;
    jm["epochs"] = m.epochs;
    jm["constant"] = m.constant;
    json weights = json::array();
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      if (m.weights[i] != 0.0) weights.push_back({i, m.weights[i]});
    }
    jm["weights"] = std::move(weights);
    models.push_back(std::move(jm));
  }
  j["models"] = std::move(models);
  return j.dump();
}

ClassifierSuite ClassifierSuite::FromJson(std::string_view s) {
  json j = ParseJsonOrThrow(s, "suite");
  try {
    if (j.value("format", "") != kSuiteFormat) {
      throw Error(ErrorCode::kParse, "not a policy classifier suite");
    }
    if (j.at("version").get<int>() != kSuiteVersion) {
      throw Error(ErrorCode::kParse, "unsupported suite version " +
                                         j.at("version").dump());
    }
    features::StopwordSet stopwords;
    for (const auto& w : j.at("stopwords")) stopwords.insert(w.get<std::string>());
    features::Vocabulary vocab =
        features::Vocabulary::FromJson(j.at("vocabulary").dump(), std::move(stopwords));
    features::KeywordCatalog catalog =
        features::KeywordCatalog::FromJson(j.at("catalog").dump());
    std::string expected = j.at("feature_space_hash").get<std::string>();
    if (features::FeatureSpaceHash(vocab, catalog) != expected) {
      throw Error(ErrorCode::kFeatureSpaceMismatch,
                  "suite feature space does not match its recorded hash");
    }
    const std::size_t dim = vocab.size() + catalog.size();
    std::vector<ml::LinearModel> models;
    for (const auto& jm : j.at("models")) {
      ml::LinearModel m;
      m.label = jm.at("label").get<std::string>();
      m.bias = jm.at("bias").get<double>();
      m.seed = jm.at("seed").get<std::uint64_t>();
      m.epochs = jm.at("epochs").get<int>();
      m.constant = jm.at("constant").get<bool>();
      m.weights.assign(dim, 0.0);
      for (const auto& pair : jm.at("weights")) {
        std::size_t idx = pair.at(0).get<std::size_t>();
        if (idx >= dim) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "weight index out of range in model " + m.label);
        }
        m.weights[idx] = pair.at(1).get<double>();
      }
      models.push_back(std::move(m));
    }
    std::string corpus_hash = j.at("corpus_hash").get<std::string>();
    for (auto& m : models) m.corpus_hash = corpus_hash;
    return ClassifierSuite(std::move(vocab), std::move(catalog),
                           std::move(models), std::move(corpus_hash));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("suite: ") + e.what());
  }
}

void ClassifierSuite::Save(const std::filesystem::path& path) const {
  text::WriteFile(path.string(), ToJson());
}

ClassifierSuite ClassifierSuite::Load(const std::filesystem::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

const ModelMetrics& EvaluationReport::metrics(std::string_view label) const {
  for (const auto& m : models) {
    if (m.label == label) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no metrics for label '" + std::string(label) + "'");
}

std::string EvaluationReport::ToJson() const {
  nlohmann::ordered_json j;
  j["computed"] = computed;
  j["test_size"] = test_size;
  j["macro"] = {{"accuracy", macro_accuracy},
                {"precision", macro_precision},
                {"recall", macro_recall},
                {"f1", macro_f1}};
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const auto& m : models) {
    nlohmann::ordered_json jm;
    jm["label"] = m.label;
    jm["tp"] = m.tp;
    jm["fp"] = m.fp;
    jm["tn"] = m.tn;
    jm["fn"] = m.fn;
    jm["accuracy"] = m.accuracy;
    jm["precision"] = m.precision;
    jm["recall"] = m.recall;
    jm["f1"] = m.f1;
    per.push_back(std::move(jm));
  }
  j["models"] = std::move(per);
  j["absent_labels"] = absent_labels;
  return j.dump(2);
}

EvaluationReport EvaluatePredictions(
    std::span<const std::set<std::string>> gold,
    std::span<const std::set<std::string>> predicted) {
  if (gold.size() != predicted.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "gold and predicted label lists differ in length");
  }
  EvaluationReport r;
  r.test_size = gold.size();
  r.computed = !gold.empty();
  for (const std::string& label : SuiteLabelNames()) {
    ModelMetrics m;
    m.label = label;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      bool g = gold[i].contains(label);
      bool p = predicted[i].contains(label);
      if (g && p) ++m.tp;
      else if (!g && p) ++m.fp;
      else if (g && !p) ++m.fn;
      else ++m.tn;
    }
    if (r.computed) {
      m.accuracy = Ratio(m.tp + m.tn, gold.size());
      m.precision = Ratio(m.tp, m.tp + m.fp);
      m.recall = Ratio(m.tp, m.tp + m.fn);
      double pr = m.precision + m.recall;
      m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
    }
    r.models.push_back(std::move(m));
  }
  if (r.computed) {
    for (const auto& m : r.models) {
      r.macro_accuracy += m.accuracy;
      r.macro_precision += m.precision;
      r.macro_recall += m.recall;
      r.macro_f1 += m.f1;
    }
    const double n = static_cast<double>(r.models.size());
    r.macro_accuracy /= n;
    r.macro_precision /= n;
    r.macro_recall /= n;
    r.macro_f1 /= n;
  }
  return r;
}

CorpusSplit SplitByPolicy(std::span<const AnnotatedSegment> corpus,
                          std::size_t n_train, std::size_t n_test,
                          std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> groups;
  std::map<std::string, std::size_t, std::less<>> by_id;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string& id = corpus[i].policy_id;
    if (id.empty()) {
      groups.push_back({i});
      continue;
    }
    auto [it, inserted] = by_id.emplace(id, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  if (groups.size() < n_train + n_test) {
    throw Error(ErrorCode::kInvalidArgument,
                "split needs " + std::to_string(n_train + n_test) +
                    " policies, corpus has " + std::to_string(groups.size()));
  }
  std::vector<std::size_t> order(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  ml::ShuffleIndices(order, rng);
  CorpusSplit split;
  for (std::size_t k = 0; k < n_train + n_test; ++k) {
    auto& dst = k < n_train ? split.train : split.test;
    const auto& g = groups[order[k]];
    dst.insert(dst.end(), g.begin(), g.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

TrainedSuite TrainSuite(std::span<const AnnotatedSegment> corpus,
                        const CorpusSplit& split,
                        const SuiteTrainOptions& options) {
  std::vector<bool> seen(corpus.size(), false);
  for (const auto* part : {&split.train, &split.test}) {
    for (std::size_t i : *part) {
      if (i >= corpus.size() || seen[i]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "split indices overlap or fall outside the corpus");
      }
      seen[i] = true;
    }
  }
  if (split.train.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "training split is empty");
  }

  std::vector<std::string> train_text;
  train_text.reserve(split.train.size());
  for (std::size_t i : split.train) {
    train_text.push_back(NormalizeSegment(corpus[i].text));
  }
  features::Vocabulary vocab =
      features::Vocabulary::Fit(train_text, options.stopwords);

  std::vector<ml::LabeledVector> examples(split.train.size());
  std::vector<std::set<std::string>> targets(split.train.size());
  for (std::size_t k = 0; k < split.train.size(); ++k) {
    examples[k].x = features::Featurize(train_text[k], vocab, options.catalog);
    targets[k] = TargetLabels(corpus[split.train[k]].gold);
  }

  const std::string corpus_hash = CorpusHash(corpus, split.train);
  const auto& names = SuiteLabelNames();
  std::vector<ml::LinearModel> models(kSuiteSize);
  std::vector<char> absent(kSuiteSize, 0);
  auto train_one = [&](std::size_t li) {
    std::vector<ml::LabeledVector> local = examples;
    bool any = false;
    for (std::size_t k = 0; k < local.size(); ++k) {
      local[k].y = targets[k].contains(names[li]);
      any = any || local[k].y;
    }
    absent[li] = !any;
    models[li] = ml::TrainBinary(local, options.train, names[li]);
    models[li].corpus_hash = corpus_hash;
  };
  unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    for (std::size_t li = 0; li < kSuiteSize; ++li) train_one(li);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t li = w; li < kSuiteSize; li += threads) train_one(li);
      });
    }
  }

  ClassifierSuite suite(std::move(vocab), options.catalog, std::move(models),
                        corpus_hash);
  std::vector<AnnotatedSegment> test;
  test.reserve(split.test.size());
  for (std::size_t i : split.test) test.push_back(corpus[i]);
  EvaluationReport report = EvaluateSuite(suite, test);
  for (std::size_t li = 0; li < kSuiteSize; ++li) {
    if (absent[li]) report.absent_labels.push_back(names[li]);
  }
  return {std::move(suite), std::move(report)};
}

std::set<std::string> ClassifySegment(const ClassifierSuite& suite,
                                      std::string_view segment) {
  return suite.ClassifyNormalized(NormalizeSegment(segment));
}

DerivedPractices DerivePractices(const std::set<std::string>& labels) {
  DerivedPractices out;
  std::vector<PiiLabel> pii;
  for (PiiLabel l : AllPiiLabels()) {
    if (labels.contains(std::string(PiiLabelName(l)))) pii.push_back(l);
  }
  const bool performed = labels.contains(std::string(kPerformedLabel));
  const bool not_performed = labels.contains(std::string(kNotPerformedLabel));
  std::vector<Party> parties;
  if (labels.contains(std::string(kFirstPartyLabel))) parties.push_back(Party::kFirstParty);
  if (labels.contains(std::string(kThirdPartyLabel))) parties.push_back(Party::kThirdParty);
  out.valid = !pii.empty() && (performed || not_performed) && !parties.empty();
  if (!out.valid) return out;
  const Procedure proc = performed ? Procedure::kPerformed : Procedure::kNotPerformed;
  for (PiiLabel l : pii) {
    for (Party p : parties) out.practices.insert({l, proc, p});
  }
  return out;
}

PolicyDisclosureProfile AggregateLabelSets(
    std::string policy_id, std::span<const std::set<std::string>> labels) {
  PolicyDisclosureProfile profile;
  profile.policy_id = std::move(policy_id);
  profile.total_segment_count = labels.size();
  for (const auto& set : labels) {
    DerivedPractices d = DerivePractices(set);
    if (!d.valid) continue;
    ++profile.valid_segment_count;
    profile.disclosed.insert(d.practices.begin(), d.practices.end());
  }
  return profile;
}

PolicyDisclosureProfile AggregatePolicy(const ClassifierSuite& suite,
                                        std::span<const Segment> segments) {
  std::vector<std::set<std::string>> labels;
  labels.reserve(segments.size());
  for (const auto& s : segments) labels.push_back(suite.ClassifyNormalized(s.text));
  return AggregateLabelSets(segments.empty() ? std::string()
                                             : segments.front().policy_id,
                            labels);
}

EvaluationReport EvaluateSuite(const ClassifierSuite& suite,
                               std::span<const AnnotatedSegment> test) {
  std::vector<std::set<std::string>> gold, predicted;
  gold.reserve(test.size());
  predicted.reserve(test.size());
  for (const auto& seg : test) {
    gold.push_back(TargetLabels(seg.gold));
    predicted.push_back(ClassifySegment(suite, seg.text));
  }
  return EvaluatePredictions(gold, predicted);
}

std::string ProfileToJson(const PolicyDisclosureProfile& profile) {
  nlohmann::ordered_json j;
  j["policy_id"] = profile.policy_id;
  j["valid_segment_count"] = profile.valid_segment_count;
  j["total_segment_count"] = profile.total_segment_count;
  j["disclosed"] = TriplesToJson(profile.disclosed);
  return j.dump();
}

PolicyDisclosureProfile ProfileFromJson(std::string_view s) {
  json j = ParseJsonOrThrow(s, "profile");
  PolicyDisclosureProfile p;
  try {
    p.policy_id = j.value("policy_id", "");
    p.valid_segment_count = j.at("valid_segment_count").get<std::size_t>();
    p.total_segment_count = j.value("total_segment_count", p.valid_segment_count);
    p.disclosed = TriplesFromJson(j.at("disclosed"), "profile");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("profile: ") + e.what());
  }
  if (p.valid_segment_count > p.total_segment_count) {
    throw Error(ErrorCode::kParse, "profile: more valid segments than segments");
  }
  return p;
}

}  // namespace complyscope::policy

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

#ifndef COMPLYSCOPE_POLICY_CLASSIFIER_H_
#define COMPLYSCOPE_POLICY_CLASSIFIER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "complyscope/labels.h"
#include "complyscope/linear_model.h"
#include "complyscope/policy_features.h"
#include "complyscope/policy_ingest.h"

namespace complyscope::policy {

// A training or test segment with its gold practice triples. Segments with
// no triples are negatives for every model.
struct AnnotatedSegment {
  std::string policy_id;  // optional grouping key for splits
  std::string text;       // raw text; normalized on use
  std::set<PracticeDisclosure> gold;
};

// One JSON object per line:
// {"policy_id": "...", "text": "...", "triples": [["Identifier_Cookie",
//  "Performed", "3rdParty"], ...]}. policy_id may be omitted.
std::vector<AnnotatedSegment> ParseAnnotatedJsonl(std::string_view jsonl);
std::vector<AnnotatedSegment> LoadAnnotatedCorpus(
    const std::filesystem::path& path);
std::string AnnotatedToJsonl(std::span<const AnnotatedSegment> corpus);

// Suite label names a segment is positive for, derived from its triples.
std::set<std::string> TargetLabels(const std::set<PracticeDisclosure>& gold);

// The 32 one-vs-rest models over a shared feature space.
class ClassifierSuite {
 public:
  // Throws Error(kSuiteCardinality) unless `models` holds exactly one model
  // per suite label, and Error(kDimensionMismatch) if any model's weight
  // length differs from V + H.
  ClassifierSuite(features::Vocabulary vocab, features::KeywordCatalog catalog,
                  std::vector<ml::LinearModel> models,
                  std::string corpus_hash = {});

  const features::Vocabulary& vocabulary() const { return vocab_; }
  const features::KeywordCatalog& catalog() const { return catalog_; }
  const std::vector<ml::LinearModel>& models() const { return models_; }
  const ml::LinearModel& model(std::string_view label) const;
  const std::string& corpus_hash() const { return corpus_hash_; }
  const std::string& feature_space_hash() const { return feature_space_hash_; }

  features::FeatureVector Featurize(std::string_view normalized) const;

  // Positive labels for an already-normalized segment.
  std::set<std::string> ClassifyNormalized(std::string_view normalized) const;

  // Versioned JSON with the feature space embedded.
  std::string ToJson() const;
  // Throws Error(kParse) or Error(kFeatureSpaceMismatch) when the recorded
  // hash does not match the embedded vocabulary and catalog.
  static ClassifierSuite FromJson(std::string_view json);
  void Save(const std::filesystem::path& path) const;
  static ClassifierSuite Load(const std::filesystem::path& path);

 private:
  features::Vocabulary vocab_;
  features::KeywordCatalog catalog_;
  std::vector<ml::LinearModel> models_;  // SuiteLabelNames() order
  std::string corpus_hash_;
  std::string feature_space_hash_;
};

struct ModelMetrics {
  std::string label;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;
};

struct EvaluationReport {
  bool computed = false;  // false for an empty test split
  std::size_t test_size = 0;
  std::vector<ModelMetrics> models;  // SuiteLabelNames() order
  double macro_accuracy = 0, macro_precision = 0, macro_recall = 0,
         macro_f1 = 0;
  // Labels without a positive training example.
  std::vector<std::string> absent_labels;

  const ModelMetrics& metrics(std::string_view label) const;
  std::string ToJson() const;
};

// Scores predicted label sets against gold label sets, position by
// position. Ratios with a zero denominator are 0.
EvaluationReport EvaluatePredictions(
    std::span<const std::set<std::string>> gold,
    std::span<const std::set<std::string>> predicted);

struct CorpusSplit {
  std::vector<std::size_t> train;  // indices into the corpus
  std::vector<std::size_t> test;
};

// Shuffles policy groups with `seed` and takes the first `n_train` groups
// for training and the next `n_test` for testing. Segments without a
// policy_id form singleton groups. Throws Error(kInvalidArgument) when there
// are fewer than n_train + n_test groups.
CorpusSplit SplitByPolicy(std::span<const AnnotatedSegment> corpus,
                          std::size_t n_train, std::size_t n_test,
                          std::uint64_t seed);

struct SuiteTrainOptions {
  ml::TrainOptions train;
  features::StopwordSet stopwords;
  features::KeywordCatalog catalog;
  unsigned threads = 1;
};

struct TrainedSuite {
  ClassifierSuite suite;
  EvaluationReport report;
};

// Fits the vocabulary on the training segments only, trains all 32 models
// and evaluates them on the test segments. Throws Error(kInvalidArgument)
// when the split overlaps or indexes outside the corpus, and
// Error(kEmptyCorpus) for an empty training split.
TrainedSuite TrainSuite(std::span<const AnnotatedSegment> corpus,
                        const CorpusSplit& split,
                        const SuiteTrainOptions& options);

// Positive labels for a raw segment (normalized first).
std::set<std::string> ClassifySegment(const ClassifierSuite& suite,
                                      std::string_view segment);

struct DerivedPractices {
  bool valid = false;
  std::set<PracticeDisclosure> practices;
};

// A segment is valid when a PII label, a procedure label and a party label
// all fire. Performed wins over Not_Performed; one triple per flagged party.
DerivedPractices DerivePractices(const std::set<std::string>& labels);

struct PolicyDisclosureProfile {
  std::string policy_id;
  std::set<PracticeDisclosure> disclosed;
  std::size_t valid_segment_count = 0;
  std::size_t total_segment_count = 0;
};

// Union of DerivePractices over per-segment label sets.
PolicyDisclosureProfile AggregateLabelSets(
    std::string policy_id, std::span<const std::set<std::string>> labels);

// Classifies each segment's normalized text and aggregates.
PolicyDisclosureProfile AggregatePolicy(const ClassifierSuite& suite,
                                        std::span<const Segment> segments);

EvaluationReport EvaluateSuite(const ClassifierSuite& suite,
                               std::span<const AnnotatedSegment> test);

std::string ProfileToJson(const PolicyDisclosureProfile& profile);
PolicyDisclosureProfile ProfileFromJson(std::string_view json);

}  // namespace complyscope::policy

#endif  // COMPLYSCOPE_POLICY_CLASSIFIER_H_

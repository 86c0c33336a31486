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

#ifndef COMPLYSCOPE_POLICY_FEATURES_H_
#define COMPLYSCOPE_POLICY_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace complyscope::features {

using StopwordSet = std::set<std::string, std::less<>>;

// One token per line; blank lines and '#' comments are ignored.
StopwordSet ParseStopwords(std::string_view text);
StopwordSet LoadStopwords(const std::filesystem::path& path);

// Whitespace tokens of an already-normalized segment, minus stopwords and
// one-character tokens.
std::vector<std::string> Tokenize(std::string_view normalized,
                                  const StopwordSet& stopwords);

// Unigram vocabulary with document frequencies. Columns are assigned in
// lexicographic token order, so fitting is insensitive to corpus order.
class Vocabulary {
 public:
  struct Entry {
    std::size_t index;
    std::size_t df;
  };

  Vocabulary() = default;

  // Throws Error(kEmptyCorpus) when `corpus` has no documents. A corpus of
  // empty documents yields an empty vocabulary.
  static Vocabulary Fit(std::span<const std::string> corpus,
                        StopwordSet stopwords);

  std::size_t size() const { return tokens_.size(); }
  std::size_t n_documents() const { return n_documents_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const StopwordSet& stopwords() const { return stopwords_; }

  std::optional<Entry> Find(std::string_view token) const;
  std::size_t df_at(std::size_t index) const { return df_[index]; }

  // ln((1 + N) / (1 + df)) + 1
  double IdfAt(std::size_t index) const;

  // {"<token>": [index, df], ..., "n_documents": N}
  std::string ToJson() const;
  static Vocabulary FromJson(std::string_view json, StopwordSet stopwords);

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> df_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::size_t n_documents_ = 0;
  StopwordSet stopwords_;
};

struct SparseEntry {
  std::size_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Entries sorted by index, no explicit zeros.
using SparseVector = std::vector<SparseEntry>;

// Raw term counts times smoothed idf, scaled to unit L2 norm. Tokens outside
// the vocabulary are ignored; an all-unknown segment gives an empty vector.
SparseVector TfidfVector(std::string_view normalized, const Vocabulary& vocab);

// Hand-written trigger phrases per practice label, one indicator column per
// phrase. Labels are ordered by name; phrases keep their listed order.
class KeywordCatalog {
 public:
  struct Trigger {
    std::string label;
    std::string phrase;      // as written in the catalog
    std::string normalized;  // phrase after segment normalization
  };

  KeywordCatalog() = default;

  // {"Identifier_Cookie": ["cookie", "web beacon", "tracking pixel"], ...}
  // Throws Error(kParse) or Error(kInvalidArgument) for unknown labels.
  static KeywordCatalog FromJson(std::string_view json);
  static KeywordCatalog Load(const std::filesystem::path& path);

  const std::vector<Trigger>& triggers() const { return triggers_; }
  std::size_t size() const { return triggers_.size(); }

  std::string ToJson() const;

 private:
  std::vector<Trigger> triggers_;
};

// 1 where the trigger occurs as a substring of the normalized segment.
std::vector<std::uint8_t> IndicatorVector(std::string_view normalized,
                                          const KeywordCatalog& catalog);

// tfidf block in columns [0, V), indicator block in [V, V + H).
struct FeatureVector {
  std::size_t tfidf_dim = 0;      // V, also the block boundary
  std::size_t indicator_dim = 0;  // H
  SparseVector entries;

  std::size_t dim() const { return tfidf_dim + indicator_dim; }
};

FeatureVector Featurize(std::string_view normalized, const Vocabulary& vocab,
                        const KeywordCatalog& catalog);

// SHA-256 over the serialized vocabulary, stopwords and catalog. Models
// refuse to score vectors from a different space.
std::string FeatureSpaceHash(const Vocabulary& vocab,
                             const KeywordCatalog& catalog);

}  // namespace complyscope::features

#endif  // COMPLYSCOPE_POLICY_FEATURES_H_

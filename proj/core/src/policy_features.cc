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

#include "complyscope/policy_features.h"

#include <algorithm>
#include <cmath>

#include "complyscope/digest.h"
#include "complyscope/error.h"
#include "complyscope/labels.h"
#include "complyscope/policy_ingest.h"
#include "complyscope/text.h"
#include "json.hpp"

namespace complyscope::features {

StopwordSet ParseStopwords(std::string_view content) {
  StopwordSet out;
  for (std::string_view line : text::Split(content, '\n')) {
    std::string_view t = text::Trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace(t);
  }
  return out;
}

StopwordSet LoadStopwords(const std::filesystem::path& path) {
  return ParseStopwords(text::ReadFile(path.string()));
}

std::vector<std::string> Tokenize(std::string_view normalized,
                                  const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (std::string& tok : text::SplitWhitespace(normalized)) {
    if (tok.size() < 2 || stopwords.contains(tok)) continue;
    out.push_back(std::move(tok));
  }
  return out;
}

Vocabulary Vocabulary::Fit(std::span<const std::string> corpus,
                           StopwordSet stopwords) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot fit a vocabulary on no documents");
  }
  std::map<std::string, std::size_t, std::less<>> df;
  for (const std::string& doc : corpus) {
    std::vector<std::string> toks = Tokenize(doc, stopwords);
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    for (auto& t : toks) ++df[t];
  }
  Vocabulary v;
  v.n_documents_ = corpus.size();
  v.stopwords_ = std::move(stopwords);
  v.tokens_.reserve(df.size());
  v.df_.reserve(df.size());
  for (auto& [tok, count] : df) {  // std::map iterates lexicographically
    v.index_.emplace(tok, v.tokens_.size());
    v.tokens_.push_back(tok);
    v.df_.push_back(count);
  }
  return v;
}

std::optional<Vocabulary::Entry> Vocabulary::Find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return Entry{it->second, df_[it->second]};
}

double Vocabulary::IdfAt(std::size_t index) const {
  return std::log((1.0 + static_cast<double>(n_documents_)) /
                  (1.0 + static_cast<double>(df_[index]))) +
         1.0;
}

std::string Vocabulary::ToJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    j[tokens_[i]] = {i, df_[i]};
  }
  j["n_documents"] = n_documents_;
  return j.dump();
}

Vocabulary Vocabulary::FromJson(std::string_view json, StopwordSet stopwords) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("vocabulary: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n_documents")) {
    throw Error(ErrorCode::kParse, "vocabulary: missing n_documents");
  }
  Vocabulary v;
  v.n_documents_ = j["n_documents"].get<std::size_t>();
  std::size_t n = j.size() - 1;
  v.tokens_.resize(n);
  v.df_.resize(n);
  std::vector<bool> filled(n, false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "n_documents") continue;
    const auto& pair = it.value();
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorCode::kParse, "vocabulary: bad entry for " + it.key());
    }
    std::size_t idx = pair[0].get<std::size_t>();
    if (idx >= n || filled[idx]) {
      throw Error(ErrorCode::kParse, "vocabulary: column indices are not dense");
    }
    filled[idx] = true;
    v.tokens_[idx] = it.key();
    v.df_[idx] = pair[1].get<std::size_t>();
    v.index_.emplace(it.key(), idx);
  }
  v.stopwords_ = std::move(stopwords);
  return v;
}

SparseVector TfidfVector(std::string_view normalized, const Vocabulary& vocab) {
  std::map<std::size_t, double> counts;
  for (const std::string& tok : Tokenize(normalized, vocab.stopwords())) {
    if (auto e = vocab.Find(tok)) counts[e->index] += 1.0;
  }
  SparseVector out;
  out.reserve(counts.size());
  double sq = 0.0;
  for (auto [idx, tf] : counts) {
    double v = tf * vocab.IdfAt(idx);
    out.push_back({idx, v});
    sq += v * v;
  }
  if (sq > 0.0) {
    double norm = std::sqrt(sq);
    for (auto& e : out) e.value /= norm;
  }
  return out;
}

namespace {

bool IsCatalogLabel(std::string_view label) {
  const auto& names = SuiteLabelNames();
  return std::find(names.begin(), names.end(), label) != names.end();
}

}  // namespace

KeywordCatalog KeywordCatalog::FromJson(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("keyword catalog: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, "keyword catalog must be a JSON object");
  }
  KeywordCatalog c;
  for (auto it = j.begin(); it != j.end(); ++it) {  // sorted by label
    if (!IsCatalogLabel(it.key())) {
      throw Error(ErrorCode::kInvalidArgument,
                  "keyword catalog: unknown label '" + it.key() + "'");
    }
    if (!it.value().is_array()) {
      throw Error(ErrorCode::kParse,
                  "keyword catalog: triggers for " + it.key() + " must be a list");
    }
    for (const auto& phrase : it.value()) {
      Trigger t;
      t.label = it.key();
      t.phrase = phrase.get<std::string>();
      t.normalized = policy::NormalizeSegment(t.phrase);
      if (t.normalized.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "keyword catalog: trigger '" + t.phrase +
                        "' is empty after normalization");
      }
      c.triggers_.push_back(std::move(t));
    }
  }
  return c;
}

KeywordCatalog KeywordCatalog::Load(const std::filesystem::path& path) {
  return FromJson(text::ReadFile(path.string()));
}

std::string KeywordCatalog::ToJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& t : triggers_) j[t.label].push_back(t.phrase);
  return j.dump();
}

std::vector<std::uint8_t> IndicatorVector(std::string_view normalized,
                                          const KeywordCatalog& catalog) {
  std::vector<std::uint8_t> out(catalog.size(), 0);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (normalized.find(catalog.triggers()[i].normalized) !=
        std::string_view::npos) {
      out[i] = 1;
    }
  }
  return out;
}

FeatureVector Featurize(std::string_view normalized, const Vocabulary& vocab,
                        const KeywordCatalog& catalog) {
  FeatureVector fv;
  fv.tfidf_dim = vocab.size();
  fv.indicator_dim = catalog.size();
  fv.entries = TfidfVector(normalized, vocab);
  std::vector<std::uint8_t> ind = IndicatorVector(normalized, catalog);
  for (std::size_t i = 0; i < ind.size(); ++i) {
    if (ind[i]) fv.entries.push_back({fv.tfidf_dim + i, 1.0});
  }
  return fv;
}

std::string FeatureSpaceHash(const Vocabulary& vocab,
                             const KeywordCatalog& catalog) {
  std::string blob = vocab.ToJson();
  blob += '\n';
  for (const auto& w : vocab.stopwords()) {
    blob += w;
    blob += ' ';
  }
  blob += '\n';
  blob += catalog.ToJson();
  return Sha256Hex(blob);
}

}  // namespace complyscope::features

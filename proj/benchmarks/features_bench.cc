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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "complyscope/policy_features.h"
#include "complyscope/policy_ingest.h"
#include "synthetic.h"

namespace {

namespace cs = complyscope;

std::vector<std::string> NormalizedCorpus(std::size_t policies) {
  cs::testing::PolicyCorpusOptions opts;
  opts.policies = policies;
  std::vector<std::string> out;
  for (const auto& s : cs::testing::SyntheticPolicyCorpus(opts)) {
    out.push_back(cs::policy::NormalizeSegment(s.text));
  }
  return out;
}

void BM_FitVocabulary(benchmark::State& state) {
  auto docs = NormalizedCorpus(static_cast<std::size_t>(state.range(0)));
  auto stop = cs::features::LoadStopwords(cs::testing::DataDir() / "stopwords_en.txt");
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::features::Vocabulary::Fit(docs, stop));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(docs.size()));
}
BENCHMARK(BM_FitVocabulary)->Arg(50)->Arg(350);

void BM_Featurize(benchmark::State& state) {
  auto docs = NormalizedCorpus(350);
  auto stop = cs::features::LoadStopwords(cs::testing::DataDir() / "stopwords_en.txt");
  auto vocab = cs::features::Vocabulary::Fit(docs, stop);
  auto catalog =
      cs::features::KeywordCatalog::Load(cs::testing::DataDir() / "keyword_catalog.json");
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::features::Featurize(docs[i++ % docs.size()], vocab, catalog));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Featurize);

void BM_SegmentPolicy(benchmark::State& state) {
  std::string text;
  for (const auto& s : cs::testing::SyntheticPolicyCorpus({.policies = 10})) {
    text += s.text + "\n\n";
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::policy::SegmentPolicy(text, "bench"));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_SegmentPolicy);

}  // namespace

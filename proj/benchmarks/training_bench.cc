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

#include "complyscope/dynamic_analyzer.h"
#include "complyscope/policy_classifier.h"
#include "synthetic.h"

namespace {

namespace cs = complyscope;

void BM_TrainSuite(benchmark::State& state) {
  cs::testing::PolicyCorpusOptions opts;
  opts.policies = static_cast<std::size_t>(state.range(0));
  auto corpus = cs::testing::SyntheticPolicyCorpus(opts);
  std::size_t n_train = opts.policies * 5 / 7;
  auto split = cs::policy::SplitByPolicy(corpus, n_train, opts.policies - n_train, 0);
  cs::policy::SuiteTrainOptions topts;
  topts.stopwords = cs::features::LoadStopwords(cs::testing::DataDir() / "stopwords_en.txt");
  topts.catalog =
      cs::features::KeywordCatalog::Load(cs::testing::DataDir() / "keyword_catalog.json");
  topts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::policy::TrainSuite(corpus, split, topts));
  }
  state.counters["segments"] = static_cast<double>(corpus.size());
}
BENCHMARK(BM_TrainSuite)->Args({70, 1})->Args({350, 1})->Args({350, 4})
    ->Unit(benchmark::kMillisecond);

void BM_TrainFlowTree(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto profile = cs::testing::RandomDeviceProfile(rng);
  cs::testing::FlowCorpusOptions opts;
  opts.flows = static_cast<std::size_t>(state.range(0));
  auto flows = cs::testing::SyntheticFlowCorpus(profile, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::dynamic::TrainLeakClassifier(flows));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainFlowTree)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ExtractPii(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto profile = cs::testing::RandomDeviceProfile(rng);
  auto flows = cs::testing::SyntheticFlowCorpus(profile, {.flows = 500});
  auto rules = cs::dynamic::PiiRuleSet::Load(cs::testing::DataDir() / "pii_rules.json");
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::dynamic::ExtractPii(flows[i++ % flows.size()], rules, profile));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ExtractPii);

}  // namespace

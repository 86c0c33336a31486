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

#include <random>
#include <set>
#include <vector>

#include "complyscope/compliance.h"
#include "synthetic.h"

namespace {

namespace cs = complyscope;
using cs::compliance::CombinedLeakSet;

const cs::compliance::MappingTable& Table() {
  static const auto table =
      cs::compliance::MappingTable::Load(cs::testing::DataDir() / "mapping_table.json");
  return table;
}

void BM_CheckCompliance(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto& labels = cs::AllPiiLabels();
  std::vector<std::pair<CombinedLeakSet, std::set<cs::PracticeDisclosure>>> cases(256);
  for (auto& [leaks, disclosed] : cases) {
    for (int i = 0; i < state.range(0); ++i) {
      auto party = rng() % 2 ? cs::Party::kFirstParty : cs::Party::kThirdParty;
      leaks.leaks[{labels[rng() % labels.size()], party}] = cs::Provenance::kStatic;
      disclosed.insert({labels[rng() % labels.size()], cs::Procedure::kPerformed, party});
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [leaks, disclosed] = cases[i++ % cases.size()];
    benchmark::DoNotOptimize(cs::compliance::CheckCompliance(leaks, disclosed, Table()));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CheckCompliance)->Arg(4)->Arg(16);

void BM_DomainDisclosure(benchmark::State& state) {
  auto ownership = cs::OwnershipMap::Load(cs::testing::DataDir() / "ownership.json");
  std::set<std::string> domains;
  for (const auto& [domain, terms] : ownership.entries()) domains.insert(domain);
  std::string policy;
  for (const auto& s : cs::testing::SyntheticPolicyCorpus({.policies = 5})) {
    policy += s.text + " ";
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cs::compliance::CheckDomainDisclosure(domains, policy, ownership));
  }
}
BENCHMARK(BM_DomainDisclosure);

}  // namespace

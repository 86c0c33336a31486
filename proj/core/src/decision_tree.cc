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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "complyscope/dynamic_analyzer.h"
#include "complyscope/error.h"
#include "json.hpp"

namespace complyscope::dynamic {

namespace {

constexpr std::string_view kTreeFormat = "complyscope.flow_tree";
constexpr int kTreeVersion = 1;

double Entropy(std::size_t pos, std::size_t n) {
  if (n == 0 || pos == 0 || pos == n) return 0.0;
  double p = static_cast<double>(pos) / static_cast<double>(n);
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

class Grower {
 public:
  Grower(std::span<const std::vector<int>> rows, std::span<const bool> labels,
         const std::vector<std::string>& vocab, const TreeOptions& options,
         std::vector<DecisionTree::Node>& nodes)
      : rows_(rows), labels_(labels), vocab_(vocab), options_(options),
        nodes_(nodes) {}

  int Grow(std::vector<std::size_t>& idx, std::size_t depth) {
    DecisionTree::Node node;
    node.samples = idx.size();
    for (std::size_t i : idx) node.positives += labels_[i] ? 1 : 0;
    node.label = 2 * node.positives > node.samples;
    int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    bool pure = node.positives == 0 || node.positives == node.samples;
    if (pure || idx.size() < options_.min_node_size || depth >= options_.max_depth) {
      return self;
    }
    int best = BestSplit(idx, node.positives);
    if (best < 0) return self;

    std::vector<std::size_t> yes, no;
    for (std::size_t i : idx) {
      (std::binary_search(rows_[i].begin(), rows_[i].end(), best) ? yes : no).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    int present = Grow(yes, depth + 1);
    int absent = Grow(no, depth + 1);
    auto& n = nodes_[self];
    n.leaf = false;
    n.token = vocab_[best];
    n.present = present;
    n.absent = absent;
    return self;
  }

 private:
  // Gain ratio over tokens whose gain is at least the average gain.
  // Zero-gain splits stay eligible so impure nodes can still be separated.
  int BestSplit(const std::vector<std::size_t>& idx, std::size_t pos) {
    std::map<int, std::pair<std::size_t, std::size_t>> counts;  // n, positives
    for (std::size_t i : idx) {
      for (int t : rows_[i]) {
        auto& c = counts[t];
        ++c.first;
        c.second += labels_[i] ? 1 : 0;
      }
    }
    const std::size_t n = idx.size();
    const double base = Entropy(pos, n);
    struct Candidate {
      int token;
      double gain;
      double ratio;
    };
    std::vector<Candidate> cands;
    for (const auto& [t, c] : counts) {
      auto [ny, py] = c;
      if (ny == n) continue;  // no split
      std::size_t nn = n - ny, pn = pos - py;
      double fy = static_cast<double>(ny) / static_cast<double>(n);
      double gain = base - fy * Entropy(py, ny) - (1.0 - fy) * Entropy(pn, nn);
      double split_info = Entropy(ny, n);
      cands.push_back({t, gain, gain / split_info});
    }
    if (cands.empty()) return -1;
    double avg = 0.0;
    for (const auto& c : cands) avg += c.gain;
    avg /= static_cast<double>(cands.size());
    int best = -1;
    double best_ratio = -1.0;
    for (const auto& c : cands) {  // ascending token id, so ties keep the first
      if (c.gain + 1e-12 < avg) continue;
      if (c.ratio > best_ratio) {
        best_ratio = c.ratio;
        best = c.token;
      }
    }
    return best;
  }

  std::span<const std::vector<int>> rows_;
  std::span<const bool> labels_;
  const std::vector<std::string>& vocab_;
  const TreeOptions& options_;
  std::vector<DecisionTree::Node>& nodes_;
};

}  // namespace

DecisionTree DecisionTree::Train(std::span<const std::vector<std::string>> tokens,
                                 std::span<const bool> labels,
                                 const TreeOptions& options) {
  if (tokens.size() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "tokens and labels differ in length");
  }
  std::size_t pos = std::count(labels.begin(), labels.end(), true);
  if (pos == 0 || pos == labels.size()) {
    throw Error(ErrorCode::kSingleClassCorpus,
                "leak classifier needs both leaking and clean flows");
  }
  std::vector<std::string> vocab;
  for (const auto& row : tokens) vocab.insert(vocab.end(), row.begin(), row.end());
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  std::vector<std::vector<int>> rows(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    rows[i].reserve(tokens[i].size());
    for (const auto& t : tokens[i]) {
      rows[i].push_back(static_cast<int>(
          std::lower_bound(vocab.begin(), vocab.end(), t) - vocab.begin()));
    }
    std::sort(rows[i].begin(), rows[i].end());
    rows[i].erase(std::unique(rows[i].begin(), rows[i].end()), rows[i].end());
  }

  DecisionTree tree;
  tree.options_ = options;
  std::vector<std::size_t> idx(tokens.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Grower(rows, labels, vocab, options, tree.nodes_).Grow(idx, 0);
  return tree;
}

bool DecisionTree::Predict(std::span<const std::string> sorted_tokens) const {
  if (nodes_.empty()) return false;
  int at = 0;
  while (!nodes_[at].leaf) {
    const Node& n = nodes_[at];
    bool has = std::binary_search(sorted_tokens.begin(), sorted_tokens.end(), n.token);
    at = has ? n.present : n.absent;
  }
  return nodes_[at].label;
}

std::size_t DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::function<std::size_t(int)> d = [&](int i) -> std::size_t {
    const Node& n = nodes_[i];
    return n.leaf ? 0 : 1 + std::max(d(n.present), d(n.absent));
  };
  return d(0);
}

std::string DecisionTree::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = kTreeFormat;
  j["version"] = kTreeVersion;
  j["min_node_size"] = options_.min_node_size;
  j["max_depth"] = options_.max_depth;
  nlohmann::ordered_json pre = nlohmann::ordered_json::array();
  std::function<void(int)> walk = [&](int i) {
    const Node& n = nodes_[i];
    nlohmann::ordered_json jn;
    if (n.leaf) {
      jn["label"] = n.label;
    } else {
      jn["token"] = n.token;
      jn["label"] = n.label;
    }
    jn["samples"] = n.samples;
    jn["positives"] = n.positives;
    pre.push_back(std::move(jn));
    if (!n.leaf) {
      walk(n.present);
      walk(n.absent);
    }
  };
  if (!nodes_.empty()) walk(0);
  j["nodes"] = std::move(pre);
  return j.dump();
}

DecisionTree DecisionTree::FromJson(std::string_view s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("tree: ") + e.what());
  }
  if (j.value("format", "") != kTreeFormat || j.value("version", 0) != kTreeVersion) {
    throw Error(ErrorCode::kParse, "not a flow decision tree");
  }
  DecisionTree tree;
  tree.options_.min_node_size = j.value("min_node_size", std::size_t{2});
  tree.options_.max_depth = j.value("max_depth", std::size_t{30});
  const auto& pre = j.at("nodes");
  std::size_t pos = 0;
  std::function<int()> read = [&]() -> int {
    if (pos >= pre.size()) throw Error(ErrorCode::kParse, "tree: truncated node list");
    const auto& jn = pre[pos++];
    Node n;
    n.label = jn.value("label", false);
    n.samples = jn.value("samples", std::size_t{0});
    n.positives = jn.value("positives", std::size_t{0});
    int self = static_cast<int>(tree.nodes_.size());
    if (jn.contains("token")) {
      n.leaf = false;
      n.token = jn["token"].get<std::string>();
    }
    tree.nodes_.push_back(n);
    if (!n.leaf) {
      int present = read();
      int absent = read();
      tree.nodes_[self].present = present;
      tree.nodes_[self].absent = absent;
    }
    return self;
  };
  if (!pre.empty()) read();
  if (pos != pre.size()) throw Error(ErrorCode::kParse, "tree: trailing nodes");
  return tree;
}

DecisionTree TrainLeakClassifier(std::span<const FlowRecord> flows,
                                 const TreeOptions& options) {
  std::vector<std::vector<std::string>> tokens;
  std::vector<bool> labels_vec;
  tokens.reserve(flows.size());
  for (const auto& f : flows) {
    if (!f.leak) {
      throw Error(ErrorCode::kInvalidArgument,
                  "training flow without a leak annotation");
    }
    tokens.push_back(FlowTokens(FlowFeatureText(f)));
    labels_vec.push_back(*f.leak);
  }
  std::unique_ptr<bool[]> labels(new bool[labels_vec.size()]);
  std::copy(labels_vec.begin(), labels_vec.end(), labels.get());
  return DecisionTree::Train(tokens, std::span<const bool>(labels.get(), labels_vec.size()),
                             options);
}

bool PredictLeak(const DecisionTree& tree, const FlowRecord& flow) {
  return tree.Predict(FlowTokens(FlowFeatureText(flow)));
}

}  // namespace complyscope::dynamic

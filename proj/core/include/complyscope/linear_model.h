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

#ifndef COMPLYSCOPE_LINEAR_MODEL_H_
#define COMPLYSCOPE_LINEAR_MODEL_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "complyscope/policy_features.h"

namespace complyscope::ml {

struct LabeledVector {
  features::FeatureVector x;
  bool y = false;
};

struct TrainOptions {
  std::uint64_t seed = 0;
  int epochs = 20;
  double lambda = 1e-4;
  // Weights each example by n / (2 * n_class) so rare positives are not
  // drowned out.
  bool class_balanced = true;
};

// Binary linear classifier; positive iff w.x + b > 0.
struct LinearModel {
  std::string label;
  std::vector<double> weights;
  double bias = 0.0;
  std::uint64_t seed = 0;
  int epochs = 0;
  std::string corpus_hash;
  // Set when training saw a single class and emitted a fixed answer.
  bool constant = false;

  // Throws Error(kDimensionMismatch) if x is not in this model's space.
  double Margin(const features::FeatureVector& x) const;
  bool Predict(const features::FeatureVector& x) const {
    return Margin(x) > 0.0;
  }
};

// Portable uniform draw from [0, bound) and Fisher-Yates shuffle; unlike
// std::shuffle the sequence is fixed across standard libraries.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);
void ShuffleIndices(std::vector<std::size_t>& order, std::mt19937_64& rng);

// Hinge-loss SVM by stochastic subgradient descent with step 1/(lambda t)
// and a per-epoch shuffle drawn from `seed`. The bias is learned as the
// weight of an implicit constant feature. The returned weights are the
// average of the iterates over the final epoch. A corpus without positives (or
// without negatives) yields a constant-negative model with `constant` set.
// Throws Error(kEmptyCorpus) or Error(kDimensionMismatch).
LinearModel TrainBinary(std::span<const LabeledVector> corpus,
                        const TrainOptions& options = {},
                        std::string label = {});

}  // namespace complyscope::ml

#endif  // COMPLYSCOPE_LINEAR_MODEL_H_

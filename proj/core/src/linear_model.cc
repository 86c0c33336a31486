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

#include "complyscope/linear_model.h"

#include <cmath>
#include <numeric>
#include <random>

#include "complyscope/error.h"

namespace complyscope::ml {

namespace {

// w = scale * v with the bias stored as the last coordinate of v. While
// averaging is on, the running sum of iterates is kept as
// sum_ + a_ * v - u_, which keeps every update O(nnz).
class ScaledWeights {
 public:
  explicit ScaledWeights(std::size_t dim) : v_(dim + 1, 0.0) {}

  double Dot(const features::FeatureVector& x) const {
    double acc = v_.back();
    for (const auto& e : x.entries) acc += v_[e.index] * e.value;
    return scale_ * acc;
  }

  void Scale(double factor) {
    if (factor <= 0.0) {
      Flush();
      std::fill(v_.begin(), v_.end(), 0.0);
      scale_ = 1.0;
      sq_norm_ = 0.0;
      return;
    }
    scale_ *= factor;
    if (scale_ < 1e-9) Renormalize();
  }

  // w += a * [x, 1]
  void Add(const features::FeatureVector& x, double a) {
    double c = a / scale_;
    double vx = v_.back();
    double xx = 1.0;
    for (const auto& e : x.entries) {
      vx += v_[e.index] * e.value;
      xx += e.value * e.value;
    }
    sq_norm_ += 2.0 * c * vx + c * c * xx;
    for (const auto& e : x.entries) v_[e.index] += c * e.value;
    v_.back() += c;
    if (averaging_) {
      for (const auto& e : x.entries) u_[e.index] += a_ * c * e.value;
      u_.back() += a_ * c;
    }
  }

  double Norm() const { return scale_ * std::sqrt(std::max(sq_norm_, 0.0)); }

  void StartAveraging() {
    averaging_ = true;
    sum_.assign(v_.size(), 0.0);
    u_.assign(v_.size(), 0.0);
    a_ = 0.0;
    count_ = 0;
  }

  // Call once per step, after the step's updates.
  void Accumulate() {
    a_ += scale_;
    ++count_;
  }

  void Materialize(std::vector<double>& weights, double& bias) {
    std::vector<double> out(v_.size());
    if (averaging_ && count_ > 0) {
      Flush();
      for (std::size_t i = 0; i < v_.size(); ++i) {
        out[i] = sum_[i] / static_cast<double>(count_);
      }
    } else {
      for (std::size_t i = 0; i < v_.size(); ++i) out[i] = scale_ * v_[i];
    }
    bias = out.back();
    out.pop_back();
    weights = std::move(out);
  }

 private:
  void Flush() {
    if (!averaging_) return;
    for (std::size_t i = 0; i < v_.size(); ++i) sum_[i] += a_ * v_[i] - u_[i];
    std::fill(u_.begin(), u_.end(), 0.0);
    a_ = 0.0;
  }

  void Renormalize() {
    Flush();
    for (double& x : v_) x *= scale_;
    sq_norm_ *= scale_ * scale_;
    scale_ = 1.0;
  }

  std::vector<double> v_;
  double scale_ = 1.0;
  double sq_norm_ = 0.0;
  bool averaging_ = false;
  std::vector<double> sum_;
  std::vector<double> u_;
  double a_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  std::uint64_t limit = std::mt19937_64::max() -
                        (std::mt19937_64::max() % bound + 1) % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r > limit);
  return r % bound;
}

void ShuffleIndices(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = UniformBelow(rng, i);
    std::swap(order[i - 1], order[j]);
  }
}

double LinearModel::Margin(const features::FeatureVector& x) const {
  if (x.dim() != weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model " + label + " expects dimension " +
                    std::to_string(weights.size()) + ", got " +
                    std::to_string(x.dim()));
  }
  double acc = bias;
  for (const auto& e : x.entries) acc += weights[e.index] * e.value;
  return acc;
}

LinearModel TrainBinary(std::span<const LabeledVector> corpus,
                        const TrainOptions& options, std::string label) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no training examples for " + label);
  }
  if (options.epochs < 1 || !(options.lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epochs and lambda must be positive");
  }
  const std::size_t dim = corpus.front().x.dim();
  std::size_t positives = 0;
  for (const auto& ex : corpus) {
    if (ex.x.dim() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "training vectors disagree on dimension");
    }
    positives += ex.y ? 1 : 0;
  }
  const std::size_t n = corpus.size();

  LinearModel model;
  model.label = std::move(label);
  model.seed = options.seed;
  model.epochs = options.epochs;
  model.weights.assign(dim, 0.0);

  if (positives == 0 || positives == n) {
    model.constant = true;
    model.bias = -1.0;
    return model;
  }

  double w_pos = 1.0, w_neg = 1.0;
  if (options.class_balanced) {
    w_pos = static_cast<double>(n) / (2.0 * static_cast<double>(positives));
    w_neg = static_cast<double>(n) / (2.0 * static_cast<double>(n - positives));
  }

  const double lambda = options.lambda;
  const double radius = 1.0 / std::sqrt(lambda);
  ScaledWeights w(dim);
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    ShuffleIndices(order, rng);
    if (epoch + 1 == options.epochs) w.StartAveraging();
    for (std::size_t i : order) {
      ++t;
      const LabeledVector& ex = corpus[i];
      const double y = ex.y ? 1.0 : -1.0;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double margin = y * w.Dot(ex.x);
      w.Scale(1.0 - eta * lambda);
      if (margin < 1.0) w.Add(ex.x, eta * y * (ex.y ? w_pos : w_neg));
      double norm = w.Norm();
      if (norm > radius) w.Scale(radius / norm);
      w.Accumulate();
    }
  }
  w.Materialize(model.weights, model.bias);
  return model;
}

}  // namespace complyscope::ml

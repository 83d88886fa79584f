// Copyright 2026 The mvpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "core/errors.hpp"

namespace mvpl {

enum class FusionMode { early, tensor };

/// A fused audio+text feature vector.
///   early:  [audio; text], length d_a + d_t
///   tensor: flattened [1; audio] (outer) [1; text], row-major with the audio
///           axis as rows, length (d_a + 1)(d_t + 1); row 0 carries
///           (1, text...) and column 0 carries (1, audio...), so the early
///           concatenation is embedded in it.
struct FusedFeature {
  Eigen::VectorXd vector;
  FusionMode mode = FusionMode::early;
  Eigen::Index audio_dim = 0;
  Eigen::Index text_dim = 0;
};

FusedFeature fuse(const Eigen::Ref<const Eigen::VectorXd>& audio,
                  const Eigen::Ref<const Eigen::VectorXd>& text,
                  FusionMode mode);

struct Hyperparams {
  double learning_rate = 1e-4;
  double weight_decay = 1e-5;
  int epochs = 30;
  int batch_size = 64;
  std::uint64_t seed = 0;
};

/// Multinomial logistic model. Weights are classes x feature_dim.
struct LinearModel {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  Hyperparams hyperparams;

  Eigen::Index class_count() const { return weights.rows(); }
  Eigen::Index feature_dim() const { return weights.cols(); }
};

/// Mean cross-entropy of the softmax model over (features, labels); fills
/// the analytic gradients when the out-pointers are non-null. This is the
/// exact quantity train() descends (weight decay excluded, it is decoupled),
/// which is what the finite-difference check probes.
double softmax_loss(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                    const Eigen::Ref<const Eigen::VectorXd>& bias,
                    const Eigen::Ref<const Eigen::MatrixXd>& features,
                    const std::vector<int>& labels,
                    Eigen::MatrixXd* grad_weights = nullptr,
                    Eigen::VectorXd* grad_bias = nullptr);

/// Seeded mini-batch gradient descent with decoupled weight decay. Rows of
/// features are samples; labels are class indices in [0, class_count).
/// Every class must appear at least once (DegenerateTrainingSet otherwise);
/// a non-finite loss aborts with TrainingDiverged. Identical inputs and
/// seed give a bit-identical model.
LinearModel train(const Eigen::Ref<const Eigen::MatrixXd>& features,
                  const std::vector<int>& labels,
                  int class_count,
                  const Hyperparams& hp);

/// Softmax probabilities; entries in (0,1), summing to 1.
Eigen::VectorXd predict_proba(const LinearModel& m,
                              const Eigen::Ref<const Eigen::VectorXd>& feature);

/// Argmax class; ties break toward the lowest index.
int predict_class(const LinearModel& m,
                  const Eigen::Ref<const Eigen::VectorXd>& feature);

/// Unweighted accuracy: mean per-class recall over the classes present in
/// truth.
double unweighted_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth,
                           int class_count);

/// Interface the self-training loop works against, so richer models can be
/// plugged in behind the same contract. Implementations must be
/// deterministic in (inputs, seed).
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const Eigen::Ref<const Eigen::MatrixXd>& features,
                   const std::vector<int>& labels,
                   int class_count,
                   std::uint64_t seed) = 0;
  virtual Eigen::VectorXd predict_proba(
      const Eigen::Ref<const Eigen::VectorXd>& feature) const = 0;
  int predict(const Eigen::Ref<const Eigen::VectorXd>& feature) const;
};

class LinearSoftmaxClassifier final : public Classifier {
 public:
  explicit LinearSoftmaxClassifier(Hyperparams hp) : hp_(hp) {}

  void fit(const Eigen::Ref<const Eigen::MatrixXd>& features,
           const std::vector<int>& labels,
           int class_count,
           std::uint64_t seed) override;
  Eigen::VectorXd predict_proba(
      const Eigen::Ref<const Eigen::VectorXd>& feature) const override;

  const LinearModel& model() const;

 private:
  Hyperparams hp_;
  std::unique_ptr<LinearModel> model_;
};

}  // namespace mvpl

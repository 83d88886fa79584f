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

#include "core/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/rng.hpp"

namespace mvpl {

FusedFeature fuse(const Eigen::Ref<const Eigen::VectorXd>& audio,
                  const Eigen::Ref<const Eigen::VectorXd>& text,
                  FusionMode mode) {
  if (audio.size() == 0 || text.size() == 0) {
    throw Error(ErrorCode::InvalidInput, "fusion requires non-empty vectors");
  }
  if (!audio.allFinite() || !text.allFinite()) {
    throw Error(ErrorCode::InvalidData, "fusion inputs must be finite");
  }

  FusedFeature out;
  out.mode = mode;
  out.audio_dim = audio.size();
  out.text_dim = text.size();

  if (mode == FusionMode::early) {
    out.vector.resize(audio.size() + text.size());
    out.vector << audio, text;
    return out;
  }

  Eigen::VectorXd audio_aug(audio.size() + 1);
  audio_aug << 1.0, audio;
  Eigen::VectorXd text_aug(text.size() + 1);
  text_aug << 1.0, text;
  // row-major flatten, audio axis as rows
  out.vector.resize(audio_aug.size() * text_aug.size());
  for (Eigen::Index i = 0; i < audio_aug.size(); ++i) {
    for (Eigen::Index j = 0; j < text_aug.size(); ++j) {
      out.vector[i * text_aug.size() + j] = audio_aug[i] * text_aug[j];
    }
  }
  return out;
}

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const Eigen::VectorXd shifted =
      (logits.array() - logits.maxCoeff()).exp();
  return shifted / shifted.sum();
}

}  // namespace

double softmax_loss(const Eigen::Ref<const Eigen::MatrixXd>& weights,
                    const Eigen::Ref<const Eigen::VectorXd>& bias,
                    const Eigen::Ref<const Eigen::MatrixXd>& features,
                    const std::vector<int>& labels,
                    Eigen::MatrixXd* grad_weights,
                    Eigen::VectorXd* grad_bias) {
  const Eigen::Index n = features.rows();
  const Eigen::Index classes = weights.rows();
  if (n == 0 || static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorCode::InvalidInput, "feature/label count mismatch");
  }
  if (features.cols() != weights.cols() || bias.size() != classes) {
    throw Error(ErrorCode::DimensionMismatch, "model/feature shapes disagree");
  }

  if (grad_weights) grad_weights->setZero(classes, weights.cols());
  if (grad_bias) grad_bias->setZero(classes);

  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    if (y < 0 || y >= classes) {
      throw Error(ErrorCode::UnknownClass,
                  "label index " + std::to_string(y) + " outside model range");
    }
    const Eigen::VectorXd logits = weights * features.row(i).transpose() + bias;
    const Eigen::VectorXd probs = softmax(logits);
    loss -= std::log(std::max(probs[y], 1e-300));
    if (grad_weights || grad_bias) {
      Eigen::VectorXd delta = probs;
      delta[y] -= 1.0;
      if (grad_weights) grad_weights->noalias() += inv_n * delta * features.row(i);
      if (grad_bias) *grad_bias += inv_n * delta;
    }
  }
  return loss * inv_n;
}

LinearModel train(const Eigen::Ref<const Eigen::MatrixXd>& features,
                  const std::vector<int>& labels,
                  int class_count,
                  const Hyperparams& hp) {
  const Eigen::Index n = features.rows();
  if (n == 0) {
    throw Error(ErrorCode::EmptyTrainingSet, "no training samples");
  }
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorCode::InvalidInput, "feature/label count mismatch");
  }
  if (class_count < 2) {
    throw Error(ErrorCode::InvalidInput, "need at least 2 classes");
  }
  if (hp.learning_rate <= 0.0 || hp.weight_decay < 0.0 || hp.epochs < 1 ||
      hp.batch_size < 1) {
    throw Error(ErrorCode::InvalidConfig, "invalid hyperparameters");
  }
  if (!features.allFinite()) {
    throw Error(ErrorCode::InvalidData, "non-finite training features");
  }

  std::vector<int> seen(static_cast<std::size_t>(class_count), 0);
  for (int y : labels) {
    if (y < 0 || y >= class_count) {
      throw Error(ErrorCode::UnknownClass,
                  "label index " + std::to_string(y) + " outside class range");
    }
    seen[static_cast<std::size_t>(y)] = 1;
  }
  for (int c = 0; c < class_count; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw Error(ErrorCode::DegenerateTrainingSet,
                  "class index " + std::to_string(c) + " absent from training data");
    }
  }

  LinearModel model;
  model.hyperparams = hp;
  model.bias = Eigen::VectorXd::Zero(class_count);
  model.weights.resize(class_count, features.cols());
  Rng rng(derive_seed(hp.seed, "init"));
  for (Eigen::Index r = 0; r < model.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.weights.cols(); ++c) {
      model.weights(r, c) = 0.02 * rng.next_double() - 0.01;  // uniform [-0.01, 0.01)
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng shuffle_rng(derive_seed(hp.seed, "shuffle"));

  Eigen::MatrixXd grad_w;
  Eigen::VectorXd grad_b;
  const double decay_step = hp.learning_rate * hp.weight_decay;

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (Eigen::Index start = 0; start < n; start += hp.batch_size) {
      const Eigen::Index count = std::min<Eigen::Index>(hp.batch_size, n - start);
      Eigen::MatrixXd batch(count, features.cols());
      std::vector<int> batch_labels(static_cast<std::size_t>(count));
      for (Eigen::Index k = 0; k < count; ++k) {
        const Eigen::Index row = order[static_cast<std::size_t>(start + k)];
        batch.row(k) = features.row(row);
        batch_labels[static_cast<std::size_t>(k)] =
            labels[static_cast<std::size_t>(row)];
      }
      const double loss =
          softmax_loss(model.weights, model.bias, batch, batch_labels, &grad_w, &grad_b);
      if (!std::isfinite(loss)) {
        throw Error(ErrorCode::TrainingDiverged,
                    "non-finite loss at epoch " + std::to_string(epoch));
      }
      model.weights -= hp.learning_rate * grad_w;
      model.weights -= decay_step * model.weights;  // decoupled decay, weights only
      model.bias -= hp.learning_rate * grad_b;
    }
  }

  if (!model.weights.allFinite() || !model.bias.allFinite()) {
    throw Error(ErrorCode::TrainingDiverged, "non-finite parameters after training");
  }
  return model;
}

Eigen::VectorXd predict_proba(const LinearModel& m,
                              const Eigen::Ref<const Eigen::VectorXd>& feature) {
  if (feature.size() != m.feature_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "feature dim " + std::to_string(feature.size()) +
                    " does not match model dim " + std::to_string(m.feature_dim()));
  }
  return softmax(m.weights * feature + m.bias);
}

int predict_class(const LinearModel& m,
                  const Eigen::Ref<const Eigen::VectorXd>& feature) {
  const Eigen::VectorXd probs = predict_proba(m, feature);
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[best]) best = c;
  }
  return static_cast<int>(best);
}

double unweighted_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth,
                           int class_count) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw Error(ErrorCode::InvalidInput,
                "prediction and truth lists must be non-empty and equal length");
  }
  std::vector<double> correct(static_cast<std::size_t>(class_count), 0.0);
  std::vector<double> total(static_cast<std::size_t>(class_count), 0.0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int y = truth[i];
    if (y < 0 || y >= class_count) {
      throw Error(ErrorCode::UnknownClass,
                  "truth label index " + std::to_string(y) + " outside class range");
    }
    total[static_cast<std::size_t>(y)] += 1.0;
    if (predicted[i] == y) correct[static_cast<std::size_t>(y)] += 1.0;
  }
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < class_count; ++c) {
    if (total[static_cast<std::size_t>(c)] > 0.0) {
      sum += correct[static_cast<std::size_t>(c)] / total[static_cast<std::size_t>(c)];
      ++present;
    }
  }
  return sum / static_cast<double>(present);
}

int Classifier::predict(const Eigen::Ref<const Eigen::VectorXd>& feature) const {
  const Eigen::VectorXd probs = predict_proba(feature);
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[best]) best = c;
  }
  return static_cast<int>(best);
}

void LinearSoftmaxClassifier::fit(const Eigen::Ref<const Eigen::MatrixXd>& features,
                                  const std::vector<int>& labels,
                                  int class_count,
                                  std::uint64_t seed) {
  Hyperparams hp = hp_;
  hp.seed = seed;
  model_ = std::make_unique<LinearModel>(train(features, labels, class_count, hp));
}

Eigen::VectorXd LinearSoftmaxClassifier::predict_proba(
    const Eigen::Ref<const Eigen::VectorXd>& feature) const {
  return mvpl::predict_proba(model(), feature);
}

const LinearModel& LinearSoftmaxClassifier::model() const {
  if (!model_) {
    throw Error(ErrorCode::InvalidInput, "classifier has not been fitted");
  }
  return *model_;
}

}  // namespace mvpl

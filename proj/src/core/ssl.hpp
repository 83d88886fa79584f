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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/consensus.hpp"

namespace mvpl {

enum class Strategy {
  proposed,
  supervised_full,
  supervised_limited,
  decision_merging,
  co_training,
};

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

/// Everything the training strategies need, keyed by item id. Ground truth
/// is only required where a strategy actually reads it: seed/val/test for
/// all strategies, the full train pool for supervised_full.
struct Dataset {
  std::vector<std::string> classes;
  std::map<std::string, Eigen::VectorXd> audio;  ///< audio-view feature per item
  std::map<std::string, Eigen::VectorXd> text;   ///< text-view feature per item
  std::map<std::string, int> truth;              ///< class index where known
  std::vector<std::string> seed_items;  ///< train items with ground-truth labels
  std::vector<std::string> pool_items;  ///< train items without ground truth
  std::vector<std::string> val_items;
  std::vector<std::string> test_items;
};

using ClassifierFactory =
    std::function<std::unique_ptr<Classifier>(const Hyperparams&)>;

struct SslConfig {
  FusionMode fusion = FusionMode::early;
  Hyperparams hyperparams;
  int max_iterations = 40;
  int patience = 2;
  double removal_fraction = 0.2;
  /// Merged/top probability needed to admit an item in the decision-merging
  /// and co-training baselines (admission uses >=).
  double admission_threshold = 0.5;
  std::uint64_t seed = 0;
  std::string config_digest;
  /// Defaults to LinearSoftmaxClassifier when unset.
  ClassifierFactory classifier_factory;
};

/// Snapshot of one iteration, taken at training time: the sets below are
/// the ones the iteration's model was fitted on. Promotion and removal
/// counts describe what happened after evaluation (zero on the final,
/// stopping iteration).
struct IterationState {
  int iteration = 0;  ///< 1-based
  std::vector<std::string> training_ids;
  std::vector<std::string> unconfident_ids;
  std::vector<std::string> removed_ids;  ///< cumulative
  double validation_ua = 0.0;
  double best_ua = 0.0;
  int no_improve_count = 0;
  /// Items promoted out of the unconfident set at the end of this iteration,
  /// with the model label they were stored under.
  std::vector<std::pair<std::string, int>> promotions;
  int removed_count = 0;
};

struct SslResult {
  /// One model for the single-classifier strategies; audio then text model
  /// for the dual-view baselines.
  std::vector<LinearModel> models;
  std::vector<IterationState> history;
  int best_iteration = 0;  ///< 1-based iteration the reported model comes from
  double final_test_ua = 0.0;
  Strategy strategy = Strategy::proposed;
  std::string config_digest;
};

/// The iterative self-training loop: train on the confident set, evaluate
/// on validation with a strictly-greater-than-best improvement rule, stop
/// after cfg.patience consecutive non-improvements or cfg.max_iterations;
/// otherwise promote unconfident items whose model label matches their
/// acoustic or linguistic pseudo-label, remove a fresh random 20% of the
/// original confident set (seed excluded, never re-sampled), and retrain
/// from a reinitialized classifier seeded per iteration. The reported model
/// is the best-validation iteration's.
SslResult run_proposed(const Dataset& data,
                       const ConfidencePartition& partition,
                       const std::map<std::string, PseudoLabelRecord>& pseudo,
                       const SslConfig& cfg);

/// Single fit on the full train split (full) or on the seed only (limited).
SslResult run_supervised(const Dataset& data, bool full, const SslConfig& cfg);

/// Two unimodal classifiers; per iteration their probability vectors are
/// averaged and pool items whose merged top probability reaches the
/// threshold join both training sets with the merged argmax label.
SslResult run_decision_merging(const Dataset& data, const SslConfig& cfg);

/// Two unimodal classifiers; per iteration each model's confident pool
/// items join the other model's training set with the predicting model's
/// argmax label. The reported model is the better of the two on validation.
SslResult run_co_training(const Dataset& data, const SslConfig& cfg);

/// Dispatch by strategy.
SslResult run_strategy(Strategy strategy,
                       const Dataset& data,
                       const ConfidencePartition* partition,
                       const std::map<std::string, PseudoLabelRecord>* pseudo,
                       const SslConfig& cfg);

}  // namespace mvpl

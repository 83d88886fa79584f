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

#include "core/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "core/rng.hpp"

namespace mvpl {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::proposed: return "proposed";
    case Strategy::supervised_full: return "supervised_full";
    case Strategy::supervised_limited: return "supervised_limited";
    case Strategy::decision_merging: return "decision_merging";
    case Strategy::co_training: return "co_training";
  }
  return "unknown";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "proposed") return Strategy::proposed;
  if (name == "supervised_full") return Strategy::supervised_full;
  if (name == "supervised_limited") return Strategy::supervised_limited;
  if (name == "decision_merging") return Strategy::decision_merging;
  if (name == "co_training") return Strategy::co_training;
  throw Error(ErrorCode::InvalidConfig, "unknown strategy '" + name + "'");
}

namespace {

int class_index(const std::vector<std::string>& classes, const std::string& label) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == label) return static_cast<int>(i);
  }
  throw Error(ErrorCode::UnknownClass, "unknown class label '" + label + "'");
}

enum class View { bimodal, audio, text };

const Eigen::VectorXd& raw_view(const Dataset& data, View view,
                                const std::string& item) {
  const auto& source = (view == View::text) ? data.text : data.audio;
  const auto it = source.find(item);
  if (it == source.end()) {
    throw Error(ErrorCode::CoverageMismatch,
                std::string("no ") + (view == View::text ? "text" : "audio") +
                    "-view feature for item '" + item + "'");
  }
  return it->second;
}

/// Materialized per-item features for one view.
class FeatureTable {
 public:
  FeatureTable(const Dataset& data, View view, FusionMode fusion) {
    auto add = [&](const std::vector<std::string>& ids) {
      for (const std::string& item : ids) {
        if (features_.count(item)) continue;
        if (view == View::bimodal) {
          features_.emplace(item, fuse(raw_view(data, View::audio, item),
                                       raw_view(data, View::text, item), fusion)
                                      .vector);
        } else {
          features_.emplace(item, raw_view(data, view, item));
        }
      }
    };
    add(data.seed_items);
    add(data.pool_items);
    add(data.val_items);
    add(data.test_items);
  }

  const Eigen::VectorXd& at(const std::string& item) const {
    return features_.at(item);
  }

  Eigen::MatrixXd matrix(const std::vector<std::string>& ids) const {
    if (ids.empty()) {
      throw Error(ErrorCode::EmptyTrainingSet, "no items to featurize");
    }
    const Eigen::Index dim = features_.at(ids.front()).size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), dim);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) = features_.at(ids[i]).transpose();
    }
    return out;
  }

 private:
  std::map<std::string, Eigen::VectorXd> features_;
};

int truth_label(const Dataset& data, const std::string& item) {
  const auto it = data.truth.find(item);
  if (it == data.truth.end()) {
    throw Error(ErrorCode::InvalidSplit,
                "ground-truth label required for item '" + item + "'");
  }
  return it->second;
}

void validate_run_inputs(const Dataset& data, const SslConfig& cfg) {
  if (cfg.max_iterations < 1) {
    throw Error(ErrorCode::InvalidConfig, "max_iterations must be >= 1");
  }
  if (cfg.patience < 1) {
    throw Error(ErrorCode::InvalidConfig, "patience must be >= 1");
  }
  if (cfg.removal_fraction < 0.0 || cfg.removal_fraction > 1.0) {
    throw Error(ErrorCode::InvalidConfig, "removal_fraction must be in [0, 1]");
  }
  if (data.classes.size() < 2) {
    throw Error(ErrorCode::NoClasses, "need at least 2 registered classes");
  }
  if (data.val_items.empty()) {
    throw Error(ErrorCode::InvalidSplit, "validation set is empty");
  }
  if (data.test_items.empty()) {
    throw Error(ErrorCode::InvalidSplit, "test set is empty");
  }
  for (const std::string& item : data.val_items) truth_label(data, item);
  for (const std::string& item : data.test_items) truth_label(data, item);
}

std::unique_ptr<Classifier> make_classifier(const SslConfig& cfg) {
  if (cfg.classifier_factory) return cfg.classifier_factory(cfg.hyperparams);
  return std::make_unique<LinearSoftmaxClassifier>(cfg.hyperparams);
}

double evaluate_ua(const Classifier& clf, const FeatureTable& features,
                   const std::vector<std::string>& ids, const Dataset& data) {
  std::vector<int> predicted, truth;
  predicted.reserve(ids.size());
  truth.reserve(ids.size());
  for (const std::string& item : ids) {
    predicted.push_back(clf.predict(features.at(item)));
    truth.push_back(truth_label(data, item));
  }
  return unweighted_accuracy(predicted, truth,
                             static_cast<int>(data.classes.size()));
}

void append_linear_model(std::vector<LinearModel>& out, const Classifier* clf) {
  if (const auto* linear = dynamic_cast<const LinearSoftmaxClassifier*>(clf)) {
    out.push_back(linear->model());
  }
}

/// Strictly-greater-than-best improvement rule; ties count as
/// non-improvement.
struct PatienceTracker {
  double best_ua = -std::numeric_limits<double>::infinity();
  int best_iteration = 0;
  int no_improve_count = 0;

  bool observe(int iteration, double ua) {
    if (ua > best_ua) {
      best_ua = ua;
      best_iteration = iteration;
      no_improve_count = 0;
      return true;
    }
    ++no_improve_count;
    return false;
  }
};

int argmax_index(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return static_cast<int>(best);
}

}  // namespace

SslResult run_proposed(const Dataset& data,
                       const ConfidencePartition& partition,
                       const std::map<std::string, PseudoLabelRecord>& pseudo,
                       const SslConfig& cfg) {
  validate_run_inputs(data, cfg);
  const int class_count = static_cast<int>(data.classes.size());
  const FeatureTable features(data, View::bimodal, cfg.fusion);

  // Initial confident pseudo-labels, resolved to class indices once.
  std::map<std::string, int> active_confident;
  for (const auto& [item, label] : partition.confident) {
    active_confident.emplace(item, class_index(data.classes, label));
  }
  const std::size_t initial_confident_count = active_confident.size();
  const std::size_t removal_quota = static_cast<std::size_t>(std::ceil(
      cfg.removal_fraction * static_cast<double>(initial_confident_count)));

  // Not-yet-removed initial-confident items, kept sorted so the
  // without-replacement sampling is deterministic.
  std::vector<std::string> removal_pool;
  removal_pool.reserve(initial_confident_count);
  for (const auto& [item, label] : active_confident) {
    (void)label;
    removal_pool.push_back(item);
  }

  std::set<std::string> unconfident(partition.unconfident.begin(),
                                    partition.unconfident.end());
  std::map<std::string, int> promoted;
  std::set<std::string> removed;

  SslResult result;
  result.strategy = Strategy::proposed;
  result.config_digest = cfg.config_digest;

  PatienceTracker tracker;
  std::unique_ptr<Classifier> best_classifier;

  for (int i = 1; i <= cfg.max_iterations; ++i) {
    // (1) train on the current confident composition
    std::vector<std::string> training_ids;
    std::vector<int> training_labels;
    for (const std::string& item : partition.labeled_seed) {
      training_ids.push_back(item);
      training_labels.push_back(truth_label(data, item));
    }
    for (const auto& [item, label] : active_confident) {
      training_ids.push_back(item);
      training_labels.push_back(label);
    }
    for (const auto& [item, label] : promoted) {
      training_ids.push_back(item);
      training_labels.push_back(label);
    }
    if (training_ids.empty()) {
      throw Error(ErrorCode::EmptyTrainingSet,
                  "confident set is empty at iteration " + std::to_string(i));
    }

    auto classifier = make_classifier(cfg);
    classifier->fit(features.matrix(training_ids), training_labels, class_count,
                    derive_seed(cfg.seed, "iter", static_cast<std::uint64_t>(i)));

    // (2) validation and stopping rule
    const double ua = evaluate_ua(*classifier, features, data.val_items, data);
    const bool improved = tracker.observe(i, ua);

    IterationState state;
    state.iteration = i;
    state.training_ids = training_ids;
    state.unconfident_ids.assign(unconfident.begin(), unconfident.end());
    state.removed_ids.assign(removed.begin(), removed.end());
    state.validation_ua = ua;
    state.best_ua = tracker.best_ua;
    state.no_improve_count = tracker.no_improve_count;
    result.history.push_back(std::move(state));

    Classifier* current = classifier.get();
    if (improved) {
      best_classifier = std::move(classifier);
      current = best_classifier.get();
    }

    if (tracker.no_improve_count >= cfg.patience || i == cfg.max_iterations) break;

    // (3) predict on the unconfident set; promote items whose model label
    // matches their acoustic or linguistic pseudo-label, with the model label
    for (auto it = unconfident.begin(); it != unconfident.end();) {
      const std::string& item = *it;
      const auto rec_it = pseudo.find(item);
      if (rec_it == pseudo.end()) {
        throw Error(ErrorCode::CoverageMismatch,
                    "no pseudo-label record for unconfident item '" + item + "'");
      }
      const PseudoLabelRecord& rec = rec_it->second;
      const int model_label = current->predict(features.at(item));
      const bool matches_acoustic =
          model_label == class_index(data.classes, rec.acoustic_label);
      const bool matches_linguistic =
          rec.linguistic_label &&
          model_label == class_index(data.classes, *rec.linguistic_label);
      if (matches_acoustic || matches_linguistic) {
        promoted.emplace(item, model_label);
        result.history.back().promotions.emplace_back(item, model_label);
        it = unconfident.erase(it);
      } else {
        ++it;
      }
    }

    // (4) remove a fresh 20% sample of the original confident set
    const std::size_t take = std::min(removal_quota, removal_pool.size());
    if (take > 0) {
      Rng rng(derive_seed(cfg.seed, "removal", static_cast<std::uint64_t>(i)));
      for (std::size_t k = 0; k < take; ++k) {
        const std::size_t j =
            k + static_cast<std::size_t>(rng.next_below(removal_pool.size() - k));
        std::swap(removal_pool[k], removal_pool[j]);
      }
      for (std::size_t k = 0; k < take; ++k) {
        removed.insert(removal_pool[k]);
        active_confident.erase(removal_pool[k]);
      }
      removal_pool.erase(removal_pool.begin(),
                         removal_pool.begin() + static_cast<std::ptrdiff_t>(take));
      std::sort(removal_pool.begin(), removal_pool.end());
      result.history.back().removed_count = static_cast<int>(take);
    }

    // (5) the classifier is reinitialized implicitly: the next iteration
    // fits a fresh instance with the next derived seed
  }

  result.best_iteration = tracker.best_iteration;
  result.final_test_ua = evaluate_ua(*best_classifier, features, data.test_items, data);
  append_linear_model(result.models, best_classifier.get());
  return result;
}

SslResult run_supervised(const Dataset& data, bool full, const SslConfig& cfg) {
  validate_run_inputs(data, cfg);
  const int class_count = static_cast<int>(data.classes.size());
  const FeatureTable features(data, View::bimodal, cfg.fusion);

  std::vector<std::string> training_ids = data.seed_items;
  if (full) {
    training_ids.insert(training_ids.end(), data.pool_items.begin(),
                        data.pool_items.end());
  }
  std::sort(training_ids.begin(), training_ids.end());
  if (training_ids.empty()) {
    throw Error(ErrorCode::EmptyTrainingSet, "labeled training subset is empty");
  }
  std::vector<int> training_labels;
  training_labels.reserve(training_ids.size());
  for (const std::string& item : training_ids) {
    training_labels.push_back(truth_label(data, item));
  }

  auto classifier = make_classifier(cfg);
  classifier->fit(features.matrix(training_ids), training_labels, class_count,
                  derive_seed(cfg.seed, "iter", std::uint64_t{1}));

  SslResult result;
  result.strategy = full ? Strategy::supervised_full : Strategy::supervised_limited;
  result.config_digest = cfg.config_digest;

  IterationState state;
  state.iteration = 1;
  state.training_ids = training_ids;
  state.validation_ua = evaluate_ua(*classifier, features, data.val_items, data);
  state.best_ua = state.validation_ua;
  result.history.push_back(std::move(state));

  result.best_iteration = 1;
  result.final_test_ua = evaluate_ua(*classifier, features, data.test_items, data);
  append_linear_model(result.models, classifier.get());
  return result;
}

namespace {

/// Shared scaffolding for the two dual-view baselines: per-iteration
/// training of an audio-only and a text-only classifier over evolving
/// labeled sets, a patience-driven stopping rule, and threshold-gated
/// admission of pool items.
struct DualViewState {
  std::map<std::string, int> audio_set;  // item -> label index
  std::map<std::string, int> text_set;
  std::set<std::string> pool;
};

std::vector<std::string> sorted_union(const DualViewState& s) {
  std::set<std::string> u;
  for (const auto& [item, label] : s.audio_set) {
    (void)label;
    u.insert(item);
  }
  for (const auto& [item, label] : s.text_set) {
    (void)label;
    u.insert(item);
  }
  return {u.begin(), u.end()};
}

}  // namespace

SslResult run_decision_merging(const Dataset& data, const SslConfig& cfg) {
  validate_run_inputs(data, cfg);
  const int class_count = static_cast<int>(data.classes.size());
  const FeatureTable audio_features(data, View::audio, cfg.fusion);
  const FeatureTable text_features(data, View::text, cfg.fusion);

  DualViewState s;
  for (const std::string& item : data.seed_items) {
    const int label = truth_label(data, item);
    s.audio_set.emplace(item, label);
    s.text_set.emplace(item, label);
  }
  s.pool.insert(data.pool_items.begin(), data.pool_items.end());

  SslResult result;
  result.strategy = Strategy::decision_merging;
  result.config_digest = cfg.config_digest;

  PatienceTracker tracker;
  std::unique_ptr<Classifier> best_audio, best_text;

  auto merged_proba = [&](const Classifier& a, const Classifier& t,
                          const std::string& item) {
    return Eigen::VectorXd(0.5 * (a.predict_proba(audio_features.at(item)) +
                                  t.predict_proba(text_features.at(item))));
  };

  for (int i = 1; i <= cfg.max_iterations; ++i) {
    std::vector<std::string> ids;
    std::vector<int> labels;
    for (const auto& [item, label] : s.audio_set) {
      ids.push_back(item);
      labels.push_back(label);
    }
    auto audio_clf = make_classifier(cfg);
    audio_clf->fit(audio_features.matrix(ids), labels, class_count,
                   derive_seed(cfg.seed, "iter", static_cast<std::uint64_t>(i), "audio"));
    auto text_clf = make_classifier(cfg);
    text_clf->fit(text_features.matrix(ids), labels, class_count,
                  derive_seed(cfg.seed, "iter", static_cast<std::uint64_t>(i), "text"));

    // merged-distribution validation UA
    std::vector<int> predicted, truth;
    for (const std::string& item : data.val_items) {
      predicted.push_back(argmax_index(merged_proba(*audio_clf, *text_clf, item)));
      truth.push_back(truth_label(data, item));
    }
    const double ua = unweighted_accuracy(predicted, truth, class_count);
    const bool improved = tracker.observe(i, ua);

    IterationState state;
    state.iteration = i;
    state.training_ids = ids;
    state.unconfident_ids.assign(s.pool.begin(), s.pool.end());
    state.validation_ua = ua;
    state.best_ua = tracker.best_ua;
    state.no_improve_count = tracker.no_improve_count;
    result.history.push_back(std::move(state));

    Classifier* cur_audio = audio_clf.get();
    Classifier* cur_text = text_clf.get();
    if (improved) {
      best_audio = std::move(audio_clf);
      best_text = std::move(text_clf);
      cur_audio = best_audio.get();
      cur_text = best_text.get();
    }

    if (tracker.no_improve_count >= cfg.patience || i == cfg.max_iterations) break;

    // admit pool items whose merged top probability reaches the threshold
    for (auto it = s.pool.begin(); it != s.pool.end();) {
      const Eigen::VectorXd merged = merged_proba(*cur_audio, *cur_text, *it);
      const int label = argmax_index(merged);
      if (merged[label] >= cfg.admission_threshold) {
        s.audio_set.emplace(*it, label);
        s.text_set.emplace(*it, label);
        result.history.back().promotions.emplace_back(*it, label);
        it = s.pool.erase(it);
      } else {
        ++it;
      }
    }
  }

  result.best_iteration = tracker.best_iteration;
  std::vector<int> predicted, truth;
  for (const std::string& item : data.test_items) {
    predicted.push_back(argmax_index(merged_proba(*best_audio, *best_text, item)));
    truth.push_back(truth_label(data, item));
  }
  result.final_test_ua = unweighted_accuracy(predicted, truth, class_count);
  append_linear_model(result.models, best_audio.get());
  append_linear_model(result.models, best_text.get());
  return result;
}

SslResult run_co_training(const Dataset& data, const SslConfig& cfg) {
  validate_run_inputs(data, cfg);
  const int class_count = static_cast<int>(data.classes.size());
  const FeatureTable audio_features(data, View::audio, cfg.fusion);
  const FeatureTable text_features(data, View::text, cfg.fusion);

  DualViewState s;
  for (const std::string& item : data.seed_items) {
    const int label = truth_label(data, item);
    s.audio_set.emplace(item, label);
    s.text_set.emplace(item, label);
  }
  s.pool.insert(data.pool_items.begin(), data.pool_items.end());

  SslResult result;
  result.strategy = Strategy::co_training;
  result.config_digest = cfg.config_digest;

  PatienceTracker tracker;
  std::unique_ptr<Classifier> best_audio, best_text;
  bool best_is_audio = true;

  for (int i = 1; i <= cfg.max_iterations; ++i) {
    std::vector<std::string> audio_ids;
    std::vector<int> audio_labels;
    for (const auto& [item, label] : s.audio_set) {
      audio_ids.push_back(item);
      audio_labels.push_back(label);
    }
    std::vector<std::string> text_ids;
    std::vector<int> text_labels;
    for (const auto& [item, label] : s.text_set) {
      text_ids.push_back(item);
      text_labels.push_back(label);
    }

    auto audio_clf = make_classifier(cfg);
    audio_clf->fit(audio_features.matrix(audio_ids), audio_labels, class_count,
                   derive_seed(cfg.seed, "iter", static_cast<std::uint64_t>(i), "audio"));
    auto text_clf = make_classifier(cfg);
    text_clf->fit(text_features.matrix(text_ids), text_labels, class_count,
                  derive_seed(cfg.seed, "iter", static_cast<std::uint64_t>(i), "text"));

    const double audio_ua = evaluate_ua(*audio_clf, audio_features, data.val_items, data);
    const double text_ua = evaluate_ua(*text_clf, text_features, data.val_items, data);
    const double ua = std::max(audio_ua, text_ua);
    const bool improved = tracker.observe(i, ua);

    IterationState state;
    state.iteration = i;
    state.training_ids = sorted_union(s);
    state.unconfident_ids.assign(s.pool.begin(), s.pool.end());
    state.validation_ua = ua;
    state.best_ua = tracker.best_ua;
    state.no_improve_count = tracker.no_improve_count;
    result.history.push_back(std::move(state));

    Classifier* cur_audio = audio_clf.get();
    Classifier* cur_text = text_clf.get();
    if (improved) {
      best_audio = std::move(audio_clf);
      best_text = std::move(text_clf);
      best_is_audio = audio_ua >= text_ua;
      cur_audio = best_audio.get();
      cur_text = best_text.get();
    }

    if (tracker.no_improve_count >= cfg.patience || i == cfg.max_iterations) break;

    // each model's confident items join the other model's training set
    for (auto it = s.pool.begin(); it != s.pool.end();) {
      const Eigen::VectorXd pa = cur_audio->predict_proba(audio_features.at(*it));
      const Eigen::VectorXd pt = cur_text->predict_proba(text_features.at(*it));
      const int la = argmax_index(pa);
      const int lt = argmax_index(pt);
      const bool audio_confident = pa[la] >= cfg.admission_threshold;
      const bool text_confident = pt[lt] >= cfg.admission_threshold;
      if (audio_confident) s.text_set.emplace(*it, la);
      if (text_confident) s.audio_set.emplace(*it, lt);
      if (audio_confident || text_confident) {
        result.history.back().promotions.emplace_back(
            *it, audio_confident ? la : lt);
        it = s.pool.erase(it);
      } else {
        ++it;
      }
    }
  }

  result.best_iteration = tracker.best_iteration;
  const Classifier& reported = best_is_audio ? *best_audio : *best_text;
  const FeatureTable& reported_features =
      best_is_audio ? audio_features : text_features;
  result.final_test_ua = evaluate_ua(reported, reported_features, data.test_items, data);
  append_linear_model(result.models, best_audio.get());
  append_linear_model(result.models, best_text.get());
  return result;
}

SslResult run_strategy(Strategy strategy,
                       const Dataset& data,
                       const ConfidencePartition* partition,
                       const std::map<std::string, PseudoLabelRecord>* pseudo,
                       const SslConfig& cfg) {
  switch (strategy) {
    case Strategy::proposed:
      if (!partition || !pseudo) {
        throw Error(ErrorCode::InvalidInput,
                    "the proposed strategy needs a confidence partition");
      }
      return run_proposed(data, *partition, *pseudo, cfg);
    case Strategy::supervised_full:
      return run_supervised(data, /*full=*/true, cfg);
    case Strategy::supervised_limited:
      return run_supervised(data, /*full=*/false, cfg);
    case Strategy::decision_merging:
      return run_decision_merging(data, cfg);
    case Strategy::co_training:
      return run_co_training(data, cfg);
  }
  throw Error(ErrorCode::InvalidConfig, "unhandled strategy");
}

}  // namespace mvpl

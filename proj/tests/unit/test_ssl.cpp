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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "core/rng.hpp"
#include "core/ssl.hpp"
#include "support/fake_classifier.hpp"

using namespace mvpl;

namespace {

/// Small well-separated dataset: audio and text views are 4-D Gaussian
/// clusters, every item carries ground truth. seed/pool split per class.
Dataset make_separable(int classes, int seed_per_class, int pool_per_class,
                       int eval_per_class, std::uint64_t seed) {
  Dataset data;
  for (int c = 0; c < classes; ++c) data.classes.push_back("k" + std::to_string(c));

  Rng rng(seed);
  auto add_item = [&](const std::string& id, int cls) {
    Eigen::VectorXd audio = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd text = Eigen::VectorXd::Zero(4);
    audio[cls % 4] = 8.0;
    text[(cls + 1) % 4] = 8.0;
    for (int d = 0; d < 4; ++d) {
      audio[d] += rng.next_gaussian();
      text[d] += rng.next_gaussian();
    }
    data.audio.emplace(id, audio);
    data.text.emplace(id, text);
    data.truth.emplace(id, cls);
  };

  for (int c = 0; c < classes; ++c) {
    for (int j = 0; j < seed_per_class; ++j) {
      const std::string id = "seed_c" + std::to_string(c) + "_" + std::to_string(j);
      add_item(id, c);
      data.seed_items.push_back(id);
    }
    for (int j = 0; j < pool_per_class; ++j) {
      const std::string id = "pool_c" + std::to_string(c) + "_" + std::to_string(j);
      add_item(id, c);
      data.pool_items.push_back(id);
    }
    for (int j = 0; j < eval_per_class; ++j) {
      const std::string vid = "val_c" + std::to_string(c) + "_" + std::to_string(j);
      add_item(vid, c);
      data.val_items.push_back(vid);
      const std::string tid = "test_c" + std::to_string(c) + "_" + std::to_string(j);
      add_item(tid, c);
      data.test_items.push_back(tid);
    }
  }
  return data;
}

/// Agreement pseudo-labels for the pool using ground truth (all confident).
void attach_truth_pseudo(const Dataset& data, ConfidencePartition& partition,
                         std::map<std::string, PseudoLabelRecord>& records) {
  partition.labeled_seed = data.seed_items;
  std::sort(partition.labeled_seed.begin(), partition.labeled_seed.end());
  for (const std::string& item : data.pool_items) {
    const std::string label = data.classes[data.truth.at(item)];
    partition.confident.emplace(item, label);
    PseudoLabelRecord rec;
    rec.item_id = item;
    rec.acoustic_label = label;
    rec.linguistic_label = label;
    rec.status = Confidence::confident;
    records.emplace(item, rec);
  }
}

SslConfig fast_config(std::uint64_t seed) {
  SslConfig cfg;
  cfg.hyperparams.learning_rate = 0.1;
  cfg.hyperparams.epochs = 30;
  cfg.seed = seed;
  return cfg;
}

/// Dataset where items are identified by exact integral feature keys, for
/// the scripted classifier. audio dim 1; text dim 1 (bimodal tests) or
/// dim 2 (dual-view tests).
struct KeyedDatasetBuilder {
  Dataset data;
  int text_dim = 1;

  void add(const std::string& id, double key, int truth_class, const char* role) {
    data.audio.emplace(id, Eigen::VectorXd::Constant(1, key));
    Eigen::VectorXd text = Eigen::VectorXd::Zero(text_dim);
    text[0] = key;
    data.text.emplace(id, text);
    if (truth_class >= 0) data.truth.emplace(id, truth_class);
    if (std::string(role) == "seed") data.seed_items.push_back(id);
    if (std::string(role) == "pool") data.pool_items.push_back(id);
    if (std::string(role) == "val") data.val_items.push_back(id);
    if (std::string(role) == "test") data.test_items.push_back(id);
  }
};

void check_partition_integrity(const IterationState& state,
                               const std::set<std::string>& universe,
                               const std::vector<std::string>& seed) {
  std::set<std::string> all;
  for (const auto& id : state.training_ids) CHECK(all.insert(id).second);
  for (const auto& id : state.unconfident_ids) CHECK(all.insert(id).second);
  for (const auto& id : state.removed_ids) CHECK(all.insert(id).second);
  CHECK(all == universe);
  for (const auto& id : seed) {
    CHECK(std::find(state.training_ids.begin(), state.training_ids.end(), id) !=
          state.training_ids.end());
  }
}

}  // namespace

TEST_CASE("proposed with an empty pool degenerates to supervised training") {
  Dataset data = make_separable(3, 6, 0, 4, 10);
  ConfidencePartition partition;
  partition.labeled_seed = data.seed_items;
  std::sort(partition.labeled_seed.begin(), partition.labeled_seed.end());

  SslConfig cfg = fast_config(99);
  const SslResult result = run_proposed(data, partition, {}, cfg);

  // saturated validation from iteration 1, so the patience rule fires after
  // two tied iterations
  REQUIRE(result.history.size() == 3);
  CHECK(result.history[0].validation_ua == 1.0);
  CHECK(result.history[2].no_improve_count == 2);
  CHECK(result.best_iteration == 1);

  // the reported model is exactly a direct train() call with the
  // iteration-1 derived seed
  Eigen::MatrixXd features(partition.labeled_seed.size(), 8);
  std::vector<int> labels;
  for (std::size_t i = 0; i < partition.labeled_seed.size(); ++i) {
    const std::string& id = partition.labeled_seed[i];
    features.row(static_cast<Eigen::Index>(i))
        << data.audio.at(id).transpose(), data.text.at(id).transpose();
    labels.push_back(data.truth.at(id));
  }
  Hyperparams hp = cfg.hyperparams;
  hp.seed = derive_seed(cfg.seed, "iter", std::uint64_t{1});
  const LinearModel direct = train(features, labels, 3, hp);
  REQUIRE(result.models.size() == 1);
  CHECK(result.models[0].weights == direct.weights);
  CHECK(result.models[0].bias == direct.bias);
}

TEST_CASE("proposed promotes everything the model agrees on, then removes 20%") {
  // 3 classes; 3 seed items, 5 initial-confident, 4 unconfident whose
  // acoustic label is class 0; the scripted model always answers class 0 on
  // them, so all 4 are promoted after iteration 1
  KeyedDatasetBuilder b;
  b.data.classes = {"a", "b", "c"};
  b.add("s0", 0, 0, "seed");
  b.add("s1", 1, 1, "seed");
  b.add("s2", 2, 2, "seed");
  for (int i = 0; i < 5; ++i) {
    b.add("conf" + std::to_string(i), 10 + i, -1, "pool");
  }
  for (int i = 0; i < 4; ++i) {
    b.add("unc" + std::to_string(i), 20 + i, -1, "pool");
  }
  for (int i = 0; i < 3; ++i) {
    b.add("v" + std::to_string(i), 100 + i, i, "val");
    b.add("t" + std::to_string(i), 200 + i, i, "test");
  }

  ConfidencePartition partition;
  partition.labeled_seed = {"s0", "s1", "s2"};
  std::map<std::string, PseudoLabelRecord> records;
  for (int i = 0; i < 5; ++i) {
    partition.confident.emplace("conf" + std::to_string(i),
                                b.data.classes[i % 3]);
  }
  for (int i = 0; i < 4; ++i) {
    const std::string id = "unc" + std::to_string(i);
    partition.unconfident.push_back(id);
    PseudoLabelRecord rec;
    rec.item_id = id;
    rec.acoustic_label = "a";
    if (i % 2 == 0) rec.linguistic_label = "b";  // mismatch -> unconfident
    records.emplace(id, rec);
  }

  auto script = std::make_shared<test::FakeScript>();
  script->fallback = test::peaked(3, 0, 0.8);
  for (int i = 0; i < 3; ++i) {
    script->proba[2][100 + i] = test::peaked(3, i, 0.9);  // val: always right
    script->proba[2][200 + i] = test::peaked(3, i, 0.9);  // test: always right
  }
  for (int i = 0; i < 4; ++i) {
    script->proba[2][20 + i] = test::peaked(3, 0, 0.9);  // L^h = a, matches L^a
  }
  auto log = std::make_shared<std::vector<test::FitRecord>>();

  SslConfig cfg;
  cfg.seed = 5;
  cfg.classifier_factory = test::fake_factory(script, log);
  const SslResult result = run_proposed(b.data, partition, records, cfg);

  REQUIRE(result.history.size() == 3);  // 1.0 then two ties
  // iteration 1 trained on seed + confident
  CHECK(result.history[0].training_ids.size() == 8);
  CHECK(result.history[0].unconfident_ids.size() == 4);
  // all four promoted with the model label, which matched L^a = "a" (index 0)
  REQUIRE(result.history[0].promotions.size() == 4);
  for (const auto& [item, label] : result.history[0].promotions) {
    CHECK(item.substr(0, 3) == "unc");
    CHECK(label == 0);
  }
  // ceil(0.2 * 5) = 1 initial-confident item removed per iteration
  CHECK(result.history[0].removed_count == 1);

  // iteration 2 trains on seed(3) + confident(5 - 1) + promoted(4)
  CHECK(result.history[1].training_ids.size() == 11);
  CHECK(result.history[1].unconfident_ids.empty());
  CHECK(result.history[1].removed_ids.size() == 1);

  // the promoted items were fed to the next fit with the model's label
  REQUIRE(log->size() == 3);
  const test::FitRecord& second = (*log)[1];
  for (int i = 0; i < 4; ++i) {
    const auto pos = std::find(second.keys.begin(), second.keys.end(), 20.0 + i);
    REQUIRE(pos != second.keys.end());
    CHECK(second.labels[static_cast<std::size_t>(pos - second.keys.begin())] == 0);
  }

  // partition integrity at every snapshot
  std::set<std::string> universe;
  for (const auto& id : partition.labeled_seed) universe.insert(id);
  for (const auto& [id, lab] : partition.confident) {
    (void)lab;
    universe.insert(id);
  }
  for (const auto& id : partition.unconfident) universe.insert(id);
  for (const IterationState& state : result.history) {
    check_partition_integrity(state, universe, partition.labeled_seed);
  }
}

TEST_CASE("removal pool exhausts and removal becomes a no-op") {
  KeyedDatasetBuilder b;
  b.data.classes = {"a", "b"};
  b.add("s0", 0, 0, "seed");
  b.add("s1", 1, 1, "seed");
  for (int i = 0; i < 5; ++i) b.add("conf" + std::to_string(i), 10 + i, -1, "pool");
  b.add("v0", 100, 0, "val");
  b.add("v1", 101, 1, "val");
  b.add("t0", 200, 0, "test");

  ConfidencePartition partition;
  partition.labeled_seed = {"s0", "s1"};
  for (int i = 0; i < 5; ++i) {
    partition.confident.emplace("conf" + std::to_string(i), "a");
  }

  auto script = std::make_shared<test::FakeScript>();
  script->fallback = test::peaked(2, 0, 0.8);
  script->proba[2][100] = test::peaked(2, 0, 0.9);
  script->proba[2][101] = test::peaked(2, 1, 0.9);
  script->proba[2][200] = test::peaked(2, 0, 0.9);

  SslConfig cfg;
  cfg.seed = 6;
  cfg.removal_fraction = 1.0;  // whole pool removed at the end of iteration 1
  cfg.classifier_factory = test::fake_factory(script, nullptr);
  const SslResult result = run_proposed(b.data, partition, {}, cfg);

  REQUIRE(result.history.size() == 3);
  CHECK(result.history[0].removed_count == 5);
  CHECK(result.history[1].removed_ids.size() == 5);
  CHECK(result.history[1].training_ids == std::vector<std::string>{"s0", "s1"});
  CHECK(result.history[1].removed_count == 0);  // nothing left to remove
  CHECK(result.history[2].removed_ids.size() == 5);
}

TEST_CASE("proposed requires a non-empty training set and valid splits") {
  Dataset data = make_separable(2, 2, 0, 2, 20);
  ConfidencePartition empty_partition;
  SslConfig cfg = fast_config(1);
  CHECK_THROWS_AS(run_proposed(data, empty_partition, {}, cfg), Error);

  Dataset no_val = data;
  no_val.val_items.clear();
  ConfidencePartition partition;
  partition.labeled_seed = data.seed_items;
  try {
    run_proposed(no_val, partition, {}, cfg);
    FAIL("expected InvalidSplit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSplit);
  }
}

TEST_CASE("supervised full reaches high UA; limited never beats it here") {
  Dataset data = make_separable(3, 4, 16, 6, 30);
  SslConfig cfg = fast_config(42);

  const SslResult full = run_supervised(data, /*full=*/true, cfg);
  const SslResult limited = run_supervised(data, /*full=*/false, cfg);

  CHECK(full.final_test_ua >= 0.95);
  CHECK(limited.final_test_ua <= full.final_test_ua);
  CHECK(full.history.size() == 1);
  CHECK(full.strategy == Strategy::supervised_full);
  CHECK(limited.strategy == Strategy::supervised_limited);

  Dataset empty_seed = data;
  empty_seed.seed_items.clear();
  try {
    run_supervised(empty_seed, /*full=*/false, cfg);
    FAIL("expected EmptyTrainingSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyTrainingSet);
  }
}

TEST_CASE("decision merging admits on merged top probability >= threshold") {
  KeyedDatasetBuilder b;
  b.text_dim = 2;  // lets the script tell the views apart
  b.data.classes = {"a", "b", "c", "d"};
  for (int c = 0; c < 4; ++c) b.add("s" + std::to_string(c), c, c, "seed");
  b.add("x", 10, -1, "pool");
  b.add("y", 11, -1, "pool");
  for (int c = 0; c < 4; ++c) {
    b.add("v" + std::to_string(c), 100 + c, c, "val");
    b.add("t" + std::to_string(c), 200 + c, c, "test");
  }

  auto script = std::make_shared<test::FakeScript>();
  script->fallback = Eigen::VectorXd::Constant(4, 0.25);
  // merged(x) = (0.1, 0.1, 0.3, 0.5): admitted with the fourth class
  script->proba[1][10] = (Eigen::VectorXd(4) << 0.2, 0.0, 0.2, 0.6).finished();
  script->proba[2][10] = (Eigen::VectorXd(4) << 0.0, 0.2, 0.4, 0.4).finished();
  // merged(y) tops out at 0.49: stays in the pool
  script->proba[1][11] = (Eigen::VectorXd(4) << 0.49, 0.17, 0.17, 0.17).finished();
  script->proba[2][11] = (Eigen::VectorXd(4) << 0.49, 0.17, 0.17, 0.17).finished();
  for (int c = 0; c < 4; ++c) {
    script->proba[1][100 + c] = test::peaked(4, c, 0.9);
    script->proba[2][100 + c] = test::peaked(4, c, 0.9);
    script->proba[1][200 + c] = test::peaked(4, c, 0.9);
    script->proba[2][200 + c] = test::peaked(4, c, 0.9);
  }
  auto log = std::make_shared<std::vector<test::FitRecord>>();

  SslConfig cfg;
  cfg.seed = 3;
  cfg.admission_threshold = 0.5;
  cfg.classifier_factory = test::fake_factory(script, log);
  const SslResult result = run_decision_merging(b.data, cfg);

  REQUIRE(result.history.size() == 3);
  REQUIRE(result.history[0].promotions.size() == 1);
  CHECK(result.history[0].promotions[0].first == "x");
  CHECK(result.history[0].promotions[0].second == 3);
  CHECK(result.history[1].unconfident_ids == std::vector<std::string>{"y"});

  // both views were retrained with x labeled 3
  REQUIRE(log->size() == 6);  // 2 fits per iteration, 3 iterations
  for (std::size_t fit : {2u, 3u}) {
    const test::FitRecord& record = (*log)[fit];
    const auto pos = std::find(record.keys.begin(), record.keys.end(), 10.0);
    REQUIRE(pos != record.keys.end());
    CHECK(record.labels[static_cast<std::size_t>(pos - record.keys.begin())] == 3);
  }
}

TEST_CASE("co-training moves confident items to the other view only") {
  KeyedDatasetBuilder b;
  b.text_dim = 2;
  b.data.classes = {"a", "b"};
  b.add("s0", 0, 0, "seed");
  b.add("s1", 1, 1, "seed");
  b.add("x", 10, -1, "pool");
  b.add("y", 11, -1, "pool");
  b.add("v0", 100, 0, "val");
  b.add("v1", 101, 1, "val");
  b.add("t0", 200, 0, "test");
  b.add("t1", 201, 1, "test");

  auto script = std::make_shared<test::FakeScript>();
  script->fallback = Eigen::VectorXd::Constant(2, 0.5);
  // audio is confident about x (class a); text is not; neither trusts y
  script->proba[1][10] = (Eigen::VectorXd(2) << 0.9, 0.1).finished();
  script->proba[2][10] = (Eigen::VectorXd(2) << 0.6, 0.4).finished();
  script->proba[1][11] = (Eigen::VectorXd(2) << 0.6, 0.4).finished();
  script->proba[2][11] = (Eigen::VectorXd(2) << 0.55, 0.45).finished();
  for (int c = 0; c < 2; ++c) {
    script->proba[1][100 + c] = test::peaked(2, c, 0.9);
    script->proba[2][100 + c] = test::peaked(2, c, 0.9);
    script->proba[1][200 + c] = test::peaked(2, c, 0.9);
    script->proba[2][200 + c] = test::peaked(2, c, 0.9);
  }
  auto log = std::make_shared<std::vector<test::FitRecord>>();

  SslConfig cfg;
  cfg.seed = 8;
  cfg.admission_threshold = 0.7;
  cfg.classifier_factory = test::fake_factory(script, log);
  const SslResult result = run_co_training(b.data, cfg);

  REQUIRE(result.history.size() == 3);
  REQUIRE(result.history[0].promotions.size() == 1);
  CHECK(result.history[0].promotions[0].first == "x");
  CHECK(result.history[0].promotions[0].second == 0);

  // iteration 2: audio set unchanged (2 items), text set gained x
  REQUIRE(log->size() == 6);
  CHECK((*log)[2].dim == 1);
  CHECK((*log)[2].samples == 2);
  CHECK((*log)[3].dim == 2);
  CHECK((*log)[3].samples == 3);
  const auto pos = std::find((*log)[3].keys.begin(), (*log)[3].keys.end(), 10.0);
  REQUIRE(pos != (*log)[3].keys.end());
  CHECK((*log)[3].labels[static_cast<std::size_t>(pos - (*log)[3].keys.begin())] == 0);

  // y stayed unlabeled the whole run
  CHECK(result.history[2].unconfident_ids == std::vector<std::string>{"y"});
}

TEST_CASE("co-training with nothing confident is a fixed point that terminates") {
  KeyedDatasetBuilder b;
  b.text_dim = 2;
  b.data.classes = {"a", "b"};
  b.add("s0", 0, 0, "seed");
  b.add("s1", 1, 1, "seed");
  b.add("x", 10, -1, "pool");
  b.add("v0", 100, 0, "val");
  b.add("v1", 101, 1, "val");
  b.add("t0", 200, 0, "test");

  auto script = std::make_shared<test::FakeScript>();
  script->fallback = Eigen::VectorXd::Constant(2, 0.5);
  for (int c = 0; c < 2; ++c) {
    script->proba[1][100 + c] = test::peaked(2, c, 0.9);
    script->proba[2][100 + c] = test::peaked(2, c, 0.9);
  }
  script->proba[1][200] = test::peaked(2, 0, 0.9);
  script->proba[2][200] = test::peaked(2, 0, 0.9);

  SslConfig cfg;
  cfg.seed = 9;
  cfg.admission_threshold = 0.7;
  cfg.classifier_factory = test::fake_factory(script, nullptr);
  const SslResult result = run_co_training(b.data, cfg);

  REQUIRE(result.history.size() == 3);
  for (const IterationState& state : result.history) {
    CHECK(state.training_ids.size() == 2);
    CHECK(state.unconfident_ids == std::vector<std::string>{"x"});
    CHECK(state.promotions.empty());
  }
}

TEST_CASE("every strategy halts within max_iterations") {
  Dataset data = make_separable(2, 3, 6, 3, 50);
  ConfidencePartition partition;
  std::map<std::string, PseudoLabelRecord> records;
  attach_truth_pseudo(data, partition, records);

  SslConfig cfg = fast_config(7);
  cfg.max_iterations = 5;
  cfg.patience = 100;  // only the cap can stop the run

  CHECK(run_proposed(data, partition, records, cfg).history.size() <= 5);
  CHECK(run_decision_merging(data, cfg).history.size() <= 5);
  CHECK(run_co_training(data, cfg).history.size() <= 5);
  CHECK(run_supervised(data, true, cfg).history.size() == 1);
}

TEST_CASE("proposed run is reproducible and beats the limited baseline here") {
  Dataset data = make_separable(3, 2, 12, 5, 60);
  ConfidencePartition partition;
  std::map<std::string, PseudoLabelRecord> records;
  attach_truth_pseudo(data, partition, records);

  SslConfig cfg = fast_config(42);
  const SslResult a = run_proposed(data, partition, records, cfg);
  const SslResult b = run_proposed(data, partition, records, cfg);

  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].validation_ua == b.history[i].validation_ua);
    CHECK(a.history[i].training_ids == b.history[i].training_ids);
    CHECK(a.history[i].removed_ids == b.history[i].removed_ids);
  }
  CHECK(a.final_test_ua == b.final_test_ua);
  CHECK(a.history.size() <= 40);

  const SslResult limited = run_supervised(data, false, cfg);
  CHECK(a.final_test_ua >= limited.final_test_ua);
}

TEST_CASE("run_strategy dispatches and validates") {
  Dataset data = make_separable(2, 3, 4, 3, 70);
  SslConfig cfg = fast_config(11);
  CHECK(run_strategy(Strategy::supervised_full, data, nullptr, nullptr, cfg)
            .strategy == Strategy::supervised_full);
  try {
    run_strategy(Strategy::proposed, data, nullptr, nullptr, cfg);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

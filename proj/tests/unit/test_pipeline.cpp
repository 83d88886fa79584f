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

#include <filesystem>
#include <fstream>

#include "core/pipeline.hpp"

using namespace mvpl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("mvpl_pipe_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub = "") const {
    return sub.empty() ? path.string() : (path / sub).string();
  }
};

void write_synth_config(const std::string& path, std::uint64_t seed,
                        int items_per_class = 30) {
  json doc;
  doc["classes"] = 3;
  doc["encoders"] = 2;
  doc["frames_per_item"] = 6;
  doc["items_per_class"] = items_per_class;
  doc["dims"] = 5;
  doc["class_separation"] = 6.0;
  doc["predictor_count"] = 3;
  doc["predictor_accuracy"] = 0.8;
  doc["label_rate"] = 0.3;
  doc["seed"] = seed;
  atomic_write_file(path, doc.dump(2));
}

std::string slurp(const std::string& path) { return read_file(path); }

}  // namespace

TEST_CASE("synth emits a loadable corpus and a working run config") {
  TempDir dir("synth");
  write_synth_config(dir.str("synth.json"), 7);
  const std::string summary = cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});
  CHECK(summary.find("90 items") != std::string::npos);

  const RunConfig cfg = load_run_config(dir.str("corpus/run.json"));
  const LoadedCorpus corpus = load_corpus(cfg, /*need_predictions=*/true);
  CHECK(corpus.splits.train.size() == 72);
  CHECK(corpus.seed_items.size() == 21);  // llround(0.3 * 24) = 7 per class
  CHECK(corpus.pool_items.size() == 51);

  const Dataset data = make_dataset(corpus);
  CHECK(data.audio.size() == 90);
  CHECK(data.audio.begin()->second.size() == 5);

  // generation is byte-stable: a second corpus from the same config matches
  cmd_synth(dir.str("synth.json"), dir.str("corpus2"), {});
  CHECK(slurp(dir.str("corpus/embeddings/enc_0.emb")) ==
        slurp(dir.str("corpus2/embeddings/enc_0.emb")));
  CHECK(slurp(dir.str("corpus/predictions.csv")) ==
        slurp(dir.str("corpus2/predictions.csv")));
}

TEST_CASE("pseudo-labeling produces a coherent partition from files") {
  TempDir dir("plabel");
  write_synth_config(dir.str("synth.json"), 11);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  const std::string summary =
      cmd_pseudo_label(dir.str("corpus/run.json"), dir.str("out"), {});
  CHECK(summary.find("confident") != std::string::npos);
  CHECK(fs::exists(dir.str("out/pseudo_labels.csv")));
  CHECK(fs::exists(dir.str("out/partition.json")));
  CHECK(fs::exists(dir.str("out/fad_scores.csv")));
  CHECK(fs::exists(dir.str("out/runs.jsonl")));

  const json partition = json::parse(slurp(dir.str("out/partition.json")));
  const std::size_t seed = partition["seed"].get<std::size_t>();
  const std::size_t confident = partition["confident"].get<std::size_t>();
  const std::size_t unconfident = partition["unconfident"].get<std::size_t>();
  CHECK(seed == 21);
  CHECK(confident + unconfident == 51);
  CHECK(confident > 0);
}

TEST_CASE("pseudo-label coverage mismatch is reported for missing votes") {
  TempDir dir("cover");
  write_synth_config(dir.str("synth.json"), 13);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  // drop every prediction row for one pool item
  const RunConfig cfg = load_run_config(dir.str("corpus/run.json"));
  const LoadedCorpus corpus = load_corpus(cfg, true);
  const std::string victim = corpus.pool_items.front();
  std::istringstream in(slurp(dir.str("corpus/predictions.csv")));
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind(victim + ",", 0) != 0) out += line + "\n";
  }
  atomic_write_file(dir.str("corpus/predictions.csv"), out);

  try {
    cmd_pseudo_label(dir.str("corpus/run.json"), dir.str("out"), {});
    FAIL("expected CoverageMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageMismatch);
  }
}

TEST_CASE("prediction rows for unknown items are a coverage mismatch") {
  TempDir dir("unknown");
  write_synth_config(dir.str("synth.json"), 14);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  std::string text = slurp(dir.str("corpus/predictions.csv"));
  text += "ghost_item,pred_0,class_0\n";
  atomic_write_file(dir.str("corpus/predictions.csv"), text);

  try {
    cmd_pseudo_label(dir.str("corpus/run.json"), dir.str("out"), {});
    FAIL("expected CoverageMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageMismatch);
  }
}

TEST_CASE("train writes byte-identical history for identical config and seed") {
  TempDir dir("train");
  write_synth_config(dir.str("synth.json"), 21);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  Overrides overrides;
  overrides.strategy = "proposed";
  cmd_train(dir.str("corpus/run.json"), dir.str("a"), overrides);
  cmd_train(dir.str("corpus/run.json"), dir.str("b"), overrides);
  const std::string history_a = slurp(dir.str("a/history.json"));
  CHECK(history_a == slurp(dir.str("b/history.json")));

  const json doc = json::parse(history_a);
  CHECK(doc["strategy"] == "proposed");
  CHECK(doc["iterations"].size() <= 40);
  CHECK(doc["final_test_ua"].get<double>() >= 0.0);
  CHECK(doc["final_test_ua"].get<double>() <= 1.0);

  // a different seed changes the digest and (in general) the history
  Overrides reseeded = overrides;
  reseeded.seed = 77;
  cmd_train(dir.str("corpus/run.json"), dir.str("c"), reseeded);
  const json doc_c = json::parse(slurp(dir.str("c/history.json")));
  CHECK(doc_c["config_digest"] != doc["config_digest"]);
  CHECK(doc_c["seed"] == 77);
}

TEST_CASE("every strategy runs end to end from files") {
  TempDir dir("strategies");
  write_synth_config(dir.str("synth.json"), 23);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  for (const char* strategy :
       {"supervised_full", "supervised_limited", "proposed", "decision_merging",
        "co_training"}) {
    Overrides overrides;
    overrides.strategy = strategy;
    const std::string summary =
        cmd_train(dir.str("corpus/run.json"), dir.str("out"), overrides);
    CHECK(summary.find(strategy) != std::string::npos);
  }

  // the audit log now carries five train records; report renders them
  const std::string report =
      cmd_report({dir.str("out/runs.jsonl")}, dir.str("report"));
  CHECK(report.find("proposed") != std::string::npos);
  CHECK(report.find("co_training") != std::string::npos);
  CHECK(report.find("N=0.3") != std::string::npos);
  CHECK(fs::exists(dir.str("report/report.txt")));
}

TEST_CASE("report accepts history files and rejects empty input") {
  TempDir dir("report");
  write_synth_config(dir.str("synth.json"), 27);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});
  Overrides overrides;
  overrides.strategy = "supervised_limited";
  cmd_train(dir.str("corpus/run.json"), dir.str("out"), overrides);

  const std::string report =
      cmd_report({dir.str("out/history.json")}, dir.str("rep"));
  CHECK(report.find("supervised_limited") != std::string::npos);

  CHECK_THROWS_AS(cmd_report({}, dir.str("rep")), Error);
}

TEST_CASE("fad scores a single named pool item") {
  TempDir dir("fad");
  write_synth_config(dir.str("synth.json"), 29);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  const RunConfig cfg = load_run_config(dir.str("corpus/run.json"));
  const LoadedCorpus corpus = load_corpus(cfg, false);
  const std::string item = corpus.pool_items.front();

  const std::string summary =
      cmd_fad(dir.str("corpus/run.json"), dir.str("out"), item, {});
  CHECK(summary.find("item " + item) != std::string::npos);
  CHECK(summary.find("pseudo-label:") != std::string::npos);

  try {
    cmd_fad(dir.str("corpus/run.json"), dir.str("out"), corpus.seed_items.front(), {});
    FAIL("expected CoverageMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageMismatch);
  }
}

TEST_CASE("confident partition is nearly error-free on an easy benchmark") {
  // default benchmark shape with wide separation and strong predictors:
  // the agreed pseudo-labels should almost never contradict the truth
  SynthConfig synth = default_benchmark();
  synth.class_separation = 10.0;
  synth.predictor_accuracy = 0.9;
  const SynthCorpus corpus = generate_corpus(synth);

  RunConfig cfg;
  cfg.classes = corpus.classes;
  cfg.encoders = corpus.encoders;
  cfg.audio_view = corpus.encoders.front();
  cfg.text_view = corpus.encoders[1];
  cfg.label_rate = synth.label_rate;
  cfg.seed = synth.seed;

  const LoadedCorpus loaded = corpus_from_synth(corpus, cfg, true);
  const PseudoLabeling labeling = pseudo_label_pool(loaded);

  REQUIRE(!labeling.partition.confident.empty());
  std::size_t wrong = 0;
  for (const auto& [item, label] : labeling.partition.confident) {
    if (label != corpus.truth.at(item)) ++wrong;
  }
  const double error_rate =
      static_cast<double>(wrong) /
      static_cast<double>(labeling.partition.confident.size());
  CHECK(error_rate <= 0.02);
}

TEST_CASE("tensor fusion trains end to end from a config") {
  TempDir dir("tensor");
  write_synth_config(dir.str("synth.json"), 37);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  json doc = json::parse(slurp(dir.str("corpus/run.json")));
  doc["fusion"] = "tensor";
  doc["strategy"] = "proposed";
  atomic_write_file(dir.str("corpus/run_tensor.json"), doc.dump(2));

  const std::string summary =
      cmd_train(dir.str("corpus/run_tensor.json"), dir.str("out"), {});
  CHECK(summary.find("proposed") != std::string::npos);
  const json history = json::parse(slurp(dir.str("out/history.json")));
  CHECK(history["fusion"] == "tensor");
}

TEST_CASE("label-rate override changes the seed subset size") {
  TempDir dir("rate");
  write_synth_config(dir.str("synth.json"), 31);
  cmd_synth(dir.str("synth.json"), dir.str("corpus"), {});

  RunConfig cfg = load_run_config(dir.str("corpus/run.json"));
  cfg.label_rate = 0.2;
  CHECK(load_corpus(cfg, false).seed_items.size() == 15);  // llround(0.2*24)=5 per class
  cfg.label_rate = 0.25;
  CHECK(load_corpus(cfg, false).seed_items.size() == 18);
  cfg.label_rate = 0.3;
  CHECK(load_corpus(cfg, false).seed_items.size() == 21);
}

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

#include "core/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "core/rng.hpp"

namespace mvpl {

namespace fs = std::filesystem;

namespace {

RunConfig apply_overrides(RunConfig cfg, const Overrides& overrides) {
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.strategy) cfg.strategy = strategy_from_name(*overrides.strategy);
  if (overrides.label_rate) {
    cfg.label_rate = *overrides.label_rate;
    if (!(cfg.label_rate > 0.0 && cfg.label_rate <= 1.0)) {
      throw Error(ErrorCode::InvalidConfig, "label_rate must be in (0, 1]");
    }
  }
  return cfg;
}

std::string embedding_path(const RunConfig& cfg, const std::string& encoder) {
  return (fs::path(cfg.paths.embeddings_dir) / (encoder + ".emb")).string();
}

Eigen::VectorXd frame_mean(const EmbeddingSet& set) {
  return set.vectors.colwise().mean();
}

std::string format_percent(double ua) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ua);
  return buf;
}

void write_audit(const std::string& out_dir, const json& line) {
  append_line((fs::path(out_dir) / "runs.jsonl").string(), line.dump());
}

/// Acoustic path only: class references from the seed items, FAD tables and
/// argmin labels for the pool.
struct AcousticScoring {
  std::vector<FadScoreTable> tables;            ///< pool order
  std::map<std::string, std::string> acoustic;  ///< item -> label
  std::vector<std::pair<std::string, std::string>> jittered;
};

AcousticScoring score_pool(const LoadedCorpus& corpus,
                           const std::vector<std::string>& pool) {
  const RunConfig& cfg = corpus.cfg;

  std::map<std::string, std::map<std::string, EmbeddingSet>> labeled;
  for (const std::string& cls : cfg.classes) {
    for (const std::string& encoder : cfg.encoders) {
      std::vector<const Eigen::MatrixXd*> blocks;
      std::vector<std::string> contributors;
      Eigen::Index rows = 0;
      Eigen::Index dim = 0;
      for (const std::string& item : corpus.seed_items) {
        if (corpus.truth.at(item) != cls) continue;
        const EmbeddingSet& set = corpus.embeddings.at(encoder).items.at(item);
        blocks.push_back(&set.vectors);
        contributors.push_back(item);
        rows += set.rows();
        dim = set.dim();
      }
      if (blocks.empty()) {
        throw Error(ErrorCode::IncompleteReference,
                    "no seed items for class '" + cls + "'");
      }
      Eigen::MatrixXd pooled(rows, dim);
      Eigen::Index at = 0;
      for (const Eigen::MatrixXd* block : blocks) {
        pooled.middleRows(at, block->rows()) = *block;
        at += block->rows();
      }
      labeled[cls].emplace(
          encoder, EmbeddingSet::create(contributors, std::move(pooled), encoder));
    }
  }
  const std::vector<ClassReference> refs =
      build_class_references(cfg.classes, cfg.encoders, labeled, cfg.ridge);

  AcousticScoring out;
  for (const std::string& item : pool) {
    std::map<std::string, EmbeddingSet> item_embeddings;
    for (const std::string& encoder : cfg.encoders) {
      item_embeddings.emplace(encoder, corpus.embeddings.at(encoder).items.at(item));
    }
    FadScoreTable table =
        score_item(item, item_embeddings, refs, cfg.encoders, cfg.ridge);
    for (const std::string& encoder : table.jittered_encoders) {
      out.jittered.emplace_back(item, encoder);
    }
    out.acoustic.emplace(
        item, assign_acoustic_label(table.classes, average_over_encoders(table)));
    out.tables.push_back(std::move(table));
  }
  return out;
}

}  // namespace

LoadedCorpus load_corpus(const RunConfig& cfg, bool need_predictions) {
  std::map<std::string, EmbeddingFileContent> embeddings;
  for (const std::string& encoder : cfg.encoders) {
    embeddings.emplace(encoder,
                       load_embeddings(embedding_path(cfg, encoder), encoder));
  }
  std::vector<PredictionSet> predictions;
  if (need_predictions) {
    predictions = read_prediction_csv(cfg.paths.predictions, cfg.classes);
  }
  return assemble_corpus(cfg, std::move(embeddings),
                         read_label_csv(cfg.paths.labels, cfg.classes),
                         read_split_csv(cfg.paths.splits), std::move(predictions),
                         need_predictions);
}

LoadedCorpus assemble_corpus(
    const RunConfig& cfg,
    std::map<std::string, EmbeddingFileContent> embeddings,
    const std::vector<std::pair<std::string, std::string>>& labels,
    SplitAssignment splits,
    std::vector<PredictionSet> predictions,
    bool need_predictions) {
  LoadedCorpus corpus;
  corpus.cfg = cfg;
  corpus.digest = config_digest(cfg);
  corpus.embeddings = std::move(embeddings);

  for (const auto& [item, label] : labels) {
    corpus.truth.emplace(item, label);
  }

  corpus.splits = std::move(splits);
  if (corpus.splits.train.empty() || corpus.splits.val.empty() ||
      corpus.splits.test.empty()) {
    throw Error(ErrorCode::InvalidSplit,
                "splits file must assign items to train, val and test");
  }

  // every split item needs embeddings under every encoder
  std::set<std::string> universe;
  for (const auto* group :
       {&corpus.splits.train, &corpus.splits.val, &corpus.splits.test}) {
    for (const std::string& item : *group) {
      universe.insert(item);
      for (const auto& [encoder, content] : corpus.embeddings) {
        if (!content.items.count(item)) {
          throw Error(ErrorCode::CoverageMismatch,
                      "item '" + item + "' has no embeddings under encoder '" +
                          encoder + "'");
        }
      }
    }
  }

  // stratified seed selection: label_rate of each class's labeled train items
  std::map<std::string, std::vector<std::string>> per_class;
  std::set<std::string> seeded;
  for (const std::string& item : corpus.splits.train) {
    const auto it = corpus.truth.find(item);
    if (it != corpus.truth.end()) per_class[it->second].push_back(item);
  }
  if (per_class.empty()) {
    throw Error(ErrorCode::InvalidSplit,
                "no labeled train items to draw the seed set from");
  }
  for (auto& [cls, members] : per_class) {
    Rng rng(derive_seed(cfg.seed, "seed-select", cls));
    rng.shuffle(members);
    const auto want = static_cast<std::size_t>(
        std::llround(cfg.label_rate * static_cast<double>(members.size())));
    const std::size_t take = std::clamp<std::size_t>(want, 1, members.size());
    for (std::size_t i = 0; i < take; ++i) seeded.insert(members[i]);
  }
  for (const std::string& item : corpus.splits.train) {
    if (seeded.count(item)) {
      corpus.seed_items.push_back(item);
    } else {
      corpus.pool_items.push_back(item);
    }
  }

  if (need_predictions) {
    std::set<std::string> pool(corpus.pool_items.begin(), corpus.pool_items.end());
    std::set<std::string> covered;
    for (auto& set : predictions) {
      if (!universe.count(set.item_id)) {
        throw Error(ErrorCode::CoverageMismatch,
                    "prediction file references unknown item '" + set.item_id + "'");
      }
      if (pool.count(set.item_id)) {
        covered.insert(set.item_id);
        corpus.predictions.push_back(std::move(set));
      }
    }
    for (const std::string& item : corpus.pool_items) {
      if (!covered.count(item)) {
        throw Error(ErrorCode::CoverageMismatch,
                    "no predictor votes for pool item '" + item + "'");
      }
    }
  }

  return corpus;
}

LoadedCorpus corpus_from_synth(const SynthCorpus& corpus, const RunConfig& cfg,
                               bool need_predictions) {
  std::map<std::string, EmbeddingFileContent> embeddings;
  for (const auto& [encoder, items] : corpus.embeddings) {
    EmbeddingFileContent content;
    content.order = corpus.items;
    content.dim = static_cast<std::uint32_t>(items.begin()->second.dim());
    for (const auto& [item, set] : items) content.items.emplace(item, set);
    embeddings.emplace(encoder, std::move(content));
  }
  std::vector<std::pair<std::string, std::string>> labels;
  for (const std::string& item : corpus.items) {
    labels.emplace_back(item, corpus.truth.at(item));
  }
  return assemble_corpus(
      cfg, std::move(embeddings), labels,
      SplitAssignment{corpus.train_items, corpus.val_items, corpus.test_items},
      corpus.predictions, need_predictions);
}

Dataset make_dataset(const LoadedCorpus& corpus) {
  Dataset data;
  data.classes = corpus.cfg.classes;
  data.seed_items = corpus.seed_items;
  data.pool_items = corpus.pool_items;
  data.val_items = corpus.splits.val;
  data.test_items = corpus.splits.test;

  const auto& audio = corpus.embeddings.at(corpus.cfg.audio_view);
  const auto& text = corpus.embeddings.at(corpus.cfg.text_view);
  auto featurize = [&](const std::vector<std::string>& ids) {
    for (const std::string& item : ids) {
      if (!data.audio.count(item)) {
        data.audio.emplace(item, frame_mean(audio.items.at(item)));
        data.text.emplace(item, frame_mean(text.items.at(item)));
      }
    }
  };
  featurize(data.seed_items);
  featurize(data.pool_items);
  featurize(data.val_items);
  featurize(data.test_items);

  for (const auto& [item, label] : corpus.truth) {
    const auto it = std::find(data.classes.begin(), data.classes.end(), label);
    data.truth.emplace(item, static_cast<int>(it - data.classes.begin()));
  }
  return data;
}

PseudoLabeling pseudo_label_pool(const LoadedCorpus& corpus) {
  AcousticScoring scored = score_pool(corpus, corpus.pool_items);

  PseudoLabeling out;
  out.tables = std::move(scored.tables);
  out.acoustic = std::move(scored.acoustic);
  out.jittered = std::move(scored.jittered);

  const auto votes = label_corpus(corpus.predictions, corpus.cfg.classes);
  for (const std::string& item : corpus.pool_items) {
    const auto it = votes.find(item);
    if (it == votes.end()) {
      throw Error(ErrorCode::CoverageMismatch,
                  "no predictor votes for pool item '" + item + "'");
    }
    out.linguistic.emplace(item, it->second);
  }

  out.partition =
      partition_by_agreement(out.acoustic, out.linguistic, corpus.seed_items);
  out.records = build_pseudo_records(out.acoustic, out.linguistic);
  return out;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

std::string cmd_synth(const std::string& config_path, const std::string& out_dir,
                      const Overrides& overrides) {
  if (overrides.strategy) {
    throw Error(ErrorCode::InvalidConfig, "synth does not take a strategy");
  }
  SynthConfig cfg = load_synth_config(config_path);
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.label_rate) cfg.label_rate = *overrides.label_rate;
  validate_synth_config(cfg);

  const SynthCorpus corpus = generate_corpus(cfg);
  const fs::path out(out_dir);
  const fs::path emb_dir = out / "embeddings";

  for (const auto& [encoder, items] : corpus.embeddings) {
    std::map<std::string, Eigen::MatrixXd> frames;
    for (const auto& [item, set] : items) frames.emplace(item, set.vectors);
    write_embeddings((emb_dir / (encoder + ".emb")).string(), corpus.items, frames);
  }

  std::vector<std::pair<std::string, std::string>> labels;
  for (const std::string& item : corpus.items) {
    labels.emplace_back(item, corpus.truth.at(item));
  }
  write_label_csv((out / "labels.csv").string(), labels);
  write_prediction_csv((out / "predictions.csv").string(), corpus.predictions);
  write_split_csv(
      (out / "splits.csv").string(),
      SplitAssignment{corpus.train_items, corpus.val_items, corpus.test_items});

  json manifest;
  manifest["config"] = synth_config_to_json(cfg);
  manifest["classes"] = corpus.classes;
  manifest["encoders"] = corpus.encoders;
  manifest["items"] = corpus.items.size();
  manifest["train"] = corpus.train_items.size();
  manifest["val"] = corpus.val_items.size();
  manifest["test"] = corpus.test_items.size();
  atomic_write_file((out / "corpus.json").string(), manifest.dump(2) + "\n");

  // ready-to-run config pointing at the generated corpus
  RunConfig run;
  run.classes = corpus.classes;
  run.encoders = corpus.encoders;
  run.audio_view = corpus.encoders.front();
  run.text_view =
      corpus.encoders.size() > 1 ? corpus.encoders[1] : corpus.encoders.front();
  run.label_rate = cfg.label_rate;
  run.seed = cfg.seed;
  run.paths.embeddings_dir = fs::absolute(emb_dir).string();
  run.paths.labels = fs::absolute(out / "labels.csv").string();
  run.paths.predictions = fs::absolute(out / "predictions.csv").string();
  run.paths.splits = fs::absolute(out / "splits.csv").string();
  atomic_write_file((out / "run.json").string(),
                    run_config_to_json(run).dump(2) + "\n");

  json audit;
  audit["command"] = "synth";
  {
    char digest[17];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64(synth_config_to_json(cfg).dump())));
    audit["config_digest"] = digest;
  }
  audit["seed"] = cfg.seed;
  audit["label_rate"] = cfg.label_rate;
  audit["items"] = corpus.items.size();
  write_audit(out_dir, audit);

  std::ostringstream summary;
  summary << "synth: " << corpus.items.size() << " items, " << cfg.classes
          << " classes, " << cfg.encoders << " encoders -> " << out_dir << "\n"
          << "run config template: " << (out / "run.json").string();
  return summary.str();
}

// ---------------------------------------------------------------------------
// fad
// ---------------------------------------------------------------------------

namespace {

std::string render_score_table(const FadScoreTable& table,
                               const std::vector<double>& averages) {
  std::ostringstream text;
  text << "item " << table.item_id << "\n";
  text << "encoder";
  for (const std::string& cls : table.classes) text << "\t" << cls;
  text << "\n";
  for (std::size_t e = 0; e < table.encoders.size(); ++e) {
    text << table.encoders[e];
    for (Eigen::Index c = 0; c < table.scores.cols(); ++c) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f",
                    table.scores(static_cast<Eigen::Index>(e), c));
      text << "\t" << buf;
    }
    text << "\n";
  }
  text << "average";
  std::size_t best = 0;
  for (std::size_t c = 1; c < averages.size(); ++c) {
    if (averages[c] < averages[best]) best = c;
  }
  for (std::size_t c = 0; c < averages.size(); ++c) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", averages[c]);
    text << "\t" << buf << (c == best ? "*" : "");
  }
  text << "\npseudo-label: " << table.classes[best];
  return text.str();
}

void write_fad_artifacts(const std::string& out_dir,
                         const std::vector<FadScoreTable>& tables,
                         const std::map<std::string, std::string>& acoustic) {
  std::string scores = "item_id,encoder,class,score\n";
  std::string averages = "item_id,class,average\n";
  for (const FadScoreTable& table : tables) {
    for (std::size_t e = 0; e < table.encoders.size(); ++e) {
      for (std::size_t c = 0; c < table.classes.size(); ++c) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g",
                      table.scores(static_cast<Eigen::Index>(e),
                                   static_cast<Eigen::Index>(c)));
        scores += table.item_id + "," + table.encoders[e] + "," +
                  table.classes[c] + "," + buf + "\n";
      }
    }
    const std::vector<double> avg = average_over_encoders(table);
    for (std::size_t c = 0; c < table.classes.size(); ++c) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", avg[c]);
      averages += table.item_id + "," + table.classes[c] + "," + buf + "\n";
    }
  }
  atomic_write_file((fs::path(out_dir) / "fad_scores.csv").string(), scores);
  atomic_write_file((fs::path(out_dir) / "fad_averages.csv").string(), averages);

  std::vector<std::pair<std::string, std::string>> labels(acoustic.begin(),
                                                          acoustic.end());
  write_label_csv((fs::path(out_dir) / "acoustic_labels.csv").string(), labels);
}

}  // namespace

std::string cmd_fad(const std::string& config_path, const std::string& out_dir,
                    const std::optional<std::string>& item,
                    const Overrides& overrides) {
  const RunConfig cfg = apply_overrides(load_run_config(config_path), overrides);
  const LoadedCorpus corpus = load_corpus(cfg, /*need_predictions=*/false);

  std::vector<std::string> pool = corpus.pool_items;
  if (item) {
    if (std::find(pool.begin(), pool.end(), *item) == pool.end()) {
      throw Error(ErrorCode::CoverageMismatch,
                  "item '" + *item + "' is not in the unlabeled pool");
    }
    pool = {*item};
  }

  const AcousticScoring scored = score_pool(corpus, pool);
  write_fad_artifacts(out_dir, scored.tables, scored.acoustic);

  json audit;
  audit["command"] = "fad";
  audit["config_digest"] = corpus.digest;
  audit["seed"] = cfg.seed;
  audit["label_rate"] = cfg.label_rate;
  audit["scored_items"] = pool.size();
  write_audit(out_dir, audit);

  std::ostringstream summary;
  if (item) {
    summary << render_score_table(scored.tables.front(),
                                  average_over_encoders(scored.tables.front()));
  } else {
    summary << "fad: scored " << pool.size() << " pool items against "
            << cfg.classes.size() << " classes -> " << out_dir;
  }
  return summary.str();
}

// ---------------------------------------------------------------------------
// pseudo-label
// ---------------------------------------------------------------------------

std::string cmd_pseudo_label(const std::string& config_path,
                             const std::string& out_dir,
                             const Overrides& overrides) {
  const RunConfig cfg = apply_overrides(load_run_config(config_path), overrides);
  const LoadedCorpus corpus = load_corpus(cfg, /*need_predictions=*/true);
  const PseudoLabeling labeling = pseudo_label_pool(corpus);

  std::string rows = "item_id,acoustic_label,linguistic_label,agreed_label,status\n";
  for (const std::string& item : corpus.pool_items) {
    const PseudoLabelRecord& rec = labeling.records.at(item);
    const bool confident = rec.status == Confidence::confident;
    rows += item + "," + rec.acoustic_label + "," +
            (rec.linguistic_label ? *rec.linguistic_label : "") + "," +
            (confident ? rec.acoustic_label : "") + "," +
            (confident ? "confident" : "unconfident") + "\n";
  }
  atomic_write_file((fs::path(out_dir) / "pseudo_labels.csv").string(), rows);

  write_fad_artifacts(out_dir, labeling.tables, labeling.acoustic);

  json partition;
  partition["seed"] = labeling.partition.labeled_seed.size();
  partition["confident"] = labeling.partition.confident.size();
  partition["unconfident"] = labeling.partition.unconfident.size();
  json jittered = json::array();
  for (const auto& [jitem, jencoder] : labeling.jittered) {
    jittered.push_back({{"item", jitem}, {"encoder", jencoder}});
  }
  partition["jittered"] = jittered;
  atomic_write_file((fs::path(out_dir) / "partition.json").string(),
                    partition.dump(2) + "\n");

  json audit;
  audit["command"] = "pseudo-label";
  audit["config_digest"] = corpus.digest;
  audit["seed"] = cfg.seed;
  audit["label_rate"] = cfg.label_rate;
  audit["confident"] = labeling.partition.confident.size();
  audit["unconfident"] = labeling.partition.unconfident.size();
  write_audit(out_dir, audit);

  std::ostringstream summary;
  summary << "pseudo-label: seed " << labeling.partition.labeled_seed.size()
          << ", confident " << labeling.partition.confident.size()
          << ", unconfident " << labeling.partition.unconfident.size() << " -> "
          << out_dir;
  return summary.str();
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

namespace {

json history_to_json(const RunConfig& cfg, const std::string& digest,
                     const SslResult& result,
                     const std::vector<std::pair<std::string, std::string>>& jittered) {
  json doc;
  doc["command"] = "train";
  doc["strategy"] = strategy_name(result.strategy);
  doc["config_digest"] = digest;
  doc["seed"] = cfg.seed;
  doc["label_rate"] = cfg.label_rate;
  doc["fusion"] = fusion_name(cfg.fusion);
  doc["classes"] = cfg.classes;
  doc["best_iteration"] = result.best_iteration;
  doc["final_test_ua"] = result.final_test_ua;
  json iterations = json::array();
  for (const IterationState& state : result.history) {
    json entry;
    entry["iteration"] = state.iteration;
    entry["training_size"] = state.training_ids.size();
    entry["unconfident_size"] = state.unconfident_ids.size();
    entry["removed_size"] = state.removed_ids.size();
    entry["validation_ua"] = state.validation_ua;
    entry["best_ua"] = state.best_ua;
    entry["no_improve_count"] = state.no_improve_count;
    entry["promoted"] = state.promotions.size();
    entry["removed"] = state.removed_count;
    iterations.push_back(std::move(entry));
  }
  doc["iterations"] = std::move(iterations);
  json jit = json::array();
  for (const auto& [item, encoder] : jittered) {
    jit.push_back({{"item", item}, {"encoder", encoder}});
  }
  doc["jittered"] = std::move(jit);
  return doc;
}

}  // namespace

std::string cmd_train(const std::string& config_path, const std::string& out_dir,
                      const Overrides& overrides) {
  const RunConfig cfg = apply_overrides(load_run_config(config_path), overrides);
  const bool needs_pseudo = cfg.strategy == Strategy::proposed;
  const LoadedCorpus corpus = load_corpus(cfg, needs_pseudo);
  const Dataset data = make_dataset(corpus);

  SslConfig ssl;
  ssl.fusion = cfg.fusion;
  ssl.hyperparams = cfg.hyperparams;
  ssl.max_iterations = cfg.max_iterations;
  ssl.patience = cfg.patience;
  ssl.removal_fraction = cfg.removal_fraction;
  ssl.admission_threshold = cfg.admission_threshold;
  ssl.seed = cfg.seed;
  ssl.config_digest = corpus.digest;

  SslResult result;
  std::vector<std::pair<std::string, std::string>> jittered;
  if (needs_pseudo) {
    const PseudoLabeling labeling = pseudo_label_pool(corpus);
    jittered = labeling.jittered;
    result = run_proposed(data, labeling.partition, labeling.records, ssl);
  } else {
    result = run_strategy(cfg.strategy, data, nullptr, nullptr, ssl);
  }

  const json history = history_to_json(cfg, corpus.digest, result, jittered);
  atomic_write_file((fs::path(out_dir) / "history.json").string(),
                    history.dump(2) + "\n");

  json audit;
  audit["command"] = "train";
  audit["strategy"] = strategy_name(result.strategy);
  audit["config_digest"] = corpus.digest;
  audit["seed"] = cfg.seed;
  audit["label_rate"] = cfg.label_rate;
  audit["fusion"] = fusion_name(cfg.fusion);
  audit["iterations"] = result.history.size();
  json uas = json::array();
  for (const IterationState& state : result.history) uas.push_back(state.validation_ua);
  audit["validation_ua"] = std::move(uas);
  audit["final_test_ua"] = result.final_test_ua;
  write_audit(out_dir, audit);

  std::ostringstream summary;
  summary << "train[" << strategy_name(result.strategy) << "]: "
          << result.history.size() << " iterations, best iteration "
          << result.best_iteration << ", test UA "
          << format_percent(result.final_test_ua) << " -> " << out_dir;
  return summary.str();
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

namespace {

struct ReportRecord {
  std::string strategy;
  double label_rate = 0.0;
  double final_test_ua = 0.0;
};

void collect_record(const json& doc, std::vector<ReportRecord>& records) {
  if (!doc.is_object() || !doc.contains("final_test_ua")) return;
  if (doc.contains("command") && doc["command"] != "train") return;
  ReportRecord rec;
  rec.strategy = doc.value("strategy", std::string("unknown"));
  rec.label_rate = doc.value("label_rate", 0.0);
  rec.final_test_ua = doc["final_test_ua"].get<double>();
  records.push_back(std::move(rec));
}

}  // namespace

std::string cmd_report(const std::vector<std::string>& inputs,
                       const std::string& out_dir) {
  if (inputs.empty()) {
    throw Error(ErrorCode::InvalidInput, "report needs at least one input file");
  }

  std::vector<ReportRecord> records;
  for (const std::string& path : inputs) {
    const std::string text = read_file(path);
    if (path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl") {
      std::istringstream stream(text);
      std::string line;
      while (std::getline(stream, line)) {
        if (line.empty()) continue;
        try {
          collect_record(json::parse(line), records);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorCode::CorruptFile, path + ": bad JSON line: " + e.what());
        }
      }
    } else {
      try {
        collect_record(json::parse(text), records);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::CorruptFile, path + ": bad JSON: " + e.what());
      }
    }
  }
  if (records.empty()) {
    throw Error(ErrorCode::InvalidData, "no train records found in the inputs");
  }

  // mean UA per (strategy, label_rate)
  std::set<double> rates;
  std::map<std::string, std::map<double, std::pair<double, int>>> cells;
  for (const ReportRecord& rec : records) {
    rates.insert(rec.label_rate);
    auto& cell = cells[rec.strategy][rec.label_rate];
    cell.first += rec.final_test_ua;
    cell.second += 1;
  }

  static const std::vector<std::string> kOrder = {
      "supervised_full", "supervised_limited", "proposed", "decision_merging",
      "co_training"};
  std::vector<std::string> strategies;
  for (const std::string& name : kOrder) {
    if (cells.count(name)) strategies.push_back(name);
  }
  for (const auto& [name, row] : cells) {
    (void)row;
    if (std::find(strategies.begin(), strategies.end(), name) == strategies.end()) {
      strategies.push_back(name);
    }
  }

  std::ostringstream table;
  table << "UA% by strategy and ground-truth labeling rate\n";
  table << "strategy";
  for (double rate : rates) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "N=%g", rate);
    table << "\t" << buf;
  }
  table << "\n";
  for (const std::string& strategy : strategies) {
    table << strategy;
    for (double rate : rates) {
      const auto row = cells.find(strategy);
      const auto cell = row->second.find(rate);
      if (cell == row->second.end()) {
        table << "\t-";
      } else {
        table << "\t" << format_percent(cell->second.first / cell->second.second);
      }
    }
    table << "\n";
  }

  atomic_write_file((fs::path(out_dir) / "report.txt").string(), table.str());

  json audit;
  audit["command"] = "report";
  audit["inputs"] = inputs;
  audit["records"] = records.size();
  write_audit(out_dir, audit);

  return table.str() + "-> " + (fs::path(out_dir) / "report.txt").string();
}

}  // namespace mvpl

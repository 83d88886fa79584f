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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/acoustic.hpp"
#include "core/consensus.hpp"
#include "core/io.hpp"
#include "core/ssl.hpp"

namespace mvpl {

/// CLI-level overrides applied on top of the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<double> label_rate;
};

/// A run config with its referenced files loaded, coverage-checked and
/// resolved into engine inputs.
struct LoadedCorpus {
  RunConfig cfg;
  std::string digest;
  std::map<std::string, EmbeddingFileContent> embeddings;  ///< encoder -> file
  std::map<std::string, std::string> truth;                ///< item -> label
  std::vector<PredictionSet> predictions;                  ///< pool items only
  SplitAssignment splits;
  std::vector<std::string> seed_items;  ///< stratified label_rate subset of train
  std::vector<std::string> pool_items;  ///< remaining train items
};

LoadedCorpus load_corpus(const RunConfig& cfg, bool need_predictions);

/// Core of load_corpus once the referenced data is in memory: coverage
/// checks plus the stratified label_rate seed selection.
LoadedCorpus assemble_corpus(
    const RunConfig& cfg,
    std::map<std::string, EmbeddingFileContent> embeddings,
    const std::vector<std::pair<std::string, std::string>>& labels,
    SplitAssignment splits,
    std::vector<PredictionSet> predictions,
    bool need_predictions);

/// Adapts a generated corpus for the engine without touching the disk;
/// cfg.classes/encoders/views must refer to the corpus's names.
LoadedCorpus corpus_from_synth(const SynthCorpus& corpus, const RunConfig& cfg,
                               bool need_predictions);

/// Engine-ready dataset view (frame-mean features of the two designated
/// encoder views, truth as class indices).
Dataset make_dataset(const LoadedCorpus& corpus);

/// Acoustic + linguistic pseudo-labeling of the pool.
struct PseudoLabeling {
  std::vector<FadScoreTable> tables;                            ///< pool order
  std::map<std::string, std::string> acoustic;                  ///< item -> label
  std::map<std::string, std::optional<std::string>> linguistic; ///< item -> vote
  ConfidencePartition partition;
  std::map<std::string, PseudoLabelRecord> records;
  std::vector<std::pair<std::string, std::string>> jittered;    ///< (item, encoder)
};

PseudoLabeling pseudo_label_pool(const LoadedCorpus& corpus);

// Command entry points shared by the C API and (through it) the CLI. Each
// writes its artifacts under out_dir, appends an audit record to
// out_dir/runs.jsonl and returns a human-readable summary.
std::string cmd_synth(const std::string& config_path, const std::string& out_dir,
                      const Overrides& overrides);
std::string cmd_fad(const std::string& config_path, const std::string& out_dir,
                    const std::optional<std::string>& item,
                    const Overrides& overrides);
std::string cmd_pseudo_label(const std::string& config_path,
                             const std::string& out_dir,
                             const Overrides& overrides);
std::string cmd_train(const std::string& config_path, const std::string& out_dir,
                      const Overrides& overrides);
std::string cmd_report(const std::vector<std::string>& inputs,
                       const std::string& out_dir);

}  // namespace mvpl

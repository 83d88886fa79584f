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

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/gaussian.hpp"
#include "core/linguistic.hpp"
#include "core/ssl.hpp"
#include "core/synth.hpp"

namespace mvpl {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Embedding file: binary, little-endian, version 1.
//
//   magic   "EMB1" (4 bytes ASCII)
//   version u16 = 1
//   items   u32
//   dim     u32
//   per item:
//     id_len u16, id bytes (UTF-8)
//     frames u32 (>= 1)
//     frames * dim float32, row-major
//
// The loader rejects trailing bytes, truncated payloads, non-finite values
// and duplicate ids.
// ---------------------------------------------------------------------------

struct EmbeddingFileContent {
  std::vector<std::string> order;               ///< item ids in file order
  std::map<std::string, EmbeddingSet> items;    ///< item -> frames
  std::uint32_t dim = 0;
};

/// Serializes item frame matrices (values cast to float32) in the given
/// order.
std::string encode_embeddings(const std::vector<std::string>& order,
                              const std::map<std::string, Eigen::MatrixXd>& frames);

/// Parses an embedding file image; encoder_id is stamped on every set.
EmbeddingFileContent decode_embeddings(const std::string& bytes,
                                       const std::string& encoder_id);

void write_embeddings(const std::string& path,
                      const std::vector<std::string>& order,
                      const std::map<std::string, Eigen::MatrixXd>& frames);
EmbeddingFileContent load_embeddings(const std::string& path,
                                     const std::string& encoder_id);

// ---------------------------------------------------------------------------
// CSV files. Strict single-purpose schemas: exact headers, no quoting; ids
// and labels must not contain commas, quotes or line breaks.
// ---------------------------------------------------------------------------

/// `item_id,label`; item ids unique. When `classes` is non-empty every label
/// must belong to it.
std::vector<std::pair<std::string, std::string>> read_label_csv(
    const std::string& path, const std::vector<std::string>& classes);
void write_label_csv(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& rows);

/// `item_id,predictor_id,label`; (item, predictor) pairs unique. Rows are
/// grouped into one PredictionSet per item, in first-appearance order.
std::vector<PredictionSet> read_prediction_csv(
    const std::string& path, const std::vector<std::string>& classes);
void write_prediction_csv(const std::string& path,
                          const std::vector<PredictionSet>& predictions);

/// `item_id,split` with split in {train, val, test}; item ids unique.
struct SplitAssignment {
  std::vector<std::string> train, val, test;
};
SplitAssignment read_split_csv(const std::string& path);
void write_split_csv(const std::string& path, const SplitAssignment& splits);

// ---------------------------------------------------------------------------
// Run configuration (JSON). Validated strictly: unknown keys are rejected at
// every level, required keys must be present with the right types. The
// published schema lives in docs/runconfig.schema.json.
// ---------------------------------------------------------------------------

struct RunPaths {
  std::string embeddings_dir;  ///< contains <encoder>.emb per encoder
  std::string labels;
  std::string predictions;
  std::string splits;
};

struct RunConfig {
  std::vector<std::string> classes;
  std::vector<std::string> encoders;
  std::string audio_view;
  std::string text_view;
  FusionMode fusion = FusionMode::early;
  Strategy strategy = Strategy::proposed;
  double label_rate = 0.3;
  double admission_threshold = 0.5;
  double ridge = kDefaultRidge;
  Hyperparams hyperparams;
  int max_iterations = 40;
  int patience = 2;
  double removal_fraction = 0.2;
  std::uint64_t seed = 0;
  RunPaths paths;
};

RunConfig parse_run_config(const json& doc);
RunConfig load_run_config(const std::string& path);
json run_config_to_json(const RunConfig& cfg);

/// FNV-1a of the canonical serialized config, as 16 hex digits.
std::string config_digest(const RunConfig& cfg);

SynthConfig parse_synth_config(const json& doc);
SynthConfig load_synth_config(const std::string& path);
json synth_config_to_json(const SynthConfig& cfg);

FusionMode fusion_from_name(const std::string& name);
const char* fusion_name(FusionMode mode);

// ---------------------------------------------------------------------------
// Filesystem helpers.
// ---------------------------------------------------------------------------

std::string read_file(const std::string& path);

/// Writes content to a temporary sibling and renames it into place, so an
/// interrupted run never leaves a half-written artifact at `path`.
void atomic_write_file(const std::string& path, const std::string& content);

/// Appends one line (newline added) to a JSON-lines audit log.
void append_line(const std::string& path, const std::string& line);

}  // namespace mvpl

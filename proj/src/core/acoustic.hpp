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
#include <string>
#include <vector>

#include "core/gaussian.hpp"

namespace mvpl {

/// Per-item distance table: rows follow the registered encoder order,
/// columns the registered class order. Scores from different encoders are
/// never compared with each other, only averaged per class.
struct FadScoreTable {
  std::string item_id;
  std::vector<std::string> encoders;
  std::vector<std::string> classes;
  Eigen::MatrixXd scores;  ///< encoders x classes, finite, >= 0
  /// Encoders whose single embedding vector was duplicated with jitter to
  /// allow Gaussian estimation; surfaced in run reports.
  std::vector<std::string> jittered_encoders;
};

/// Class-conditional reference distributions: one Gaussian per registered
/// encoder, estimated from the pooled frames of all labeled items of the
/// class. Immutable after build.
struct ClassReference {
  std::string class_label;
  std::map<std::string, GaussianSummary> per_encoder;
};

/// Builds one reference per class, in the registered class order. Every
/// class must provide every registered encoder (IncompleteReference
/// otherwise) with at least 2 pooled rows (InsufficientSamples otherwise).
std::vector<ClassReference> build_class_references(
    const std::vector<std::string>& classes,
    const std::vector<std::string>& encoders,
    const std::map<std::string, std::map<std::string, EmbeddingSet>>& labeled,
    double ridge = kDefaultRidge);

/// Scores one unlabeled item against every class reference. The item must
/// provide every registered encoder. Single-vector embedding sets are
/// extended with a jittered duplicate (sigma 1e-6, seeded from the item and
/// encoder ids) and noted in the table.
FadScoreTable score_item(
    const std::string& item_id,
    const std::map<std::string, EmbeddingSet>& item_embeddings,
    const std::vector<ClassReference>& refs,
    const std::vector<std::string>& encoder_order,
    double ridge = kDefaultRidge);

/// Unweighted per-class mean over the encoder axis; aligned with
/// table.classes.
std::vector<double> average_over_encoders(const FadScoreTable& table);

/// Argmin class of the averaged scores; ties break toward the earliest
/// class in the registered order.
std::string assign_acoustic_label(const std::vector<std::string>& classes,
                                  const std::vector<double>& averages);

}  // namespace mvpl

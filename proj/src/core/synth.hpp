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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/gaussian.hpp"
#include "core/linguistic.hpp"

namespace mvpl {

/// Deterministic synthetic multi-view corpus generator: Gaussian class
/// clusters per encoder view plus simulated noisy label predictors.
struct SynthConfig {
  int classes = 4;
  int encoders = 4;
  int frames_per_item = 40;
  int items_per_class = 200;
  int dims = 16;
  double class_separation = 6.0;
  int predictor_count = 3;
  double predictor_accuracy = 0.8;
  double label_rate = 0.3;
  std::uint64_t seed = 42;
};

/// The frozen default benchmark configuration (equal to a
/// default-constructed SynthConfig; spelled out for emphasis).
SynthConfig default_benchmark();

void validate_synth_config(const SynthConfig& cfg);

struct SynthCorpus {
  std::vector<std::string> classes;   ///< class_0 .. class_{K-1}
  std::vector<std::string> encoders;  ///< enc_0 .. enc_{E-1}
  std::vector<std::string> items;     ///< generation order
  /// encoder -> item -> that item's frames under the encoder. Values are
  /// snapped to float32 so they survive the binary format bit-exactly.
  std::map<std::string, std::map<std::string, EmbeddingSet>> embeddings;
  std::map<std::string, std::string> truth;  ///< item -> class label
  std::vector<PredictionSet> predictions;    ///< item order, all items
  std::vector<std::string> train_items, val_items, test_items;
};

SynthCorpus generate_corpus(const SynthConfig& cfg);

/// True generator moments for (class, encoder): frames are drawn from
/// N(class_center, encoder_scale^2 * I).
double encoder_scale(int encoder);
Eigen::VectorXd class_center(const SynthConfig& cfg, int cls, int encoder);

/// Closed-form Frechet distance between two axis-aligned Gaussians given
/// their true parameters (means and covariance diagonals):
/// |mu_a - mu_b|^2 + sum_i (sqrt(va_i) - sqrt(vb_i))^2. Used to check that
/// estimated distances converge as frame counts grow; deliberately avoids
/// the eigendecomposition path.
double oracle_frechet(const Eigen::VectorXd& mean_a,
                      const Eigen::VectorXd& var_diag_a,
                      const Eigen::VectorXd& mean_b,
                      const Eigen::VectorXd& var_diag_b);

}  // namespace mvpl

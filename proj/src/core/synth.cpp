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

#include "core/synth.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace mvpl {

SynthConfig default_benchmark() { return SynthConfig{}; }

void validate_synth_config(const SynthConfig& cfg) {
  if (cfg.classes < 2) {
    throw Error(ErrorCode::InvalidConfig, "classes must be >= 2");
  }
  if (cfg.encoders < 1) {
    throw Error(ErrorCode::InvalidConfig, "encoders must be >= 1");
  }
  if (cfg.frames_per_item < 2) {
    throw Error(ErrorCode::InvalidConfig, "frames_per_item must be >= 2");
  }
  if (cfg.items_per_class < 1) {
    throw Error(ErrorCode::InvalidConfig, "items_per_class must be >= 1");
  }
  if (cfg.dims < 1) {
    throw Error(ErrorCode::InvalidConfig, "dims must be >= 1");
  }
  if (cfg.class_separation < 0.0) {
    throw Error(ErrorCode::InvalidConfig, "class_separation must be >= 0");
  }
  if (cfg.predictor_count < 1) {
    throw Error(ErrorCode::InvalidConfig, "predictor_count must be >= 1");
  }
  if (cfg.predictor_accuracy <= 0.0 || cfg.predictor_accuracy > 1.0) {
    throw Error(ErrorCode::InvalidConfig, "predictor_accuracy must be in (0, 1]");
  }
  if (cfg.label_rate <= 0.0 || cfg.label_rate > 1.0) {
    throw Error(ErrorCode::InvalidConfig, "label_rate must be in (0, 1]");
  }
  if (cfg.label_rate * cfg.items_per_class < 1.0) {
    throw Error(ErrorCode::InvalidConfig,
                "label_rate * items_per_class must be >= 1 per class");
  }
}

double encoder_scale(int encoder) { return 1.0 + 0.5 * encoder; }

Eigen::VectorXd class_center(const SynthConfig& cfg, int cls, int encoder) {
  // Orthogonal axes cycled through the dimensions; once the axes wrap, a
  // growing multiplier keeps centers at least class_separation apart
  // (in units of the encoder's frame sigma).
  const int slot = cls + encoder;
  const int axis = slot % cfg.dims;
  const double multiplier = 1.0 + static_cast<double>(slot / cfg.dims);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(cfg.dims);
  center[axis] = encoder_scale(encoder) * cfg.class_separation * multiplier;
  return center;
}

namespace {

std::string class_name(int cls) { return "class_" + std::to_string(cls); }
std::string encoder_name(int e) { return "enc_" + std::to_string(e); }

std::string item_name(int cls, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "c%d_item%04d", cls, index);
  return buf;
}

double snap_to_float(double v) { return static_cast<double>(static_cast<float>(v)); }

}  // namespace

SynthCorpus generate_corpus(const SynthConfig& cfg) {
  validate_synth_config(cfg);

  SynthCorpus corpus;
  for (int c = 0; c < cfg.classes; ++c) corpus.classes.push_back(class_name(c));
  for (int e = 0; e < cfg.encoders; ++e) corpus.encoders.push_back(encoder_name(e));

  // items, ground truth, frames
  for (int c = 0; c < cfg.classes; ++c) {
    for (int j = 0; j < cfg.items_per_class; ++j) {
      const std::string item = item_name(c, j);
      corpus.items.push_back(item);
      corpus.truth.emplace(item, class_name(c));
    }
  }

  for (int e = 0; e < cfg.encoders; ++e) {
    const double scale = encoder_scale(e);
    std::map<std::string, EmbeddingSet> per_item;
    for (int c = 0; c < cfg.classes; ++c) {
      const Eigen::VectorXd center = class_center(cfg, c, e);
      for (int j = 0; j < cfg.items_per_class; ++j) {
        const std::string item = item_name(c, j);
        Rng rng(derive_seed(cfg.seed, "frames", static_cast<std::uint64_t>(e),
                            static_cast<std::uint64_t>(c),
                            static_cast<std::uint64_t>(j)));
        Eigen::MatrixXd frames(cfg.frames_per_item, cfg.dims);
        for (int f = 0; f < cfg.frames_per_item; ++f) {
          for (int d = 0; d < cfg.dims; ++d) {
            frames(f, d) = snap_to_float(center[d] + scale * rng.next_gaussian());
          }
        }
        per_item.emplace(item,
                         EmbeddingSet::create({item}, std::move(frames), encoder_name(e)));
      }
    }
    corpus.embeddings.emplace(encoder_name(e), std::move(per_item));
  }

  // predictor votes: correct with probability predictor_accuracy, otherwise
  // uniform over the wrong classes
  for (std::size_t idx = 0; idx < corpus.items.size(); ++idx) {
    const std::string& item = corpus.items[idx];
    const int true_class =
        static_cast<int>(idx) / cfg.items_per_class;  // generation order
    PredictionSet set;
    set.item_id = item;
    for (int p = 0; p < cfg.predictor_count; ++p) {
      Rng rng(derive_seed(cfg.seed, "vote", static_cast<std::uint64_t>(idx),
                          static_cast<std::uint64_t>(p)));
      int vote = true_class;
      if (rng.next_double() >= cfg.predictor_accuracy) {
        const int offset =
            1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.classes - 1)));
        vote = (true_class + offset) % cfg.classes;
      }
      set.votes.emplace_back("pred_" + std::to_string(p), class_name(vote));
    }
    corpus.predictions.push_back(std::move(set));
  }

  // stratified 80/10/10 split
  for (int c = 0; c < cfg.classes; ++c) {
    std::vector<std::string> members;
    for (int j = 0; j < cfg.items_per_class; ++j) members.push_back(item_name(c, j));
    Rng rng(derive_seed(cfg.seed, "split", static_cast<std::uint64_t>(c)));
    rng.shuffle(members);

    const std::size_t n = members.size();
    const std::size_t n_train = static_cast<std::size_t>(0.8 * static_cast<double>(n));
    const std::size_t n_val = static_cast<std::size_t>(0.1 * static_cast<double>(n));
    const std::size_t n_test = n - n_train - n_val;
    if (n_train == 0 || n_val == 0 || n_test == 0) {
      throw Error(ErrorCode::InvalidConfig,
                  "items_per_class too small for a stratified 80/10/10 split");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k < n_train) {
        corpus.train_items.push_back(members[k]);
      } else if (k < n_train + n_val) {
        corpus.val_items.push_back(members[k]);
      } else {
        corpus.test_items.push_back(members[k]);
      }
    }
  }

  return corpus;
}

double oracle_frechet(const Eigen::VectorXd& mean_a,
                      const Eigen::VectorXd& var_diag_a,
                      const Eigen::VectorXd& mean_b,
                      const Eigen::VectorXd& var_diag_b) {
  if (mean_a.size() != mean_b.size() || var_diag_a.size() != mean_a.size() ||
      var_diag_b.size() != mean_b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "oracle parameter sizes disagree");
  }
  double value = (mean_a - mean_b).squaredNorm();
  for (Eigen::Index i = 0; i < var_diag_a.size(); ++i) {
    const double delta = std::sqrt(var_diag_a[i]) - std::sqrt(var_diag_b[i]);
    value += delta * delta;
  }
  return value;
}

}  // namespace mvpl

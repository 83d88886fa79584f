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

#include "core/acoustic.hpp"

#include "core/rng.hpp"

namespace mvpl {

namespace {

constexpr double kJitterSigma = 1e-6;

/// Returns the set's rows, duplicating a lone vector with deterministic
/// jitter so Gaussian estimation has the 2 rows it needs.
Eigen::MatrixXd rows_for_estimation(const std::string& item_id,
                                    const EmbeddingSet& set,
                                    bool* jittered) {
  if (set.rows() >= 2) {
    if (jittered) *jittered = false;
    return set.vectors;
  }
  Rng rng(derive_seed(fnv1a64(item_id), "jitter", set.encoder_id));
  Eigen::MatrixXd rows(2, set.dim());
  rows.row(0) = set.vectors.row(0);
  for (Eigen::Index j = 0; j < set.dim(); ++j) {
    rows(1, j) = set.vectors(0, j) + kJitterSigma * rng.next_gaussian();
  }
  if (jittered) *jittered = true;
  return rows;
}

}  // namespace

std::vector<ClassReference> build_class_references(
    const std::vector<std::string>& classes,
    const std::vector<std::string>& encoders,
    const std::map<std::string, std::map<std::string, EmbeddingSet>>& labeled,
    double ridge) {
  if (classes.empty()) {
    throw Error(ErrorCode::NoClasses, "no classes registered");
  }
  if (encoders.empty()) {
    throw Error(ErrorCode::InvalidInput, "no encoders registered");
  }

  std::vector<ClassReference> refs;
  refs.reserve(classes.size());
  for (const std::string& cls : classes) {
    const auto cls_it = labeled.find(cls);
    if (cls_it == labeled.end()) {
      throw Error(ErrorCode::IncompleteReference,
                  "no labeled embeddings for class '" + cls + "'");
    }
    ClassReference ref;
    ref.class_label = cls;
    for (const std::string& enc : encoders) {
      const auto enc_it = cls_it->second.find(enc);
      if (enc_it == cls_it->second.end()) {
        throw Error(ErrorCode::IncompleteReference,
                    "class '" + cls + "' is missing encoder '" + enc + "'");
      }
      if (enc_it->second.rows() < 2) {
        throw Error(ErrorCode::InsufficientSamples,
                    "class '" + cls + "', encoder '" + enc +
                        "' has fewer than 2 pooled rows");
      }
      ref.per_encoder.emplace(enc, estimate_gaussian(enc_it->second.vectors, ridge));
    }
    refs.push_back(std::move(ref));
  }
  return refs;
}

FadScoreTable score_item(const std::string& item_id,
                         const std::map<std::string, EmbeddingSet>& item_embeddings,
                         const std::vector<ClassReference>& refs,
                         const std::vector<std::string>& encoder_order,
                         double ridge) {
  if (refs.empty()) {
    throw Error(ErrorCode::NoClasses, "no class references");
  }
  if (encoder_order.empty()) {
    throw Error(ErrorCode::InvalidInput, "no encoders registered");
  }

  FadScoreTable table;
  table.item_id = item_id;
  table.encoders = encoder_order;
  table.classes.reserve(refs.size());
  for (const ClassReference& ref : refs) table.classes.push_back(ref.class_label);
  table.scores.resize(static_cast<Eigen::Index>(encoder_order.size()),
                      static_cast<Eigen::Index>(refs.size()));

  for (std::size_t e = 0; e < encoder_order.size(); ++e) {
    const std::string& enc = encoder_order[e];
    const auto it = item_embeddings.find(enc);
    if (it == item_embeddings.end()) {
      throw Error(ErrorCode::IncompleteReference,
                  "item '" + item_id + "' is missing encoder '" + enc + "'");
    }
    bool jittered = false;
    const Eigen::MatrixXd rows = rows_for_estimation(item_id, it->second, &jittered);
    if (jittered) table.jittered_encoders.push_back(enc);

    GaussianSummary item_summary;
    try {
      item_summary = estimate_gaussian(rows, ridge);
    } catch (const Error& err) {
      throw Error(err.code(), "item '" + item_id + "', encoder '" + enc +
                                  "': " + err.message());
    }

    for (std::size_t c = 0; c < refs.size(); ++c) {
      const auto ref_it = refs[c].per_encoder.find(enc);
      if (ref_it == refs[c].per_encoder.end()) {
        throw Error(ErrorCode::IncompleteReference,
                    "reference for class '" + refs[c].class_label +
                        "' is missing encoder '" + enc + "'");
      }
      try {
        table.scores(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(c)) =
            frechet_distance(item_summary, ref_it->second);
      } catch (const Error& err) {
        throw Error(err.code(), "item '" + item_id + "', encoder '" + enc +
                                    "', class '" + refs[c].class_label +
                                    "': " + err.message());
      }
    }
  }
  return table;
}

std::vector<double> average_over_encoders(const FadScoreTable& table) {
  if (table.encoders.empty() || table.classes.empty()) {
    throw Error(ErrorCode::InvalidInput, "empty score table");
  }
  std::vector<double> averages(table.classes.size(), 0.0);
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    averages[c] = table.scores.col(static_cast<Eigen::Index>(c)).mean();
  }
  return averages;
}

std::string assign_acoustic_label(const std::vector<std::string>& classes,
                                  const std::vector<double>& averages) {
  if (classes.empty()) {
    throw Error(ErrorCode::NoClasses, "no classes to assign");
  }
  if (classes.size() != averages.size()) {
    throw Error(ErrorCode::InvalidInput,
                "class list and averages have different lengths");
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < averages.size(); ++c) {
    if (averages[c] < averages[best]) best = c;  // strict: earliest class wins ties
  }
  return classes[best];
}

}  // namespace mvpl

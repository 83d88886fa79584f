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

#include "core/linguistic.hpp"

#include <algorithm>

namespace mvpl {

std::optional<std::string> majority_vote(const PredictionSet& p,
                                         const std::vector<std::string>& classes) {
  if (p.votes.empty()) {
    throw Error(ErrorCode::InvalidInput,
                "item '" + p.item_id + "' has no predictor votes");
  }

  std::map<std::string, int> counts;
  for (const auto& [predictor, label] : p.votes) {
    if (std::find(classes.begin(), classes.end(), label) == classes.end()) {
      throw Error(ErrorCode::UnknownClass,
                  "item '" + p.item_id + "', predictor '" + predictor +
                      "': unknown label '" + label + "'");
    }
    ++counts[label];
  }

  int top = 0;
  for (const auto& [label, count] : counts) top = std::max(top, count);

  std::optional<std::string> winner;
  for (const auto& [label, count] : counts) {
    if (count == top) {
      if (winner) return std::nullopt;  // shared top count: no consensus
      winner = label;
    }
  }
  return winner;
}

std::map<std::string, std::optional<std::string>> label_corpus(
    const std::vector<PredictionSet>& predictions,
    const std::vector<std::string>& classes) {
  std::map<std::string, std::optional<std::string>> out;
  for (const PredictionSet& p : predictions) {
    if (out.count(p.item_id)) {
      throw Error(ErrorCode::DuplicateItem,
                  "duplicate prediction set for item '" + p.item_id + "'");
    }
    out.emplace(p.item_id, majority_vote(p, classes));
  }
  return out;
}

}  // namespace mvpl

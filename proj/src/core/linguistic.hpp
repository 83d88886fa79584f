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
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace mvpl {

/// Per-item label votes from external predictors, in file order.
struct PredictionSet {
  std::string item_id;
  std::vector<std::pair<std::string, std::string>> votes;  ///< (predictor_id, label)
};

/// Label with strictly the highest vote count, or nullopt when the top
/// count is shared (no consensus). Votes must be non-empty and drawn from
/// the registered class set.
std::optional<std::string> majority_vote(const PredictionSet& p,
                                         const std::vector<std::string>& classes);

/// majority_vote applied per item; item ids must be unique.
std::map<std::string, std::optional<std::string>> label_corpus(
    const std::vector<PredictionSet>& predictions,
    const std::vector<std::string>& classes);

}  // namespace mvpl

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

#include "core/consensus.hpp"

#include <algorithm>

namespace mvpl {

ConfidencePartition partition_by_agreement(
    const std::map<std::string, std::string>& acoustic,
    const std::map<std::string, std::optional<std::string>>& linguistic,
    const std::vector<std::string>& seed) {
  if (acoustic.size() != linguistic.size()) {
    throw Error(ErrorCode::CoverageMismatch,
                "acoustic labels cover " + std::to_string(acoustic.size()) +
                    " items, linguistic labels cover " +
                    std::to_string(linguistic.size()));
  }
  for (const auto& [item, label] : acoustic) {
    (void)label;
    if (!linguistic.count(item)) {
      throw Error(ErrorCode::CoverageMismatch,
                  "item '" + item + "' has an acoustic label but no linguistic entry");
    }
  }
  for (const std::string& item : seed) {
    if (acoustic.count(item) || linguistic.count(item)) {
      throw Error(ErrorCode::CoverageMismatch,
                  "seed item '" + item + "' also appears in the pseudo-label maps");
    }
  }

  ConfidencePartition out;
  out.labeled_seed = seed;
  std::sort(out.labeled_seed.begin(), out.labeled_seed.end());
  for (const auto& [item, acoustic_label] : acoustic) {
    const auto& linguistic_label = linguistic.at(item);
    if (linguistic_label && *linguistic_label == acoustic_label) {
      out.confident.emplace(item, acoustic_label);
    } else {
      out.unconfident.push_back(item);
    }
  }
  return out;
}

std::map<std::string, PseudoLabelRecord> build_pseudo_records(
    const std::map<std::string, std::string>& acoustic,
    const std::map<std::string, std::optional<std::string>>& linguistic) {
  std::map<std::string, PseudoLabelRecord> out;
  for (const auto& [item, acoustic_label] : acoustic) {
    const auto it = linguistic.find(item);
    if (it == linguistic.end()) {
      throw Error(ErrorCode::CoverageMismatch,
                  "item '" + item + "' has no linguistic entry");
    }
    PseudoLabelRecord rec;
    rec.item_id = item;
    rec.acoustic_label = acoustic_label;
    rec.linguistic_label = it->second;
    rec.status = (it->second && *it->second == acoustic_label)
                     ? Confidence::confident
                     : Confidence::unconfident;
    out.emplace(item, std::move(rec));
  }
  return out;
}

}  // namespace mvpl

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

#include "core/errors.hpp"

namespace mvpl {

enum class Confidence { confident, unconfident };

/// All pseudo-labels attached to one item. The model label is filled in by
/// the self-training loop; acoustic and linguistic labels never change.
struct PseudoLabelRecord {
  std::string item_id;
  std::string acoustic_label;
  std::optional<std::string> linguistic_label;
  std::optional<std::string> model_label;
  Confidence status = Confidence::unconfident;
};

/// Disjoint decomposition of the training pool: ground-truth seed items,
/// agreement-confident items with their agreed label, and everything else.
struct ConfidencePartition {
  std::vector<std::string> labeled_seed;
  std::map<std::string, std::string> confident;  ///< item -> agreed pseudo-label
  std::vector<std::string> unconfident;
};

/// An item is confident iff its linguistic label exists and matches its
/// acoustic label; missing linguistic consensus can never match. Seed items
/// pass through untouched and must not appear in either label map. The two
/// maps must cover exactly the same items (CoverageMismatch otherwise).
ConfidencePartition partition_by_agreement(
    const std::map<std::string, std::string>& acoustic,
    const std::map<std::string, std::optional<std::string>>& linguistic,
    const std::vector<std::string>& seed);

/// Convenience: one PseudoLabelRecord per item with status derived from
/// agreement, keyed by item id.
std::map<std::string, PseudoLabelRecord> build_pseudo_records(
    const std::map<std::string, std::string>& acoustic,
    const std::map<std::string, std::optional<std::string>>& linguistic);

}  // namespace mvpl

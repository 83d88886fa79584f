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

#include <doctest.h>

#include <algorithm>

#include "core/linguistic.hpp"
#include "core/rng.hpp"

using namespace mvpl;

namespace {

const std::vector<std::string> kClasses = {"A", "B", "C", "D"};

PredictionSet make_set(const std::string& item, std::vector<std::string> labels) {
  PredictionSet out;
  out.item_id = item;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.votes.emplace_back("p" + std::to_string(i), std::move(labels[i]));
  }
  return out;
}

}  // namespace

TEST_CASE("majority_vote basic outcomes") {
  CHECK(majority_vote(make_set("x", {"A", "A", "B"}), kClasses) == "A");
  CHECK(majority_vote(make_set("x", {"A", "B", "C"}), kClasses) == std::nullopt);
  CHECK(majority_vote(make_set("x", {"A", "A", "A"}), kClasses) == "A");
  CHECK(majority_vote(make_set("x", {"A", "A", "B", "B"}), kClasses) ==
        std::nullopt);
}

TEST_CASE("majority_vote error paths") {
  try {
    majority_vote(make_set("x", {"A", "Z"}), kClasses);
    FAIL("expected UnknownClass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownClass);
  }
  try {
    majority_vote(make_set("x", {}), kClasses);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidInput);
  }
}

TEST_CASE("majority_vote is invariant under predictor permutation") {
  Rng rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(6));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      labels.push_back(kClasses[rng.next_below(kClasses.size())]);
    }
    const auto base = majority_vote(make_set("x", labels), kClasses);

    std::vector<std::string> shuffled = labels;
    rng.shuffle(shuffled);
    CHECK(majority_vote(make_set("x", shuffled), kClasses) == base);

    // duplicating a vote for the current winner never flips the outcome
    if (base) {
      std::vector<std::string> boosted = labels;
      boosted.push_back(*base);
      CHECK(majority_vote(make_set("x", boosted), kClasses) == base);
    }
  }
}

TEST_CASE("odd predictor count over two candidates always resolves") {
  Rng rng(707);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + 2 * static_cast<int>(rng.next_below(4));  // 1,3,5,7
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      labels.push_back(rng.next_below(2) == 0 ? "A" : "B");
    }
    CHECK(majority_vote(make_set("x", labels), kClasses).has_value());
  }
}

TEST_CASE("label_corpus resolves per item and rejects duplicates") {
  std::vector<PredictionSet> sets;
  sets.push_back(make_set("i1", {"A", "A", "A"}));
  sets.push_back(make_set("i2", {"B", "B", "C"}));
  sets.push_back(make_set("i3", {"A", "B", "C"}));
  const auto labels = label_corpus(sets, kClasses);
  CHECK(labels.at("i1") == "A");
  CHECK(labels.at("i2") == "B");
  CHECK(labels.at("i3") == std::nullopt);

  CHECK(label_corpus({}, kClasses).empty());

  sets.push_back(make_set("i1", {"D"}));
  try {
    label_corpus(sets, kClasses);
    FAIL("expected DuplicateItem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateItem);
  }
}

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

#include <set>

#include "core/consensus.hpp"
#include "core/rng.hpp"

using namespace mvpl;

TEST_CASE("partition_by_agreement keeps matches and drops mismatches") {
  const std::map<std::string, std::string> acoustic = {{"x", "A"}, {"y", "B"}};
  const std::map<std::string, std::optional<std::string>> linguistic = {
      {"x", "A"}, {"y", "C"}};
  const auto part = partition_by_agreement(acoustic, linguistic, {"s1"});
  CHECK(part.labeled_seed == std::vector<std::string>{"s1"});
  CHECK(part.confident == std::map<std::string, std::string>{{"x", "A"}});
  CHECK(part.unconfident == std::vector<std::string>{"y"});
}

TEST_CASE("full agreement empties the unconfident set") {
  const std::map<std::string, std::string> acoustic = {{"x", "A"}, {"y", "B"}};
  const std::map<std::string, std::optional<std::string>> linguistic = {
      {"x", "A"}, {"y", "B"}};
  const auto part = partition_by_agreement(acoustic, linguistic, {});
  CHECK(part.unconfident.empty());
  CHECK(part.confident.size() == 2);
}

TEST_CASE("no-consensus linguistic labels can never match") {
  const std::map<std::string, std::string> acoustic = {{"x", "A"}, {"y", "B"}};
  const std::map<std::string, std::optional<std::string>> linguistic = {
      {"x", std::nullopt}, {"y", std::nullopt}};
  const auto part = partition_by_agreement(acoustic, linguistic, {"s"});
  CHECK(part.confident.empty());
  CHECK(part.unconfident.size() == 2);
}

TEST_CASE("coverage mismatches are rejected") {
  const std::map<std::string, std::string> acoustic = {{"x", "A"}, {"y", "B"}};
  const std::map<std::string, std::optional<std::string>> linguistic = {
      {"x", "A"}};
  try {
    partition_by_agreement(acoustic, linguistic, {});
    FAIL("expected CoverageMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageMismatch);
  }

  // a seed item must not appear in the label maps
  const std::map<std::string, std::optional<std::string>> linguistic2 = {
      {"x", "A"}, {"y", "B"}};
  try {
    partition_by_agreement(acoustic, linguistic2, {"x"});
    FAIL("expected CoverageMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageMismatch);
  }
}

TEST_CASE("partition is disjoint and exhaustive; confident never disagrees") {
  Rng rng(4096);
  const std::vector<std::string> classes = {"A", "B", "C"};
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, std::string> acoustic;
    std::map<std::string, std::optional<std::string>> linguistic;
    std::vector<std::string> seed;
    const int n = 1 + static_cast<int>(rng.next_below(40));
    for (int i = 0; i < n; ++i) {
      const std::string item = "i" + std::to_string(i);
      acoustic[item] = classes[rng.next_below(3)];
      if (rng.next_below(4) == 0) {
        linguistic[item] = std::nullopt;
      } else {
        linguistic[item] = classes[rng.next_below(3)];
      }
    }
    const int n_seed = static_cast<int>(rng.next_below(10));
    for (int i = 0; i < n_seed; ++i) seed.push_back("seed" + std::to_string(i));

    const auto part = partition_by_agreement(acoustic, linguistic, seed);

    std::set<std::string> all;
    for (const auto& s : part.labeled_seed) CHECK(all.insert(s).second);
    for (const auto& [item, label] : part.confident) {
      CHECK(all.insert(item).second);
      CHECK(label == acoustic.at(item));
      CHECK(linguistic.at(item) == label);
    }
    for (const auto& item : part.unconfident) CHECK(all.insert(item).second);
    CHECK(all.size() == acoustic.size() + seed.size());
  }
}

TEST_CASE("confident count shrinks as no-consensus items grow") {
  const std::vector<std::string> classes = {"A", "B"};
  std::map<std::string, std::string> acoustic;
  std::map<std::string, std::optional<std::string>> linguistic;
  for (int i = 0; i < 30; ++i) {
    const std::string item = "i" + std::to_string(i);
    acoustic[item] = "A";
    linguistic[item] = "A";
  }
  std::size_t previous = 31;
  for (int wiped = 0; wiped <= 30; wiped += 5) {
    auto degraded = linguistic;
    int count = 0;
    for (auto& [item, vote] : degraded) {
      if (count++ < wiped) vote = std::nullopt;
    }
    const auto part = partition_by_agreement(acoustic, degraded, {});
    CHECK(part.confident.size() < previous);
    previous = part.confident.size();
  }
}

TEST_CASE("build_pseudo_records mirrors agreement status") {
  const std::map<std::string, std::string> acoustic = {{"x", "A"}, {"y", "B"}};
  const std::map<std::string, std::optional<std::string>> linguistic = {
      {"x", "A"}, {"y", std::nullopt}};
  const auto records = build_pseudo_records(acoustic, linguistic);
  CHECK(records.at("x").status == Confidence::confident);
  CHECK(records.at("y").status == Confidence::unconfident);
  CHECK(records.at("y").acoustic_label == "B");
  CHECK(!records.at("y").linguistic_label.has_value());
  CHECK(!records.at("x").model_label.has_value());
}

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
#include <optional>
#include <string_view>
#include <vector>

namespace mvpl {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a over bytes; used to fold string tags into seed derivations.
std::uint64_t fnv1a64(std::string_view s) noexcept;

namespace detail {
inline std::uint64_t seed_part(std::uint64_t v) noexcept { return v; }
inline std::uint64_t seed_part(std::string_view v) noexcept { return fnv1a64(v); }
inline std::uint64_t seed_part(const char* v) noexcept { return fnv1a64(v); }
}  // namespace detail

/// Derives an independent stream seed from a base seed plus context parts
/// (iteration numbers, item ids, role tags). Order-sensitive.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t base, Parts&&... parts) {
  std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ull);
  ((h = mix64(h ^ detail::seed_part(parts))), ...);
  return h;
}

/// Deterministic generator used for every random decision in the project.
/// The standard library's shuffle and distributions are implementation
/// defined, so everything is hand rolled on top of splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() noexcept;

  /// Standard normal via Box-Muller; caches the paired draw.
  double next_gaussian() noexcept;

  /// Uniform integer in [0, bound); bound must be > 0. Rejection-sampled,
  /// so it is exactly uniform.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) noexcept {
    if (values.size() < 2) return;
    for (std::size_t i = values.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i + 1));
      using std::swap;
      swap(values[i], values[j]);
    }
  }

 private:
  std::uint64_t state_;
  std::optional<double> spare_gaussian_;
};

}  // namespace mvpl

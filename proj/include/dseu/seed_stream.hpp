// Copyright 2026 The dseu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace dseu {

/**
 * @brief Reproducible random stream identified by a root seed and a
 * derivation path.
 *
 * A stream is a UniformRandomBitGenerator, so it can drive any standard
 * distribution. Deriving a child never consumes state from the parent: the
 * child engine is seeded from (root, path + tag) alone. Two streams with the
 * same root and path therefore produce identical sequences, and distinct
 * paths produce unrelated sequences.
 *
 * A single instance must not be shared between threads; derive one child per
 * execution context instead.
 */
class SeedStream {
  public:
    using result_type = std::uint64_t;

    explicit SeedStream(std::uint64_t root_seed,
                        std::vector<std::uint64_t> path = {});

    [[nodiscard]] SeedStream derive(std::uint64_t tag) const;
    [[nodiscard]] SeedStream derive(std::initializer_list<std::uint64_t> tags) const;

    [[nodiscard]] std::uint64_t root_seed() const noexcept { return root_; }
    [[nodiscard]] const std::vector<std::uint64_t> &path() const noexcept {
        return path_;
    }

    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

  private:
    std::uint64_t root_;
    std::vector<std::uint64_t> path_;
    std::mt19937_64 engine_;
};

} // namespace dseu

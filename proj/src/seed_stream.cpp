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

#include "dseu/seed_stream.hpp"

#include <cstdint>
#include <random>

namespace dseu {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t root,
                            const std::vector<std::uint64_t> &path) {
    // The length keeps (root, [0]) and (root, []) distinct.
    std::uint64_t h = splitmix64(root ^ splitmix64(path.size()));
    for (auto tag : path) {
        h = splitmix64(h ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
    }
    return std::mt19937_64(h);
}

} // namespace

SeedStream::SeedStream(std::uint64_t root_seed, std::vector<std::uint64_t> path)
    : root_(root_seed), path_(std::move(path)), engine_(make_engine(root_, path_)) {}

SeedStream SeedStream::derive(std::uint64_t tag) const {
    auto child = path_;
    child.push_back(tag);
    return SeedStream(root_, std::move(child));
}

SeedStream SeedStream::derive(std::initializer_list<std::uint64_t> tags) const {
    auto child = path_;
    child.insert(child.end(), tags.begin(), tags.end());
    return SeedStream(root_, std::move(child));
}

} // namespace dseu

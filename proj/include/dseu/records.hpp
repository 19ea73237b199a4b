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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dseu/symmetric.hpp"

namespace dseu {

enum class Protocol { incoherent, coherent, shadow };

std::string_view to_string(Protocol p);
/// Throws InvalidArgument on an unknown name.
Protocol parse_protocol(std::string_view name);

/// Outcome lists of both devices under a shared basis, plus g̃.
struct IncoherentOutcome {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    double collision = 0.0;
};

struct CoherentOutcome {
    std::size_t copies = 0;
    /// |⟨phi_A|phi_B⟩|^2
    double overlap_ab = 0.0;
    /// Diagnostic overlaps of each outcome with its own measured state.
    double overlap_a = 0.0;
    double overlap_b = 0.0;
};

struct ShadowOutcome {
    FactoredSnapshot x;
    FactoredSnapshot y;
};

struct RoundRecord {
    std::size_t round_index = 0;
    Protocol protocol = Protocol::incoherent;
    std::uint64_t root_seed = 0;
    std::vector<std::uint64_t> setting_seed_path;
    std::variant<IncoherentOutcome, CoherentOutcome, ShadowOutcome> raw;
    /// ω̃ or χ̃ for the round; for shadow rounds the diagonal term
    /// tr[X_t† Y_t]/d^2 (the reported estimate uses all cross pairs).
    double per_round_estimate = 0.0;

    /// Channel queries this round spent on each device (m, T or s).
    [[nodiscard]] std::size_t queries_per_device() const;
};

struct EstimateReport {
    Protocol protocol = Protocol::incoherent;
    double mean = 0.0;
    double std_error = 0.0;
    /// Sample variance of per-round estimates, or rounds * SE^2 for shadow.
    double per_round_variance = 0.0;
    std::size_t rounds = 0;
    std::size_t queries_per_device = 0;
    std::uint64_t seed = 0;
    nlohmann::json config_echo = nlohmann::json::object();
};

nlohmann::json to_json(const EstimateReport &report);
nlohmann::json to_json(const RoundRecord &record);

} // namespace dseu

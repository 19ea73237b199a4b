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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dseu::app {

/// Raised for invalid configurations; maps to exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Sweep {
    std::string parameter; ///< qubits, shots, copies or rounds
    std::vector<std::string> values;
};

struct RunConfig {
    std::string protocol = "incoherent";
    std::size_t qubits = 1;
    std::size_t rounds = 1000;
    /// Integer or "auto" (ceil(sqrt(d))).
    std::string shots = "auto";
    std::size_t copies = 2;
    std::uint64_t seed = 1;
    std::string unitary_mode = "independent-haar";
    std::string unitary_a;
    std::string unitary_b;
    std::string distinguish_protocol = "incoherent";
    std::size_t trials = 200;
    double threshold = 0.5;
    std::optional<Sweep> sweep;
    std::string output_format = "json";
    std::string output_path = "-";
    bool records = false;
    std::string export_unitaries;
    /// Worker threads; not part of the echoed configuration.
    std::size_t threads = 1;
};

inline constexpr std::size_t kMaxQubits = 6;

/// Checks ranges and combinations; throws ConfigError with an actionable message.
void validate(const RunConfig &config);

/// Full effective configuration, defaults included, for output echo.
nlohmann::json to_json(const RunConfig &config);

/// "qubits=1,2,3" -> Sweep.
Sweep parse_sweep(const std::string &text);

/// Effective shot count for dimension d.
std::size_t effective_shots(const RunConfig &config, std::size_t dim);

/// Thread count from DSEU_THREADS, defaulting to the hardware concurrency.
std::size_t default_thread_count();

} // namespace dseu::app

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

#include "dseu/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>

#include "dseu/errors.hpp"
#include "dseu/symmetric.hpp"

namespace dseu::app {
namespace {

const std::set<std::string> kProtocols = {"incoherent", "coherent", "shadow",
                                          "distinguish", "validate"};
const std::set<std::string> kRoundProtocols = {"incoherent", "coherent", "shadow"};
const std::set<std::string> kUnitaryModes = {"same-haar", "independent-haar", "files"};
const std::set<std::string> kSweepParameters = {"qubits", "shots", "copies", "rounds"};

std::optional<std::size_t> parse_count(const std::string &text) {
    std::size_t value = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::size_t positive_count(const std::string &text, const std::string &what) {
    auto v = parse_count(text);
    if (!v || *v == 0) {
        throw ConfigError(what + " must be a positive integer, got '" + text + "'");
    }
    return *v;
}

void check_qubits(std::size_t qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw ConfigError("--qubits must be between 1 and " +
                          std::to_string(kMaxQubits) + ", got " +
                          std::to_string(qubits));
    }
}

void check_shots(const std::string &shots) {
    if (shots != "auto") {
        positive_count(shots, "--shots");
    }
}

void check_kappa(std::size_t qubits, std::size_t copies) {
    try {
        (void)kappa(std::size_t{1} << qubits, copies);
    } catch (const Overflow &) {
        throw ConfigError("--copies " + std::to_string(copies) + " at " +
                          std::to_string(qubits) +
                          " qubits makes the symmetric-subspace dimension overflow 64 bits");
    }
}

} // namespace

void validate(const RunConfig &c) {
    if (!kProtocols.contains(c.protocol)) {
        throw ConfigError("--protocol must be one of incoherent, coherent, shadow, "
                          "distinguish, validate; got '" + c.protocol + "'");
    }
    check_qubits(c.qubits);
    if (c.rounds < 2) {
        throw ConfigError("--rounds must be at least 2 so a standard error exists");
    }
    check_shots(c.shots);
    if (c.copies < 1) {
        throw ConfigError("--copies must be at least 1");
    }
    if (!kUnitaryModes.contains(c.unitary_mode)) {
        throw ConfigError("--unitary-mode must be same-haar, independent-haar or files; got '" +
                          c.unitary_mode + "'");
    }
    if (c.unitary_mode == "files" && (c.unitary_a.empty() || c.unitary_b.empty())) {
        throw ConfigError("--unitary-mode files needs both --unitary-a and --unitary-b");
    }
    if (c.output_format != "csv" && c.output_format != "json") {
        throw ConfigError("--format must be csv or json; got '" + c.output_format + "'");
    }
    if (c.protocol == "distinguish") {
        if (!kRoundProtocols.contains(c.distinguish_protocol)) {
            throw ConfigError("--distinguish-protocol must be incoherent, coherent or shadow; got '" +
                              c.distinguish_protocol + "'");
        }
        if (c.trials < 1) {
            throw ConfigError("--trials must be at least 1");
        }
        if (!(c.threshold > 0.0 && c.threshold < 1.0)) {
            throw ConfigError("--threshold must lie strictly between 0 and 1");
        }
    }
    const std::string &inner =
        c.protocol == "distinguish" ? c.distinguish_protocol : c.protocol;
    const bool uses_copies = inner == "coherent" || inner == "shadow";
    if (uses_copies) {
        check_kappa(c.qubits, c.copies);
    }

    if (c.sweep) {
        if (!kRoundProtocols.contains(c.protocol)) {
            throw ConfigError("--sweep is only available for incoherent, coherent and shadow runs");
        }
        if (!kSweepParameters.contains(c.sweep->parameter)) {
            throw ConfigError("unknown sweep parameter '" + c.sweep->parameter +
                              "' (expected qubits, shots, copies or rounds)");
        }
        if (c.sweep->values.empty()) {
            throw ConfigError("--sweep needs at least one value");
        }
        if (c.sweep->parameter == "qubits" && c.unitary_mode == "files") {
            throw ConfigError("a qubits sweep cannot use --unitary-mode files");
        }
        for (const auto &v : c.sweep->values) {
            if (c.sweep->parameter == "shots") {
                check_shots(v);
            } else {
                const auto n = positive_count(v, "sweep value");
                if (c.sweep->parameter == "qubits") {
                    check_qubits(n);
                    if (uses_copies) {
                        check_kappa(n, c.copies);
                    }
                } else if (c.sweep->parameter == "copies" && uses_copies) {
                    check_kappa(c.qubits, n);
                } else if (c.sweep->parameter == "rounds" && n < 2) {
                    throw ConfigError("swept --rounds values must be at least 2");
                }
            }
        }
    }
}

nlohmann::json to_json(const RunConfig &c) {
    nlohmann::json j = {
        {"protocol", c.protocol},
        {"qubits", c.qubits},
        {"dim", std::size_t{1} << c.qubits},
        {"rounds", c.rounds},
        {"shots", c.shots},
        {"copies", c.copies},
        {"seed", c.seed},
        {"unitary_mode", c.unitary_mode},
        {"unitary_a", c.unitary_a},
        {"unitary_b", c.unitary_b},
        {"distinguish_protocol", c.distinguish_protocol},
        {"trials", c.trials},
        {"threshold", c.threshold},
        {"output_format", c.output_format},
        {"output_path", c.output_path},
        {"records", c.records},
        {"export_unitaries", c.export_unitaries},
    };
    if (c.sweep) {
        j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
    } else {
        j["sweep"] = nullptr;
    }
    return j;
}

Sweep parse_sweep(const std::string &text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--sweep expects parameter=v1,v2,...; got '" + text + "'");
    }
    Sweep sweep;
    sweep.parameter = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        const auto comma = rest.find(',', start);
        const auto token = rest.substr(start, comma == std::string::npos
                                                  ? std::string::npos
                                                  : comma - start);
        if (token.empty()) {
            throw ConfigError("--sweep has an empty value in '" + text + "'");
        }
        sweep.values.push_back(token);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return sweep;
}

std::size_t effective_shots(const RunConfig &config, std::size_t dim) {
    if (config.shots == "auto") {
        return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dim))));
    }
    return positive_count(config.shots, "--shots");
}

std::size_t default_thread_count() {
    if (const char *env = std::getenv("DSEU_THREADS")) {
        if (auto n = parse_count(env); n && *n > 0) {
            return *n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace dseu::app

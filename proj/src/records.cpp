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

#include "dseu/records.hpp"

#include <string>

#include "dseu/errors.hpp"

namespace dseu {

std::string_view to_string(Protocol p) {
    switch (p) {
    case Protocol::incoherent:
        return "incoherent";
    case Protocol::coherent:
        return "coherent";
    case Protocol::shadow:
        return "shadow";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "incoherent") {
        return Protocol::incoherent;
    }
    if (name == "coherent") {
        return Protocol::coherent;
    }
    if (name == "shadow") {
        return Protocol::shadow;
    }
    throw InvalidArgument("unknown protocol '" + std::string(name) +
                          "' (expected incoherent, coherent or shadow)");
}

std::size_t RoundRecord::queries_per_device() const {
    struct Visitor {
        std::size_t operator()(const IncoherentOutcome &o) const { return o.a.size(); }
        std::size_t operator()(const CoherentOutcome &o) const { return o.copies; }
        std::size_t operator()(const ShadowOutcome &o) const { return o.x.copies; }
    };
    return std::visit(Visitor{}, raw);
}

nlohmann::json to_json(const EstimateReport &report) {
    return {
        {"protocol", std::string(to_string(report.protocol))},
        {"mean", report.mean},
        {"std_error", report.std_error},
        {"per_round_variance", report.per_round_variance},
        {"rounds", report.rounds},
        {"queries_per_device", report.queries_per_device},
        {"seed", report.seed},
        {"config", report.config_echo},
    };
}

namespace {

nlohmann::json state_json(const PureState &s) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        re.push_back(s[i].real());
        im.push_back(s[i].imag());
    }
    return {{"re", re}, {"im", im}};
}

} // namespace

nlohmann::json to_json(const RoundRecord &record) {
    nlohmann::json j = {
        {"round", record.round_index},
        {"protocol", std::string(to_string(record.protocol))},
        {"seed", record.root_seed},
        {"seed_path", record.setting_seed_path},
        {"estimate", record.per_round_estimate},
    };
    struct Visitor {
        nlohmann::json &j;
        void operator()(const IncoherentOutcome &o) const {
            j["a"] = o.a;
            j["b"] = o.b;
            j["g"] = o.collision;
        }
        void operator()(const CoherentOutcome &o) const {
            j["copies"] = o.copies;
            j["f"] = o.overlap_ab;
            j["overlap_a"] = o.overlap_a;
            j["overlap_b"] = o.overlap_b;
        }
        void operator()(const ShadowOutcome &o) const {
            j["copies"] = o.x.copies;
            j["x"] = {{"phi", state_json(o.x.phi)}, {"psi", state_json(o.x.psi)}};
            j["y"] = {{"phi", state_json(o.y.phi)}, {"psi", state_json(o.y.psi)}};
        }
    };
    std::visit(Visitor{j}, record.raw);
    return j;
}

} // namespace dseu

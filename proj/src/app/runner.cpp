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

#include "dseu/app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dseu/app/unitary_io.hpp"
#include "dseu/errors.hpp"
#include "dseu/estimators.hpp"
#include "dseu/oracle.hpp"
#include "dseu/protocols.hpp"
#include "dseu/symmetric.hpp"

namespace dseu::app {
namespace {

constexpr std::uint64_t kRowTag = 30;
constexpr std::uint64_t kValidateTag = 40;

const char *kCsvHeader =
    "protocol,d,rounds,shots_or_copies,seed,mean,std_error,per_round_variance,queries_per_device";

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::size_t dim_of(std::size_t qubits) { return std::size_t{1} << qubits; }

struct UnitaryPair {
    UnitaryMatrix u;
    UnitaryMatrix v;
};

UnitaryPair load_unitaries(const RunConfig &c, std::size_t qubits) {
    const std::size_t d = dim_of(qubits);
    if (c.unitary_mode == "files") {
        auto u = read_unitary(c.unitary_a);
        auto v = read_unitary(c.unitary_b);
        if (u.dim() != d || v.dim() != d) {
            throw ConfigError("unitary files have dimensions " + std::to_string(u.dim()) +
                              " and " + std::to_string(v.dim()) + " but --qubits " +
                              std::to_string(qubits) + " needs " + std::to_string(d));
        }
        return {std::move(u), std::move(v)};
    }
    const SeedStream root(c.seed);
    auto us = root.derive({seed_tags::unitaries, qubits, 0});
    auto u = haar_unitary(d, us);
    if (c.unitary_mode == "same-haar") {
        return {u, u};
    }
    auto vs = root.derive({seed_tags::unitaries, qubits, 1});
    return {std::move(u), haar_unitary(d, vs)};
}

struct Row {
    EstimateReport report;
    std::size_t dim = 0;
    std::size_t shots_or_copies = 0;
    double exact = 0.0;
    std::vector<RoundRecord> records;
};

Row run_row(const RunConfig &c, std::size_t row_index, bool keep_records) {
    const Protocol protocol = parse_protocol(c.protocol);
    const auto pair = load_unitaries(c, c.qubits);
    if (!c.export_unitaries.empty()) {
        std::filesystem::create_directories(c.export_unitaries);
        const auto base = std::filesystem::path(c.export_unitaries);
        const auto suffix = "_q" + std::to_string(c.qubits) + ".json";
        write_unitary((base / ("unitary_a" + suffix)).string(), pair.u);
        write_unitary((base / ("unitary_b" + suffix)).string(), pair.v);
    }
    Row row;
    row.dim = dim_of(c.qubits);
    row.shots_or_copies =
        protocol == Protocol::incoherent ? effective_shots(c, row.dim) : c.copies;
    row.exact = exact_similarity(pair.u, pair.v);

    const Device dev_a(DeviceLabel::A, pair.u);
    const Device dev_b(DeviceLabel::B, pair.v);
    const SeedStream root = SeedStream(c.seed).derive({kRowTag, row_index});
    auto records = run_rounds(protocol, dev_a, dev_b, row.shots_or_copies, c.rounds,
                              root, c.threads);
    row.report = aggregate(records);
    row.report.config_echo = {
        {"protocol", c.protocol},      {"d", row.dim},
        {"rounds", c.rounds},          {"shots_or_copies", row.shots_or_copies},
        {"seed", c.seed},              {"unitary_mode", c.unitary_mode},
    };
    if (keep_records) {
        row.records = std::move(records);
    }
    return row;
}

RunConfig with_sweep_value(RunConfig c, const Sweep &sweep, const std::string &value) {
    if (sweep.parameter == "qubits") {
        c.qubits = std::stoul(value);
    } else if (sweep.parameter == "shots") {
        c.shots = value;
    } else if (sweep.parameter == "copies") {
        c.copies = std::stoul(value);
    } else if (sweep.parameter == "rounds") {
        c.rounds = std::stoul(value);
    }
    c.sweep.reset();
    return c;
}

nlohmann::json row_json(const Row &row) {
    auto j = to_json(row.report);
    j["d"] = row.dim;
    j["shots_or_copies"] = row.shots_or_copies;
    j["exact_similarity"] = row.exact;
    j["mean_clipped_to_unit_interval"] = std::clamp(row.report.mean, 0.0, 1.0);
    return j;
}

std::string csv_row(const Row &row) {
    const auto &r = row.report;
    std::ostringstream os;
    os << to_string(r.protocol) << ',' << row.dim << ',' << r.rounds << ','
       << row.shots_or_copies << ',' << r.seed << ',' << fmt(r.mean) << ','
       << fmt(r.std_error) << ',' << fmt(r.per_round_variance) << ','
       << r.queries_per_device;
    return os.str();
}

void emit(const RunConfig &c, const std::string &text) {
    if (c.output_path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    const auto parent = std::filesystem::path(c.output_path).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    std::ofstream out(c.output_path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file '" + c.output_path + "'");
    }
    out << text;
}

void emit_sidecar(const RunConfig &c, const std::string &text) {
    if (c.output_path == "-") {
        throw ConfigError("--records with --format csv needs --output to be a file path");
    }
    std::ofstream out(c.output_path + ".rounds.csv", std::ios::binary);
    out << text;
}

int run_estimates(const RunConfig &c) {
    std::vector<Row> rows;
    if (c.sweep) {
        for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
            rows.push_back(run_row(with_sweep_value(c, *c.sweep, c.sweep->values[i]), i,
                                   c.records));
        }
    } else {
        rows.push_back(run_row(c, 0, c.records));
    }

    const auto config = to_json(c);
    if (c.output_format == "json") {
        nlohmann::json doc = {{"config", config}, {"results", nlohmann::json::array()}};
        for (const auto &row : rows) {
            auto j = row_json(row);
            if (c.records) {
                nlohmann::json recs = nlohmann::json::array();
                for (const auto &rec : row.records) {
                    recs.push_back(to_json(rec));
                }
                j["round_records"] = std::move(recs);
            }
            doc["results"].push_back(std::move(j));
        }
        emit(c, doc.dump(2) + "\n");
        return kExitOk;
    }

    std::ostringstream os;
    os << "# config: " << config.dump() << '\n' << kCsvHeader << '\n';
    for (const auto &row : rows) {
        os << csv_row(row) << '\n';
    }
    if (c.records) {
        std::ostringstream side;
        side << "# config: " << config.dump() << '\n' << "row,round,estimate,seed_path\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (const auto &rec : rows[i].records) {
                side << i << ',' << rec.round_index << ',' << fmt(rec.per_round_estimate)
                     << ',';
                for (std::size_t k = 0; k < rec.setting_seed_path.size(); ++k) {
                    side << (k ? "/" : "") << rec.setting_seed_path[k];
                }
                side << '\n';
            }
        }
        emit_sidecar(c, side.str());
    }
    emit(c, os.str());
    return kExitOk;
}

int run_distinguish(const RunConfig &c) {
    const Protocol protocol = parse_protocol(c.distinguish_protocol);
    const std::size_t d = dim_of(c.qubits);
    const std::size_t param =
        protocol == Protocol::incoherent ? effective_shots(c, d) : c.copies;
    const SeedStream root(c.seed);

    std::vector<DistinguishingOutcome> outcomes;
    outcomes.reserve(c.trials);
    std::size_t correct = 0;
    for (std::size_t t = 0; t < c.trials; ++t) {
        outcomes.push_back(run_distinguishing_trial(
            d, protocol, c.rounds, param, c.threshold,
            root.derive({seed_tags::distinguish, t}), c.threads));
        correct += outcomes.back().correct() ? 1 : 0;
    }
    const double fraction = static_cast<double>(correct) / static_cast<double>(c.trials);
    const auto config = to_json(c);

    if (c.output_format == "json") {
        nlohmann::json trials = nlohmann::json::array();
        for (std::size_t t = 0; t < outcomes.size(); ++t) {
            const auto &o = outcomes[t];
            trials.push_back({{"trial", t},
                              {"same_unitary", o.same_unitary},
                              {"declared_same", o.declared_same},
                              {"estimate", o.estimate},
                              {"exact_similarity", o.exact_similarity},
                              {"correct", o.correct()}});
        }
        const nlohmann::json doc = {
            {"config", config},
            {"summary",
             {{"protocol", c.distinguish_protocol},
              {"d", d},
              {"rounds", c.rounds},
              {"shots_or_copies", param},
              {"threshold", c.threshold},
              {"trials", c.trials},
              {"correct", correct},
              {"success_fraction", fraction},
              {"queries_per_device_per_trial", c.rounds * param}}},
            {"trials", trials}};
        emit(c, doc.dump(2) + "\n");
        return kExitOk;
    }
    std::ostringstream os;
    os << "# config: " << config.dump() << '\n'
       << "trial,same_unitary,declared_same,estimate,exact_similarity,correct\n";
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const auto &o = outcomes[t];
        os << t << ',' << o.same_unitary << ',' << o.declared_same << ','
           << fmt(o.estimate) << ',' << fmt(o.exact_similarity) << ',' << o.correct() << '\n';
    }
    os << "# success_fraction: " << fmt(fraction) << '\n';
    emit(c, os.str());
    return kExitOk;
}

struct Check {
    std::string name;
    bool passed = false;
    bool skipped = false;
    nlohmann::json detail;
};

Check moment_check(const std::string &name, const MomentReport &r) {
    return {name,
            std::abs(r.z_score) <= 5.0,
            false,
            {{"quantity", r.quantity},
             {"exact", r.exact},
             {"empirical", r.empirical},
             {"std_error", r.std_error},
             {"z_score", r.z_score}}};
}

std::vector<Check> validation_checks(const RunConfig &c) {
    const std::size_t d = dim_of(c.qubits);
    const SeedStream root = SeedStream(c.seed).derive(kValidateTag);
    std::vector<Check> checks;

    {
        auto rng = root.derive(1);
        double worst = 0.0;
        for (int p = 0; p < 50; ++p) {
            const auto u = haar_unitary(d, rng);
            const auto v = haar_unitary(d, rng);
            const double target = exact_similarity(u, v);
            worst = std::max(worst, std::abs(omega(expected_g(u, v), d) - target));
            worst = std::max(worst, std::abs(expected_gamma(u, v) - target));
            for (std::size_t t : {1, 2, 4, 8}) {
                worst = std::max(
                    worst, std::abs(chi(expected_f_coherent(u, v, t), t, d) - target));
            }
        }
        checks.push_back({"identity_chain", worst <= 1e-12, false, {{"max_abs_error", worst}}});
    }

    if (d <= 16) {
        auto rng = root.derive(2);
        double worst = 0.0;
        for (int p = 0; p < 10; ++p) {
            const auto u = haar_unitary(d, rng);
            const auto v = haar_unitary(d, rng);
            const Complex dense =
                (choi_of_unitary(u).adjoint() * choi_of_unitary(v)).trace();
            worst = std::max(worst, std::abs(dense.real() / static_cast<double>(d * d) -
                                             expected_gamma(u, v)));
        }
        checks.push_back({"choi_inner", worst <= 1e-10, false, {{"max_abs_error", worst}}});
    } else {
        checks.push_back({"choi_inner", true, true, {{"reason", "d > 16"}}});
    }

    if (d <= 8) {
        auto rng = root.derive(3);
        CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        a(0, 0) = 1.0;
        checks.push_back(moment_check("twirl_k1", haar_twirl_check(1, a, 20000, rng)));
    } else {
        checks.push_back({"twirl_k1", true, true, {{"reason", "d > 8"}}});
    }
    if (d <= 4) {
        auto rng = root.derive(4);
        // |01⟩⟨01| is not twirl invariant, so every entry is genuinely sampled.
        const auto n = static_cast<Eigen::Index>(d * d);
        CMatrix b = CMatrix::Zero(n, n);
        b(1, 1) = 1.0;
        checks.push_back(moment_check("twirl_k2", haar_twirl_check(2, b, 20000, rng)));
    } else {
        checks.push_back({"twirl_k2", true, true, {{"reason", "d > 4"}}});
    }

    {
        auto rng = root.derive(5);
        const auto u = haar_unitary(d, rng);
        const auto v = haar_unitary(d, rng);
        checks.push_back(moment_check("f_psi", f_psi_check(u, v, 20000, rng)));
    }

    if (d <= 16) {
        auto rng = root.derive(6);
        double trace_err = 0.0;
        double inner_err = 0.0;
        for (int p = 0; p < 100; ++p) {
            const std::size_t s = 1 + static_cast<std::size_t>(p % 4);
            const auto x = build_snapshot(haar_state(d, rng), haar_state(d, rng), s);
            const auto y = build_snapshot(haar_state(d, rng), haar_state(d, rng), s);
            const CMatrix dx = densify(x);
            trace_err = std::max(trace_err, std::abs(dx.trace() - static_cast<double>(d)));
            const double dense = (dx.adjoint() * densify(y)).trace().real();
            const double factored = snapshot_inner(x, y);
            inner_err = std::max(inner_err, std::abs(dense - factored) /
                                                std::max(1.0, std::abs(dense)));
        }
        checks.push_back({"snapshot_trace", trace_err <= 1e-10, false, {{"max_abs_error", trace_err}}});
        checks.push_back({"snapshot_inner_dense", inner_err <= 1e-8, false, {{"max_rel_error", inner_err}}});
    } else {
        checks.push_back({"snapshot_trace", true, true, {{"reason", "d > 16"}}});
        checks.push_back({"snapshot_inner_dense", true, true, {{"reason", "d > 16"}}});
    }

    if (d <= 8) {
        const CMatrix pi = symmetric_projector(d, 2);
        const double trace_err =
            std::abs(pi.trace().real() - static_cast<double>(kappa(d, 2)));
        const double idem = (pi * pi - pi).cwiseAbs().maxCoeff();
        checks.push_back({"symmetric_projector", trace_err <= 1e-10 && idem <= 1e-10, false,
                          {{"trace_error", trace_err}, {"idempotency_error", idem}}});
    } else {
        checks.push_back({"symmetric_projector", true, true, {{"reason", "d^2 > 64"}}});
    }

    {
        auto rng = root.derive(7);
        const std::size_t copies = 2;
        const std::size_t samples = 20000;
        const auto input = haar_state(d, rng);
        const auto n = static_cast<Eigen::Index>(d);
        CMatrix sum = CMatrix::Zero(n, n);
        Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(n, n);
        double overlap_sum = 0.0;
        double overlap_sq_sum = 0.0;
        for (std::size_t s = 0; s < samples; ++s) {
            const auto out = sample_symmetric_povm(input, copies, rng);
            const CMatrix proj = out.phi.amplitudes() * out.phi.amplitudes().adjoint();
            sum += proj;
            sq_re += proj.real().cwiseAbs2();
            sq_im += proj.imag().cwiseAbs2();
            overlap_sum += out.overlap_sq;
            overlap_sq_sum += out.overlap_sq * out.overlap_sq;
        }
        const double ns = static_cast<double>(samples);
        const CMatrix exact =
            (CMatrix::Identity(n, n) +
             static_cast<double>(copies) * input.amplitudes() * input.amplitudes().adjoint()) /
            static_cast<double>(d + copies);
        MomentReport worst = make_moment_report("none", 0, 0, 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                for (int part = 0; part < 2; ++part) {
                    const double mean = (part ? sum(i, j).imag() : sum(i, j).real()) / ns;
                    const double sq = (part ? sq_im(i, j) : sq_re(i, j)) / ns;
                    const double se = std::sqrt(std::max(0.0, sq - mean * mean) / (ns - 1.0));
                    const double ex = part ? exact(i, j).imag() : exact(i, j).real();
                    auto r = make_moment_report("E[phi phi^dag](" + std::to_string(i) + "," +
                                                    std::to_string(j) + (part ? ").im" : ").re"),
                                                ex, mean, se);
                    if (std::abs(r.z_score) > std::abs(worst.z_score)) {
                        worst = std::move(r);
                    }
                }
            }
        }
        checks.push_back(moment_check("povm_mean", worst));
        const double m = overlap_sum / ns;
        const double se = std::sqrt(std::max(0.0, overlap_sq_sum / ns - m * m) / (ns - 1.0));
        const double beta_mean = static_cast<double>(copies + 1) / static_cast<double>(copies + d);
        checks.push_back(moment_check("povm_overlap_mean",
                                      make_moment_report("overlap_sq", beta_mean, m, se)));
    }
    return checks;
}

int run_validate(const RunConfig &c) {
    const auto checks = validation_checks(c);
    const bool all_passed =
        std::all_of(checks.begin(), checks.end(), [](const Check &k) { return k.passed; });
    const auto config = to_json(c);
    if (c.output_format == "json") {
        nlohmann::json list = nlohmann::json::array();
        for (const auto &k : checks) {
            list.push_back({{"name", k.name},
                            {"passed", k.passed},
                            {"skipped", k.skipped},
                            {"detail", k.detail}});
        }
        emit(c, nlohmann::json{{"config", config},
                               {"d", dim_of(c.qubits)},
                               {"all_passed", all_passed},
                               {"checks", list}}
                        .dump(2) +
                    "\n");
    } else {
        std::ostringstream os;
        os << "# config: " << config.dump() << '\n' << "check,passed,skipped,detail\n";
        for (const auto &k : checks) {
            std::string detail = k.detail.dump();
            std::replace(detail.begin(), detail.end(), ',', ';');
            os << k.name << ',' << k.passed << ',' << k.skipped << ',' << detail << '\n';
        }
        emit(c, os.str());
    }
    return all_passed ? kExitOk : kExitNumerical;
}

} // namespace

int run(const RunConfig &config, std::ostream &log) {
    try {
        validate(config);
        if (config.protocol == "validate") {
            const int code = run_validate(config);
            if (code != kExitOk) {
                log << "error: numerical validation failed\n";
            }
            return code;
        }
        if (config.protocol == "distinguish") {
            return run_distinguish(config);
        }
        return run_estimates(config);
    } catch (const ConfigError &e) {
        log << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NotUnitary &e) {
        log << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error &e) {
        log << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error &e) {
        log << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace dseu::app

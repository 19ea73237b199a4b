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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dseu/app/config.hpp"
#include "dseu/app/runner.hpp"

int main(int argc, char **argv) {
    using namespace dseu::app;
    RunConfig config;
    config.threads = default_thread_count();
    std::string sweep;

    CLI::App app{"Distributed similarity estimation of unitary channels: "
                 "two simulated devices estimate |tr(U^dag V)|^2 / d^2."};
    app.add_option("--protocol", config.protocol,
                   "incoherent, coherent, shadow, distinguish or validate")
        ->capture_default_str();
    app.add_option("--qubits", config.qubits, "number of qubits n, d = 2^n (1..6)")
        ->capture_default_str();
    app.add_option("--rounds", config.rounds, "protocol rounds per estimate (>= 2)")
        ->capture_default_str();
    app.add_option("--shots", config.shots,
                   "measurements per round for incoherent runs, or 'auto' for ceil(sqrt(d))")
        ->capture_default_str();
    app.add_option("--copies", config.copies, "copies per collective measurement")
        ->capture_default_str();
    app.add_option("--seed", config.seed, "root seed")->capture_default_str();
    app.add_option("--unitary-mode", config.unitary_mode,
                   "same-haar, independent-haar or files")
        ->capture_default_str();
    app.add_option("--unitary-a", config.unitary_a, "JSON unitary file for device A");
    app.add_option("--unitary-b", config.unitary_b, "JSON unitary file for device B");
    app.add_option("--distinguish-protocol", config.distinguish_protocol,
                   "protocol used by distinguishing trials")
        ->capture_default_str();
    app.add_option("--trials", config.trials, "distinguishing trials")->capture_default_str();
    app.add_option("--threshold", config.threshold,
                   "declare 'same' when the estimate is at least this value")
        ->capture_default_str();
    app.add_option("--sweep", sweep, "parameter=v1,v2,... over qubits, shots, copies or rounds");
    app.add_option("--format", config.output_format, "csv or json")->capture_default_str();
    app.add_option("--output", config.output_path, "output file, '-' for stdout")
        ->capture_default_str();
    app.add_flag("--records", config.records, "also write per-round records");
    app.add_option("--export-unitaries", config.export_unitaries,
                   "directory to write the installed unitaries to");
    app.add_option("--threads", config.threads,
                   "worker threads (default: DSEU_THREADS or all cores)");

    try {
        app.parse(argc, argv);
        if (!sweep.empty()) {
            config.sweep = parse_sweep(sweep);
        }
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return run(config, std::cerr);
}

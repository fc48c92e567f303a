// Copyright 2026 The pqclab Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand reads an optional key=value
// config file, overlays explicitly passed flags on top of it, and hands the
// merged configuration to the matching runner in
// include/pqclab/experiments.hpp. Results are written as a CSV file plus a
// space-separated .dat twin; the summary goes to stdout.
//
// Exit codes: 0 success, 1 verification failure or unexpected error,
// 2 configuration error, 3 resource limit.

#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "pqclab/config.hpp"
#include "pqclab/experiments.hpp"

namespace {

struct Binding {
    CLI::Option *option = nullptr;
    std::string key;
    std::shared_ptr<std::string> value;
    bool is_flag = false;
};

struct Command {
    CLI::App *app = nullptr;
    std::string name;
    std::function<pqclab::ExperimentOutput(const pqclab::KvConfig &)> runner;
    std::vector<Binding> bindings;
    std::shared_ptr<std::string> config_path = std::make_shared<std::string>();
};

auto bind_option(Command &command, const std::string &flag,
                 const std::string &key, const std::string &help)
    -> CLI::Option * {
    auto value = std::make_shared<std::string>();
    CLI::Option *option = command.app->add_option(flag, *value, help);
    command.bindings.push_back({option, key, value, false});
    return option;
}

auto bind_flag(Command &command, const std::string &flag,
               const std::string &key, const std::string &help)
    -> CLI::Option * {
    CLI::Option *option = command.app->add_flag(flag, help);
    command.bindings.push_back({option, key, nullptr, true});
    return option;
}

auto add_common(Command &command) -> void {
    command.app->add_option("--config", *command.config_path,
                            "key=value config file, overridden by flags");
    bind_option(command, "--seed", "seed", "base RNG seed (default 42)");
    bind_option(command, "--out", "out",
                "output CSV path (a .dat twin is written next to it)");
}

auto build_config(const Command &command) -> pqclab::KvConfig {
    pqclab::KvConfig config;
    if (!command.config_path->empty()) {
        config = pqclab::KvConfig::load(*command.config_path);
    }
    pqclab::KvConfig overrides;
    for (const auto &binding : command.bindings) {
        if (binding.option->count() == 0) {
            continue;
        }
        overrides.set(binding.key, binding.is_flag ? "1" : *binding.value);
    }
    config.merge(overrides);
    return config;
}

auto run_command(const Command &command) -> int {
    try {
        const pqclab::KvConfig config = build_config(command);
        const pqclab::ExperimentOutput output = command.runner(config);
        const std::filesystem::path out_path =
            config.get_string("out", command.name + ".csv");
        pqclab::write_outputs(output, out_path);
        std::filesystem::path dat_path = out_path;
        dat_path.replace_extension(".dat");
        std::cout << output.summary;
        std::cout << "config hash: " << output.hash << "\n";
        std::cout << "wrote " << out_path.string() << " and "
                  << dat_path.string() << "\n";
        return output.exit_code;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return pqclab::exit_code_for_current_exception();
    }
}

} // namespace

auto main(int argc, char **argv) -> int {
    CLI::App app{
        "pqclab: trainability laboratory for layered parameterized circuits"};
    app.require_subcommand(1);

    std::vector<Command> commands;
    commands.reserve(7);

    const auto make = [&app, &commands](
                          const std::string &name, const std::string &help,
                          pqclab::ExperimentOutput (*runner)(
                              const pqclab::KvConfig &)) -> Command & {
        Command command;
        command.app = app.add_subcommand(name, help);
        command.name = name;
        command.runner = runner;
        commands.push_back(std::move(command));
        add_common(commands.back());
        return commands.back();
    };

    {
        Command &c = make("solve-a", "reduced-domain hyperparameter report",
                          pqclab::run_solve_a);
        bind_option(c, "--theorem", "theorem", "1, 2, or 3edge (default 1)");
        bind_option(c, "--blocks", "blocks", "block count L (default 8)");
        bind_option(c, "--locality", "locality",
                    "Pauli locality S for theorem 2 (default 2)");
        bind_option(c, "--n-qubits", "n_qubits", "qubit count (default 8)");
        bind_option(c, "--hamiltonian", "hamiltonian",
                    "zz, heisenberg, or file:PATH (sets the term count)");
    }
    {
        Command &c = make("bounds", "gradient lower-bound catalog",
                          pqclab::run_bounds);
        bind_option(c, "--theorem", "theorem",
                    "1, 2, 3edge, 3bulk, 4, or all (default all)");
        bind_option(c, "--hamiltonian", "hamiltonian",
                    "zz, heisenberg, or file:PATH (default heisenberg)");
        bind_option(c, "--n-qubits", "n_qubits",
                    "comma-separated qubit counts (default 4,6,8)");
        bind_option(c, "--blocks", "blocks",
                    "block count, an integer or 5N (default 8)");
        bind_option(c, "--locality", "locality", "Pauli locality (default 2)");
    }
    {
        Command &c = make("gradnorm-scan",
                          "Monte Carlo gradient-norm scan vs. bounds",
                          pqclab::run_gradnorm_scan);
        bind_option(c, "--hamiltonian", "hamiltonian",
                    "zz, heisenberg, or file:PATH (default zz)");
        bind_option(c, "--topology", "topology",
                    "chain_closed or full (default chain_closed)");
        bind_option(c, "--n-qubits", "n_qubits",
                    "comma-separated qubit counts (default 2,4,6,8)");
        bind_option(c, "--blocks", "blocks",
                    "block count, an integer or 5N (default 5N)");
        bind_option(c, "--locality", "locality", "Pauli locality (default 2)");
        bind_option(c, "--samples", "samples",
                    "Monte Carlo samples per cell (default 500)");
        bind_option(c, "--threads", "threads",
                    "worker threads, result independent of it (default 1)");
    }
    {
        Command &c = make("vqe-train", "VQE training rounds per init strategy",
                          pqclab::run_vqe_train);
        bind_option(c, "--hamiltonian", "hamiltonian",
                    "zz, heisenberg, or file:PATH (default zz)");
        bind_option(c, "--topology", "topology",
                    "chain_closed or full (default chain_closed)");
        bind_option(c, "--n-qubits", "n_qubits", "qubit count (default 8)");
        bind_option(c, "--blocks", "blocks",
                    "block count, an integer or 5N (default 8)");
        bind_option(c, "--locality", "locality", "Pauli locality (default 2)");
        bind_option(c, "--init", "init",
                    "comma-separated subset of uniform,gaussian,reduced");
        bind_option(c, "--rounds", "rounds",
                    "independent training rounds (default 10)");
        bind_option(c, "--iters", "iters",
                    "optimizer iterations per round (default 200)");
    }
    {
        Command &c = make("qnn-scan",
                          "QNN convergence frequency vs. parameter count",
                          pqclab::run_qnn_scan);
        bind_option(c, "--p-list", "p_list",
                    "comma-separated parameter counts (default 6,8,10,12,14)");
        bind_option(c, "--rounds", "rounds", "training rounds (default 500)");
        bind_option(c, "--iters", "iters", "iterations per round (default 200)");
        bind_option(c, "--lr", "lr", "RMSProp learning rate (default 0.01)");
        bind_option(c, "--smoothing", "smoothing",
                    "RMSProp smoothing (default 0.99)");
        bind_option(c, "--a", "a", "reduced-domain parameter (default 0.1)");
    }
    {
        Command &c = make("qnn-dist", "QNN final-loss distribution",
                          pqclab::run_qnn_dist);
        bind_option(c, "--p", "p", "parameter count (default 16)");
        bind_option(c, "--rounds", "rounds", "training rounds (default 500)");
        bind_option(c, "--iters", "iters", "iterations per round (default 200)");
        bind_option(c, "--lr", "lr", "RMSProp learning rate (default 0.01)");
        bind_option(c, "--smoothing", "smoothing",
                    "RMSProp smoothing (default 0.99)");
        bind_option(c, "--a", "a", "translated-domain width (default 0.1)");
        bind_option(c, "--center", "center",
                    "translated-domain center (default pi/4)");
    }
    {
        Command &c = make("verify-lemmas",
                          "randomized verification of the algebraic layer",
                          pqclab::run_verify_lemmas);
        bind_option(c, "--trials", "trials",
                    "random trials per check (default 100)");
        bind_flag(c, "--inject-cz-fault", "inject_cz_fault",
                  "corrupt one conjugation-table entry (self-test)")
            ->group("");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (const Command &command : commands) {
        if (command.app->parsed()) {
            return run_command(command);
        }
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
}

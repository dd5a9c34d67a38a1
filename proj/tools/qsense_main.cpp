// Copyright 2026 The qsense authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsense/config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPipeline = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
    std::string config;
    std::string out = "-";
    std::uint64_t seed = 0;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config, "scenario configuration file (JSON)")
        ->required();
    cmd->add_option("--out", opts.out, "output path ('-' for stdout)");
    cmd->add_option("--seed", opts.seed, "random seed for optimizer restarts and sampling");
    cmd->add_option("--format", opts.format, "output format: csv or table")
        ->check(CLI::IsMember({"csv", "table"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qsense: two-qubit sensor-ancilla simulator and estimation-sensitivity toolkit"};
    app.require_subcommand(1);

    struct SubDef {
        const char* name;
        const char* help;
    };
    const SubDef subs[] = {
        {"ideal-qfim", "quantum/classical Fisher matrices of the vector-field model"},
        {"rotated-optimum", "optimize the measurement-basis rotation at zero field"},
        {"nv-sweep", "signal sweep over one target drive parameter"},
        {"scaling", "sensitivity versus loop count with power-law fits"},
        {"compare", "strategy comparison under averaged readout"},
        {"maps", "figure-of-merit landscape over field and time"},
        {"projection-vs-shot", "projection-noise versus readout-noise sensitivities"},
    };

    CommonOptions opts;
    for (const auto& def : subs) add_common(app.add_subcommand(def.name, def.help), opts);

    CLI11_PARSE(app, argc, argv);
    const std::string sub_name = app.get_subcommands().front()->get_name();

    try {
        const auto sub = qsense::cli::parse_subcommand(sub_name);
        const qsense::Table table = qsense::cli::run_scenario(sub, opts.config, opts.seed);
        const auto fmt = opts.format == "csv" ? qsense::TableFormat::Csv
                                              : qsense::TableFormat::Aligned;
        qsense::emit_table_file(table, opts.out, fmt);
    } catch (const qsense::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qsense::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qsense::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

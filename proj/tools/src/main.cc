// Copyright 2026 The qdouble Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qdouble/errors.h"
#include "qdouble_cli/runner.h"

using nlohmann::json;
using namespace qdouble::cli;

namespace {

int emit(const ExperimentConfig &cfg) {
    RunResult r = run(cfg);
    std::string text = r.report.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
        if (cfg.tables) {
            std::cerr << r.tables;
        }
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.output << "\n";
            return kConfigError;
        }
        f << text;
        if (cfg.tables) {
            std::cout << r.tables;
        }
    }
    for (const auto &rec : r.report.value("experiments", json::array())) {
        if (rec.contains("error")) {
            std::cerr << rec.at("name").get<std::string>() << ": " << rec.at("error").get<std::string>() << "\n";
        }
    }
    if (r.report.contains("error")) {
        std::cerr << "error: " << r.report.at("error").at("message").get<std::string>() << "\n";
    }
    return r.exit_code;
}

int run_json(const json &config) {
    try {
        return emit(parse_config(config));
    } catch (const qdouble::ConfigError &e) {
        json record{{"schema_version", kSchemaVersion}, {"error", {{"kind", "config"}, {"message", e.what()}}}};
        std::cout << record.dump(2) << "\n";
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum double D(G) simulator: ground states, ribbon symmetries and decoherence diagnostics"};
    app.require_subcommand(1);

    std::string group, lattice, output, channel = "z";
    bool tables = false;

    auto *run_cmd = app.add_subcommand("run", "Run the experiments listed in a JSON config");
    std::string config_path;
    run_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--group", group, "Group (config wins on conflict)");
    run_cmd->add_option("--lattice", lattice, "Lattice as LxxLy (config wins on conflict)");
    run_cmd->add_option("--output", output, "Report path (config wins on conflict)");
    run_cmd->add_flag("--tables", tables, "Print aligned text tables");

    auto add_common = [&](CLI::App *cmd, const char *default_lattice) {
        cmd->add_option("--group", group, "Builtin group: Z<n>, S3, D4, Q8")->required();
        cmd->add_option("--lattice", lattice, "Lattice as LxxLy")->default_str(default_lattice);
        cmd->add_option("--output", output, "Report path (default stdout)");
        cmd->add_flag("--tables", tables, "Print aligned text tables");
    };
    auto *gsd_cmd = app.add_subcommand("gsd", "Torus ground-state degeneracy by formula and enumeration");
    add_common(gsd_cmd, "2x2");
    auto *s_cmd = app.add_subcommand("smatrix", "Modular S-matrix of D(G)");
    add_common(s_cmd, "2x2");
    auto *fusion_cmd = app.add_subcommand("fusion", "Irreps, orthogonality and Rep(G) fusion table");
    add_common(fusion_cmd, "2x2");
    auto *audit_cmd = app.add_subcommand("audit", "Strong/weak audit of closed-ribbon symmetries after decoherence");
    add_common(audit_cmd, "2x2");
    audit_cmd->add_option("--channel", channel, "z (all edges) or x (edges 0 and 1)")
        ->check(CLI::IsMember({"z", "x"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kConfigError;
    }

    json flags = json::object();
    if (!group.empty()) {
        flags["group"] = group;
    }
    if (!lattice.empty()) {
        flags["lattice"] = lattice;
    }
    if (!output.empty()) {
        flags["output"] = output;
    }
    if (tables) {
        flags["tables"] = true;
    }

    if (run_cmd->parsed()) {
        json config;
        try {
            std::ifstream f(config_path);
            config = json::parse(f);
        } catch (const json::exception &e) {
            std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
            return kConfigError;
        }
        return run_json(merge_flags(config, flags, std::cerr));
    }

    json config = flags;
    if (!config.contains("lattice")) {
        config["lattice"] = "2x2";
    }
    if (gsd_cmd->parsed()) {
        config["experiments"] = {"gsd"};
    } else if (s_cmd->parsed()) {
        config["experiments"] = {"smatrix"};
    } else if (fusion_cmd->parsed()) {
        config["experiments"] = {"fusion"};
    } else {
        config["experiments"] = {{{"name", "symmetry-audit"}, {"channel", channel}}};
    }
    return run_json(config);
}

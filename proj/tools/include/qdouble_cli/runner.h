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

#ifndef QDOUBLE_CLI_RUNNER_H
#define QDOUBLE_CLI_RUNNER_H

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdouble/diagnostics.h"

namespace qdouble::cli {

/// Process exit codes.
enum ExitCode { kOk = 0, kConfigError = 1, kCapacityError = 2, kCheckFailed = 3 };

inline constexpr int kSchemaVersion = 1;

inline const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names{"gsd",     "smatrix", "fusion",      "decohere", "symmetry-audit",
                                                "anomaly", "swssb",   "cmi-profile", "extremal"};
    return names;
}

struct ExperimentSpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

struct ExperimentConfig {
    nlohmann::json group;  // builtin name or {"name", "table", "elements"}
    int lx = 2;
    int ly = 2;
    std::vector<ExperimentSpec> experiments;
    std::string output;  // empty: stdout
    bool tables = false;
    nlohmann::json raw;
};

/// Throws ConfigError on unknown keys, unknown experiments or malformed values.
ExperimentConfig parse_config(const nlohmann::json &j);
/// "3x2" -> (3, 2).
std::pair<int, int> parse_lattice(const std::string &s);
FiniteGroup make_group(const nlohmann::json &spec);

struct RunResult {
    nlohmann::json report;
    int exit_code = kOk;
    /// Human-readable tables, one block per experiment.
    std::string tables;
};

/// Runs every experiment; never throws for experiment failures, which are
/// recorded in the report instead.
RunResult run(const ExperimentConfig &cfg);

/// Looks up a ribbon by name ("xi_x[0]", "xi_y[1]", "vertex:3", "plaquette:2")
/// or builds one from {"from": [v, p], "to": [v, p]} or a serialized ribbon.
Ribbon ribbon_from_spec(const TorusLattice &lat, const nlohmann::json &spec);

/// Merges command-line values into a config; config values win and a warning
/// is written to `warn` for every conflict.
nlohmann::json merge_flags(nlohmann::json config, const nlohmann::json &flags, std::ostream &warn);

}  // namespace qdouble::cli

#endif

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coupling.hpp"

namespace cohfluct {

// Parsed experiment configuration. JSON schema (all probabilities are plain
// arrays, indices 0-based):
//   {
//     "p": [...], "q": [...], "u": 2,
//     "n": 11,                                  // default 4*f_max + 3
//     "alpha_profile": {"kind": "uniform_window"} |
//                      {"kind": "truncated_gaussian", "sigma": 1.25},
//     "coupling": {"mode": "canonical"|"explicit", "grid": "exact"|"floor",
//                  "table": [{"i":0,"j":0,"f":1,"value":0.5}, ...]},
//     "checks": ["conditions", ...],            // default: all applicable
//     "tolerances": {"default": 1e-10, ...},
//     "seed": 0, "out_dir": "out",
//     "sweep": {"n": [7, 31, 4]} | {"sigma": [0.5, 3.0, 0.5]}
//   }
struct ExperimentConfig {
    std::vector<double> p;
    std::vector<double> q;
    int u = 2;
    std::optional<int> n;

    enum class Profile { uniform_window, truncated_gaussian };
    Profile profile = Profile::uniform_window;
    double sigma = 1.0;

    bool canonical = true;
    GridMode grid = GridMode::exact_grid;
    std::vector<CouplingEntry> table;

    std::vector<std::string> checks;  // empty = all applicable
    std::map<std::string, double> tolerances;
    long seed = 0;
    std::string out_dir = "out";

    enum class SweepKind { none, over_n, over_sigma };
    SweepKind sweep_kind = SweepKind::none;
    double sweep_start = 0.0, sweep_stop = 0.0, sweep_step = 0.0;

    double tolerance(const std::string& name) const;
};

// Throws ConfigError naming the offending field and constraint.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config(const std::string& path);

// The known check names, in report order.
const std::vector<std::string>& known_checks();

struct RunArtifacts {
    nlohmann::ordered_json report;
    std::map<std::string, std::string> files;  // "p_w.csv", "p_rev_w.csv", "sweep.csv"
    bool all_passed = false;
};

// Full pipeline: coupling -> window -> transition -> forward/reverse
// protocols -> theorem reports. all_passed iff every requested check holds.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

// One row per sweep point with columns n,N,epsilon,r1,r2,r3,overlap,bound;
// failed points are recorded in the report and the sweep continues.
RunArtifacts sweep_experiment(const ExperimentConfig& cfg);

// Dense full-label comparison on a size-capped instance.
RunArtifacts oracle_experiment(const ExperimentConfig& cfg);

}  // namespace cohfluct

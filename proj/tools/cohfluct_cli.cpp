// Command-line front end for the cohfluct shared library. Reads a JSON
// experiment configuration, executes run / sweep / validate / oracle through
// the C API, and writes report.json plus CSV artifacts to the output
// directory.
//
// Exit codes: 0 success, 1 at least one requested check failed,
// 2 configuration error, 3 internal/numerical error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohfluct/cohfluct.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

int exit_code_for(cohf_status s) { return s == COHF_ERR_CONFIG ? kExitConfig : kExitInternal; }

std::string read_file(const std::string& path, bool& ok) {
    std::ifstream in(path);
    if (!in) {
        ok = false;
        return {};
    }
    std::stringstream ss;
    ss << in.rdbuf();
    ok = true;
    return ss.str();
}

// Folds --checks/--out into the config text so the library sees one source
// of truth.
std::string merge_flags(const std::string& config_text, const std::string& checks,
                        const std::string& out_dir, bool& ok) {
    if (checks.empty() && out_dir.empty()) {
        ok = true;
        return config_text;
    }
    nlohmann::json j = nlohmann::json::parse(config_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        ok = false;  // let the library produce the schema error
        return config_text;
    }
    if (!checks.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        std::stringstream ss(checks);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) arr.push_back(item);
        }
        j["checks"] = arr;
    }
    if (!out_dir.empty()) j["out_dir"] = out_dir;
    ok = true;
    return j.dump();
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

int write_error_record(const std::string& out_dir, cohf_status s) {
    nlohmann::json err;
    err["error"] = {{"status", cohf_status_name(s)}, {"message", cohf_last_error()}};
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    write_file(std::filesystem::path(out_dir) / "report.json", err.dump(2) + "\n");
    std::cerr << "error: " << cohf_last_error() << "\n";
    return exit_code_for(s);
}

void print_check_lines(const std::string& report_text) {
    nlohmann::json rep = nlohmann::json::parse(report_text, nullptr, false);
    if (rep.is_discarded() || !rep.contains("checks")) return;
    for (const auto& [name, ok] : rep.at("checks").items()) {
        std::cout << (ok.get<bool>() ? "[PASS] " : "[FAIL] ") << name << "\n";
    }
}

int run_mode(const std::string& config_text, const std::string& mode, bool quiet) {
    cohf_experiment* exp = nullptr;
    cohf_status s = cohf_experiment_create(config_text.c_str(), &exp);
    if (s != COHF_OK) {
        std::cerr << "config error: " << cohf_last_error() << "\n";
        return kExitConfig;
    }
    std::string out_dir = cohf_experiment_out_dir(exp);

    if (mode == "run") {
        s = cohf_experiment_run(exp);
    } else if (mode == "sweep") {
        s = cohf_experiment_sweep(exp);
    } else {
        s = cohf_experiment_oracle(exp);
    }
    if (s != COHF_OK) {
        int code = s == COHF_ERR_CONFIG ? kExitConfig : kExitInternal;
        code = std::max(code, write_error_record(out_dir, s));
        cohf_experiment_destroy(exp);
        return code;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::string report = cohf_experiment_report(exp);
    if (!write_file(std::filesystem::path(out_dir) / "report.json", report + "\n")) {
        std::cerr << "error: cannot write report to " << out_dir << "\n";
        cohf_experiment_destroy(exp);
        return kExitInternal;
    }
    for (const char* name : {"p_w.csv", "p_rev_w.csv", "sweep.csv"}) {
        const char* content = cohf_experiment_artifact(exp, name);
        if (content) write_file(std::filesystem::path(out_dir) / name, content);
    }

    if (!quiet) {
        print_check_lines(report);
        std::cout << "report: " << (std::filesystem::path(out_dir) / "report.json").string()
                  << "\n";
    }
    int passed = cohf_experiment_checks_passed(exp);
    cohf_experiment_destroy(exp);
    return passed == 1 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohfluct: battery-assisted coherence-fluctuation experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, checks;
    bool quiet = false;
    app.add_option("--config", config_path, "Path to the experiment JSON config")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides config out_dir)");
    app.add_option("--checks", checks, "Comma-separated list of checks to run");
    app.add_flag("--quiet", quiet, "Suppress per-check output");

    auto* cmd_run = app.add_subcommand("run", "Run the experiment pipeline");
    auto* cmd_sweep = app.add_subcommand("sweep", "Sweep n or sigma and emit a CSV");
    auto* cmd_validate = app.add_subcommand("validate", "Validate the config and exit");
    auto* cmd_oracle = app.add_subcommand("oracle", "Dense full-label comparison");
    for (CLI::App* sub : {cmd_run, cmd_sweep, cmd_validate, cmd_oracle}) {
        sub->fallthrough();  // accept the global --config/--out/... after the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfig : kExitOk;
    }

    bool ok = false;
    std::string config_text = read_file(config_path, ok);
    if (!ok) {
        std::cerr << "config error: cannot read " << config_path << "\n";
        return kExitConfig;
    }
    config_text = merge_flags(config_text, checks, out_dir, ok);

    if (cmd_validate->parsed()) {
        cohf_status s = cohf_validate_config(config_text.c_str());
        if (s != COHF_OK) {
            std::cerr << "config error: " << cohf_last_error() << "\n";
            return kExitConfig;
        }
        if (!quiet) std::cout << "config ok\n";
        return kExitOk;
    }
    const std::string mode = cmd_run->parsed() ? "run" : (cmd_sweep->parsed() ? "sweep" : "oracle");
    return run_mode(config_text, mode, quiet);
}

#include "cohfluct/cohfluct.h"

#include <map>
#include <string>

#include "experiment.hpp"

using namespace cohfluct;

struct cohf_experiment {
    ExperimentConfig cfg;
    std::string report;
    std::map<std::string, std::string> artifacts;
    int checks_passed = -1;
};

namespace {

thread_local std::string g_last_error;

cohf_status fail(cohf_status s, const std::string& message) {
    g_last_error = message;
    return s;
}

// Runs `fn`, translating the exception taxonomy into status codes.
template <typename Fn>
cohf_status guarded(Fn&& fn) {
    try {
        fn();
        return COHF_OK;
    } catch (const ConfigError& e) {
        return fail(COHF_ERR_CONFIG, e.what());
    } catch (const GridError& e) {
        return fail(COHF_ERR_GRID, e.what());
    } catch (const MajorisationError& e) {
        return fail(COHF_ERR_MAJORISATION, e.what());
    } catch (const WraparoundError& e) {
        return fail(COHF_ERR_WRAPAROUND, e.what());
    } catch (const WindowError& e) {
        return fail(COHF_ERR_WINDOW, e.what());
    } catch (const PreconditionError& e) {
        return fail(COHF_ERR_PRECONDITION, e.what());
    } catch (const SizeCapError& e) {
        return fail(COHF_ERR_SIZE_CAP, e.what());
    } catch (const InconclusiveError& e) {
        return fail(COHF_ERR_INCONCLUSIVE, e.what());
    } catch (const NumericError& e) {
        return fail(COHF_ERR_NUMERIC, e.what());
    } catch (const ValidationError& e) {
        return fail(COHF_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(COHF_ERR_INTERNAL, e.what());
    }
}

cohf_status execute(cohf_experiment* exp, RunArtifacts (*runner)(const ExperimentConfig&)) {
    if (!exp) return fail(COHF_ERR_ARGUMENT, "null experiment handle");
    return guarded([&] {
        RunArtifacts out = runner(exp->cfg);
        exp->report = out.report.dump(2);
        exp->artifacts = std::move(out.files);
        exp->checks_passed = out.all_passed ? 1 : 0;
    });
}

}  // namespace

extern "C" {

const char* cohf_version(void) { return "0.1.0"; }

const char* cohf_status_name(cohf_status s) {
    switch (s) {
        case COHF_OK: return "COHF_OK";
        case COHF_ERR_CONFIG: return "COHF_ERR_CONFIG";
        case COHF_ERR_VALIDATION: return "COHF_ERR_VALIDATION";
        case COHF_ERR_GRID: return "COHF_ERR_GRID";
        case COHF_ERR_MAJORISATION: return "COHF_ERR_MAJORISATION";
        case COHF_ERR_WINDOW: return "COHF_ERR_WINDOW";
        case COHF_ERR_WRAPAROUND: return "COHF_ERR_WRAPAROUND";
        case COHF_ERR_PRECONDITION: return "COHF_ERR_PRECONDITION";
        case COHF_ERR_SIZE_CAP: return "COHF_ERR_SIZE_CAP";
        case COHF_ERR_NUMERIC: return "COHF_ERR_NUMERIC";
        case COHF_ERR_INCONCLUSIVE: return "COHF_ERR_INCONCLUSIVE";
        case COHF_ERR_ARGUMENT: return "COHF_ERR_ARGUMENT";
        case COHF_ERR_INTERNAL: return "COHF_ERR_INTERNAL";
    }
    return "COHF_ERR_UNKNOWN";
}

const char* cohf_last_error(void) { return g_last_error.c_str(); }

cohf_status cohf_experiment_create(const char* config_json, cohf_experiment** out) {
    if (!config_json || !out) return fail(COHF_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    cohf_experiment* exp = nullptr;
    cohf_status s = guarded([&] {
        ExperimentConfig cfg = parse_config_text(config_json);
        exp = new cohf_experiment{std::move(cfg), {}, {}, -1};
    });
    if (s == COHF_OK) *out = exp;
    return s;
}

void cohf_experiment_destroy(cohf_experiment* exp) { delete exp; }

cohf_status cohf_validate_config(const char* config_json) {
    if (!config_json) return fail(COHF_ERR_ARGUMENT, "null argument");
    return guarded([&] { parse_config_text(config_json); });
}

cohf_status cohf_experiment_run(cohf_experiment* exp) { return execute(exp, run_experiment); }

cohf_status cohf_experiment_sweep(cohf_experiment* exp) {
    return execute(exp, sweep_experiment);
}

cohf_status cohf_experiment_oracle(cohf_experiment* exp) {
    return execute(exp, oracle_experiment);
}

const char* cohf_experiment_report(const cohf_experiment* exp) {
    if (!exp || exp->report.empty()) return nullptr;
    return exp->report.c_str();
}

const char* cohf_experiment_artifact(const cohf_experiment* exp, const char* name) {
    if (!exp || !name) return nullptr;
    auto it = exp->artifacts.find(name);
    return it == exp->artifacts.end() ? nullptr : it->second.c_str();
}

int cohf_experiment_checks_passed(const cohf_experiment* exp) {
    return exp ? exp->checks_passed : -1;
}

const char* cohf_experiment_out_dir(const cohf_experiment* exp) {
    return exp ? exp->cfg.out_dir.c_str() : nullptr;
}

}  // extern "C"

/* cohfluct — coherence-fluctuation simulation and verification engine.
 *
 * C interface to the shared library. An experiment is described by a JSON
 * configuration (see README for the schema), held behind an opaque handle,
 * and executed as a single run, a parameter sweep, or a dense-oracle
 * comparison. Results come back as a JSON report plus named CSV artifacts.
 *
 * All functions are thread-safe across distinct handles; a single handle
 * must not be used from two threads at once. Strings returned by the
 * library are owned by the handle (or, for cohf_last_error, by the calling
 * thread) and stay valid until the next call that replaces them.
 */
#ifndef COHFLUCT_H
#define COHFLUCT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cohf_status {
    COHF_OK = 0,
    COHF_ERR_CONFIG = 1,       /* configuration rejected (schema violation) */
    COHF_ERR_VALIDATION = 2,   /* invalid numeric input inside the engine */
    COHF_ERR_GRID = 3,         /* exact grid requested but a ratio is off-grid */
    COHF_ERR_MAJORISATION = 4, /* transport requested for a non-majorised pair */
    COHF_ERR_WINDOW = 5,       /* battery window too small / mismatched */
    COHF_ERR_WRAPAROUND = 6,   /* battery support would leave its range */
    COHF_ERR_PRECONDITION = 7, /* theorem evaluated outside its hypotheses */
    COHF_ERR_SIZE_CAP = 8,     /* dense oracle instance too large */
    COHF_ERR_NUMERIC = 9,      /* numerical degeneracy */
    COHF_ERR_INCONCLUSIVE = 10,/* LP iteration cap hit */
    COHF_ERR_ARGUMENT = 11,    /* null pointer or unknown artifact name */
    COHF_ERR_INTERNAL = 12
} cohf_status;

typedef struct cohf_experiment cohf_experiment;

/* Library version, e.g. "0.1.0". */
const char* cohf_version(void);

/* Stable name of a status code, e.g. "COHF_ERR_CONFIG". */
const char* cohf_status_name(cohf_status s);

/* Message describing the most recent failure on the calling thread. */
const char* cohf_last_error(void);

/* Parses and validates a configuration; on success *out owns it. */
cohf_status cohf_experiment_create(const char* config_json, cohf_experiment** out);
void cohf_experiment_destroy(cohf_experiment* exp);

/* One-shot configuration lint (no handle). */
cohf_status cohf_validate_config(const char* config_json);

/* Execute. Each call replaces the handle's report and artifacts. */
cohf_status cohf_experiment_run(cohf_experiment* exp);
cohf_status cohf_experiment_sweep(cohf_experiment* exp);
cohf_status cohf_experiment_oracle(cohf_experiment* exp);

/* JSON report of the last successful execution, or NULL if none. */
const char* cohf_experiment_report(const cohf_experiment* exp);

/* Named CSV artifact ("p_w.csv", "p_rev_w.csv", "sweep.csv"); NULL if the
 * last execution did not produce it. */
const char* cohf_experiment_artifact(const cohf_experiment* exp, const char* name);

/* 1 if every requested check held, 0 if any failed, -1 before execution. */
int cohf_experiment_checks_passed(const cohf_experiment* exp);

/* Output directory from the configuration ("out" if unset). */
const char* cohf_experiment_out_dir(const cohf_experiment* exp);

#ifdef __cplusplus
}
#endif

#endif /* COHFLUCT_H */

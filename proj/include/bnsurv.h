/* C interface to the biosurveillance engine. All functions return a status
 * code: 0 on success, a positive code otherwise. bnsurv_last_error() holds a
 * thread-local message for the most recent failure on the calling thread.
 * Handles are opaque; every open/create call has a matching free, and a
 * handle may be used from one thread at a time. */
#ifndef BNSURV_H
#define BNSURV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum bnsurv_status {
    BNSURV_OK = 0,
    BNSURV_E_CYCLE = 1,
    BNSURV_E_CARDINALITY = 2,
    BNSURV_E_ROW_NOT_NORMALIZED = 3,
    BNSURV_E_UNKNOWN_VARIABLE = 4,
    BNSURV_E_UNKNOWN_STATE = 5,
    BNSURV_E_ZERO_EVIDENCE = 6,
    BNSURV_E_NEGATIVE_COUNT = 7,
    BNSURV_E_TOTAL_MISMATCH = 8,
    BNSURV_E_EMPTY_ORIGIN_CLASS = 9,
    BNSURV_E_ALL_CONFIGS_IMPOSSIBLE = 10,
    BNSURV_E_MISSING_CENTROID = 11,
    BNSURV_E_UNSORTED_INPUT = 12,
    BNSURV_E_PARSE = 13,
    BNSURV_E_UNKNOWN_ZIP = 14,
    BNSURV_E_INSUFFICIENT_COVERAGE = 15,
    BNSURV_E_EMPTY_WINDOW = 16,
    BNSURV_E_TOO_FEW_SAMPLES = 17,
    BNSURV_E_IO = 18,
    BNSURV_E_INVALID_ARGUMENT = 19,
    BNSURV_E_INTERNAL = 20
};

const char* bnsurv_version(void);
const char* bnsurv_status_name(int status);
const char* bnsurv_last_error(void);

/* 1 for codes that mean bad input (validation), 0 for runtime faults.
 * Process exit codes follow this split: 0 ok, 1 validation, 2 runtime. */
int bnsurv_status_is_validation(int status);

typedef void (*bnsurv_warn_fn)(const char* message, void* ctx);

/* ---- model ------------------------------------------------------------- */

typedef struct bnsurv_model bnsurv_model;

/* Loads a parameter file. centroids_path and variant may be NULL; variant
 * is "spatial" or "nonspatial" and overrides the file. p_release <= 0 keeps
 * the file's prior. */
int bnsurv_model_open(const char* params_path, const char* centroids_path,
                      const char* variant, double p_release, bnsurv_model** out);
void bnsurv_model_free(bnsurv_model* m);

int bnsurv_model_num_zips(const bnsurv_model* m);
int bnsurv_model_num_ages(const bnsurv_model* m);
int bnsurv_model_num_configs(const bnsurv_model* m);
int64_t bnsurv_model_class_space(const bnsurv_model* m);
const char* bnsurv_model_variant(const bnsurv_model* m);
const char* bnsurv_model_zip(const bnsurv_model* m, int index);

/* ---- monitor ----------------------------------------------------------- */

typedef struct bnsurv_monitor bnsurv_monitor;

struct bnsurv_posterior {
    double p_release;
    double log_lik_release;
    double log_lik_no_release;
    int map_time;     /* 1..3 days back; 0 when no release location leads */
    int map_location; /* zip index; -1 when the no-release hypothesis wins */
    int map_angle;    /* 0..7; -1 for nonspatial models or no release */
};

/* Builds the monitoring state over a census CSV. start_time is ISO-8601;
 * calendar days roll at midnight in the given fixed UTC offset. */
int bnsurv_monitor_create(bnsurv_model* m, const char* census_path, const char* start_time,
                          int utc_offset_minutes, uint64_t resync_interval,
                          bnsurv_monitor** out);
void bnsurv_monitor_free(bnsurv_monitor* h);

/* Applies one ED arrival. gender is "female"/"male", respiratory 0/1. The
 * monitor first rolls its day forward to the case's calendar day. Returns
 * BNSURV_OK even when the case is dropped for an exhausted class; the drop
 * shows up through the warning interface. */
int bnsurv_monitor_apply_case(bnsurv_monitor* h, const char* time_iso, const char* zip,
                              int age_decile, const char* gender, int respiratory);

/* Rolls the day forward to the calendar day containing time_iso, if later. */
int bnsurv_monitor_advance_to(bnsurv_monitor* h, const char* time_iso);

int bnsurv_monitor_posterior(bnsurv_monitor* h, struct bnsurv_posterior* out);

int64_t bnsurv_monitor_population(const bnsurv_monitor* h);
int64_t bnsurv_monitor_day(const bnsurv_monitor* h);
size_t bnsurv_monitor_warning_count(const bnsurv_monitor* h);
const char* bnsurv_monitor_warning(const bnsurv_monitor* h, size_t index);

/* ---- pipeline runners (what the CLI calls) ----------------------------- */

/* Each runner loads config_path and then applies overrides, an array of
 * "key=value" strings using the config-file keys. */

int bnsurv_run_monitor(const char* config_path, const char* const* overrides,
                       size_t n_overrides, const char* stream_path, const char* trace_path,
                       bnsurv_warn_fn warn, void* warn_ctx);

/* scenario_path NULL samples a scenario from the weather table; a
 * nonnegative amount overrides the scenario's release amount. */
int bnsurv_run_simulate(const char* config_path, const char* const* overrides,
                        size_t n_overrides, const char* scenario_path, double amount,
                        const char* out_path);

/* count streams with distinct sampled release locations, written under
 * out_dir as stream_000.cases etc. */
int bnsurv_run_simulate_batch(const char* config_path, const char* const* overrides,
                              size_t n_overrides, int count, double amount,
                              const char* out_dir);

/* release_times may be NULL (read each trace's scenario sidecar) or one
 * ISO-8601 string per trace. */
int bnsurv_run_amoc(const char* const* trace_paths, size_t n_traces,
                    const char* const* release_times, const char* out_path);

/* Writes model.params, census.csv, zips.csv, weather.csv under out_dir.
 * variant is "spatial" or "nonspatial"; NULL means spatial. */
int bnsurv_synth_population(const char* out_dir, int grid_zips, int64_t population,
                            double other_fraction, int age_deciles, int weather_rows,
                            uint64_t seed, const char* variant);

#ifdef __cplusplus
}
#endif

#endif /* BNSURV_H */

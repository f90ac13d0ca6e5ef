/*
 * voroshot C API: influence-based Voronoi partitions (VD, PD, CIVD, CCVD)
 * as few-shot classification heads over precomputed feature banks.
 *
 * All functions return vs_status; on failure, vs_last_error() holds a
 * thread-local message describing the problem. Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * *_free function.
 */
#ifndef VOROSHOT_H
#define VOROSHOT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vs_status {
    VS_OK = 0,
    VS_ERR_CONFIG = 1,  /* bad or missing configuration */
    VS_ERR_DATA = 2,    /* unreadable or invalid input data */
    VS_ERR_DOMAIN = 3,  /* numeric or mathematical domain violation */
    VS_ERR_INTERNAL = 4
} vs_status;

const char* vs_version(void);

/* Message for the most recent failure on this thread. */
const char* vs_last_error(void);

/* Frees strings returned through char** out-parameters. */
void vs_string_free(char* s);

/* ---------------- feature banks ---------------- */

typedef struct vs_bank vs_bank;

vs_status vs_bank_load(const char* path, vs_bank** out);
/* format: "text" or "binary" */
vs_status vs_bank_save(const vs_bank* bank, const char* path, const char* format);
void vs_bank_free(vs_bank* bank);

uint32_t vs_bank_samples(const vs_bank* bank);
uint32_t vs_bank_dims(const vs_bank* bank);
uint32_t vs_bank_views(const vs_bank* bank);
uint32_t vs_bank_classes(const vs_bank* bank);
/* "base", "novel" or "validation" */
const char* vs_bank_split(const vs_bank* bank);

/* ---------------- evaluation reports ---------------- */

typedef struct vs_report vs_report;

double vs_report_mean_accuracy(const vs_report* report);
double vs_report_ci_half_width(const vs_report* report);
uint32_t vs_report_episodes(const vs_report* report);
double vs_report_episode_accuracy(const vs_report* report, uint32_t index);
vs_status vs_report_to_json(const vs_report* report, int include_wall_clock, char** out);
void vs_report_free(vs_report* report);

/* ---------------- config-driven commands ---------------- */

typedef struct vs_overrides {
    int has_seed;
    uint64_t seed;
    int has_episodes;
    uint32_t episodes;
    const char* output_dir; /* NULL keeps the config value */
    int has_train_lr;
    double train_lr;
    int has_train_epochs;
    uint32_t train_epochs;
} vs_overrides;

/* Runs the configured pipeline over the novel bank and writes report.json
 * and episodes.csv under the output directory. `out` may be NULL when only
 * the files are wanted. */
vs_status vs_run_eval(const char* config_path, const vs_overrides* overrides,
                      vs_report** out);

/* Generates synthetic base/novel/validation banks plus manifest.json. */
vs_status vs_run_gen(const char* spec_path, const vs_overrides* overrides);

/* Rasterizes the configured partition of episode 0 into an SVG file;
 * requires 2-dimensional banks. */
vs_status vs_run_render2d(const char* config_path, const char* svg_path,
                          const vs_overrides* overrides);

/* Instrumented timing run; returns the timing report as a JSON string. */
vs_status vs_run_bench(const char* config_path, const vs_overrides* overrides,
                       char** timing_json);

/* ---------------- geometry kernels ---------------- */

/* centers: k rows of dim values, row-major. */
vs_status vs_assign_vd(const double* centers, uint32_t k, uint32_t dim,
                       const double* z, uint32_t* out);
vs_status vs_assign_pd(const double* centers, const double* weights, uint32_t k,
                       uint32_t dim, const double* z, uint32_t* out);
/* cluster: members rows of dim values; influence with exponent alpha. */
vs_status vs_influence(const double* cluster, uint32_t members, uint32_t dim,
                       const double* z, double alpha, double* out);

#ifdef __cplusplus
}
#endif

#endif /* VOROSHOT_H */

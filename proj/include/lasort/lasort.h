/*
 * C interface to the lasort library.
 *
 * Every function returns a lasort_status. On failure the message for the
 * calling thread is available from lasort_last_error() until the next call.
 * Handles are opaque and owned by the caller; release them with the
 * matching *_destroy function (passing NULL is allowed).
 *
 * Item indices are 0-based. Ranks and predicted positions are 1-based.
 */

#ifndef LASORT_H
#define LASORT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LASORT_BUILDING_LIBRARY)
#    define LASORT_API __declspec(dllexport)
#  else
#    define LASORT_API __declspec(dllimport)
#  endif
#else
#  define LASORT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lasort_status {
    LASORT_OK = 0,
    LASORT_ERR_INVALID_ARGUMENT = 1, /* NULL pointer, unknown tag, bad value */
    LASORT_ERR_CONTRACT = 2,         /* precondition or invariant violated */
    LASORT_ERR_IO = 3,               /* file could not be read or written */
    LASORT_ERR_INTERNAL = 4
} lasort_status;

typedef struct lasort_config lasort_config;
typedef struct lasort_results lasort_results;
typedef struct lasort_profile lasort_profile;

LASORT_API const char* lasort_version(void);
LASORT_API const char* lasort_last_error(void);
LASORT_API const char* lasort_status_string(lasort_status status);

/* ---- Experiment configuration ------------------------------------------ */

LASORT_API lasort_status lasort_config_create(lasort_config** out);
LASORT_API void lasort_config_destroy(lasort_config* config);

/* class | decay | block | good-dom | bad-dom | ranking */
LASORT_API lasort_status lasort_config_set_setting(lasort_config* config, const char* setting);
/* Comma list of algorithm tags, or "all". */
LASORT_API lasort_status lasort_config_set_algorithms(lasort_config* config, const char* algorithms);
LASORT_API lasort_status lasort_config_set_n(lasort_config* config, size_t n);
LASORT_API lasort_status lasort_config_set_parameters(lasort_config* config, const double* values,
                                                      size_t count);
LASORT_API lasort_status lasort_config_set_trials(lasort_config* config, size_t trials);
LASORT_API lasort_status lasort_config_set_seed(lasort_config* config, uint64_t seed);
/* linear | galloping */
LASORT_API lasort_status lasort_config_set_verification(lasort_config* config, const char* strategy);
LASORT_API lasort_status lasort_config_set_repetitions(lasort_config* config, unsigned repetitions);
LASORT_API lasort_status lasort_config_set_ranking_data(lasort_config* config, const char* path,
                                                        int target_year);
LASORT_API lasort_status lasort_config_set_timing(lasort_config* config, int enabled);
LASORT_API lasort_status lasort_config_set_threads(lasort_config* config, unsigned threads);

/* ---- Experiments ---------------------------------------------------------- */

LASORT_API lasort_status lasort_run_experiment(const lasort_config* config, lasort_results** out);
LASORT_API void lasort_results_destroy(lasort_results* results);
LASORT_API lasort_status lasort_results_count(const lasort_results* results, size_t* out);
/* Clean and dirty comparison counts of record `index`. */
LASORT_API lasort_status lasort_results_comparisons(const lasort_results* results, size_t index,
                                                    uint64_t* clean, uint64_t* dirty);
LASORT_API lasort_status lasort_results_write_csv(const lasort_results* results, const char* path);

/* Reads a results CSV and writes the summarized series with the n log2 n
 * reference. */
LASORT_API lasort_status lasort_plotdata(const char* in_path, const char* out_path);

typedef struct lasort_verify_summary {
    uint64_t checks;
    uint64_t failures;
} lasort_verify_summary;

/* Correctness sweep up to size n. Failures are reported through the summary
 * and lasort_last_error(); the status is LASORT_OK as long as the sweep ran. */
LASORT_API lasort_status lasort_verify(size_t n, uint64_t seed, lasort_verify_summary* out);

/* ---- Sorting -------------------------------------------------------------- */

typedef struct lasort_counts {
    uint64_t clean;
    uint64_t dirty;
    uint64_t bookkeeping_dirty;
} lasort_counts;

/*
 * Sorts n keys with the named algorithm and writes item indices in sorted
 * order to out_order (n entries). `prediction` holds predicted positions in
 * 1..n; it is required by every algorithm except dirty_clean, which uses it
 * (when given) as its dirty order and otherwise compares exactly.
 */
LASORT_API lasort_status lasort_sort(const char* algorithm, const double* keys, size_t n,
                                     const uint32_t* prediction, uint64_t seed,
                                     uint32_t* out_order, lasort_counts* counts);

/* ---- Error measures ------------------------------------------------------- */

typedef enum lasort_measure {
    LASORT_ETA_DELTA = 0,
    LASORT_ETA_LEFT = 1,
    LASORT_ETA_RIGHT = 2,
    LASORT_ETA_DIRTY = 3 /* against the prediction order */
} lasort_measure;

/* truth: a permutation of 1..n; prediction: values in 1..n. */
LASORT_API lasort_status lasort_profile_create(const uint32_t* truth, const uint32_t* prediction,
                                               size_t n, lasort_profile** out);
LASORT_API void lasort_profile_destroy(lasort_profile* profile);
LASORT_API lasort_status lasort_profile_size(const lasort_profile* profile, size_t* out);
/* Copies min(n, capacity) entries. */
LASORT_API lasort_status lasort_profile_values(const lasort_profile* profile, lasort_measure measure,
                                               uint32_t* out, size_t capacity);
LASORT_API lasort_status lasort_profile_global_error(const lasort_profile* profile, uint64_t* out);
/* Sum of log2(e + 2) over the entries of one measure. */
LASORT_API lasort_status lasort_profile_log_sum(const lasort_profile* profile, lasort_measure measure,
                                                double* out);

#ifdef __cplusplus
}
#endif

#endif

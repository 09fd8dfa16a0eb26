/* C interface to the feedback-acquisition library. All functions returning
 * afg_status leave outputs untouched on failure; afg_last_error() describes
 * the most recent failure on the calling thread. Strings returned through
 * char** outputs are malloc'd and must be released with afg_string_free. */
#ifndef AFG_H
#define AFG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum afg_status {
    AFG_OK = 0,
    AFG_ERR_CONFIG = 1,
    AFG_ERR_SCOPE = 2,
    AFG_ERR_INTERVENTION = 3,
    AFG_ERR_LOOKUP = 4,
    AFG_ERR_COMPARISON = 5,
    AFG_ERR_INSUFFICIENT_DATA = 6,
    AFG_ERR_NO_PLAN = 7,
    AFG_ERR_SELECTION = 8,
    AFG_ERR_NO_KEY = 9,
    AFG_ERR_MISUSE = 10,
    AFG_ERR_STATISTICS = 11,
    AFG_ERR_DEGENERATE_TEST = 12,
    AFG_ERR_INCONSISTENT = 13,
    AFG_ERR_REMOTE = 14,
    AFG_ERR_IO = 15,
    AFG_ERR_PARSE = 16,
    AFG_ERR_UNKNOWN = 99
} afg_status;

typedef struct afg_config afg_config;
typedef struct afg_report afg_report;
typedef struct afg_env afg_env;

const char* afg_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* afg_last_error(void);

void afg_string_free(char* text);

/* ---- configuration ---- */

afg_config* afg_config_new(void);
afg_status afg_config_load(const char* path, afg_config** out);
/* Keys mirror the config file format, e.g. "num_trials", "master_seed". */
afg_status afg_config_set(afg_config* config, const char* key, const char* value);
void afg_config_free(afg_config* config);

/* ---- experiment ---- */

afg_status afg_run_experiment(const afg_config* config, afg_report** out);
afg_status afg_report_csv(const afg_report* report, char** out);
afg_status afg_report_summary(const afg_report* report, char** out);
afg_status afg_report_write_csv(const afg_report* report, const char* path);
/* Names: active_mean, active_sd, active_max, active_n, observer_mean,
 * observer_sd, observer_max, observer_n, t, df, p. */
afg_status afg_report_stat(const afg_report* report, const char* name, double* out);
void afg_report_free(afg_report* report);

/* ---- environment stepping (demo support) ---- */

afg_status afg_env_new(const afg_config* config, uint64_t seed, afg_env** out);
afg_status afg_env_apply(afg_env* env, int factor, int enable);
afg_status afg_env_drift(afg_env* env);
/* One-line state table: "t=3 drift=1 | f 0100100 | r 010". */
afg_status afg_env_state(const afg_env* env, char** out);
afg_status afg_env_ground_truth(const afg_env* env, int result_id, int* out_factor);
int afg_env_time(const afg_env* env);
void afg_env_free(afg_env* env);

/* ---- statistics ---- */

afg_status afg_welch_t(const double* a, size_t n_a, const double* b, size_t n_b,
                       double* t, double* df, double* p);

#ifdef __cplusplus
}
#endif

#endif /* AFG_H */

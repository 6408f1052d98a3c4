/* SPDX-License-Identifier: Apache-2.0 */
#ifndef NSMLAB_NSMLAB_H
#define NSMLAB_NSMLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32) && defined(NSMLAB_BUILDING)
#define NSM_API __declspec(dllexport)
#elif defined(_WIN32)
#define NSM_API __declspec(dllimport)
#else
#define NSM_API __attribute__((visibility("default")))
#endif

typedef enum nsm_status {
    NSM_OK = 0,
    NSM_ERR_INVALID_ARGUMENT = 1,
    NSM_ERR_CONFIG = 2,
    NSM_ERR_IO = 3,
    NSM_ERR_SOLVER = 4,
    NSM_ERR_CFL = 5,
    NSM_ERR_BLOWUP = 6,
    NSM_ERR_HORIZON = 7,
    NSM_ERR_BELOW_THRESHOLD = 8,
    NSM_ERR_RESOLUTION = 9,
    NSM_ERR_STUDY_FAILED = 10,
    NSM_ERR_INTERNAL = 11
} nsm_status;

typedef struct nsm_config nsm_config;
typedef struct nsm_result nsm_result;
typedef struct nsm_sim nsm_sim;

NSM_API const char* nsm_version(void);
NSM_API const char* nsm_status_name(nsm_status s);
/* Message of the last failing call on this thread; never NULL. */
NSM_API const char* nsm_last_error(void);

/* Defaults for every field. */
NSM_API nsm_status nsm_config_new(nsm_config** out);
NSM_API nsm_status nsm_config_from_file(const char* path, nsm_config** out);
NSM_API nsm_status nsm_config_from_string(const char* json, nsm_config** out);
NSM_API void nsm_config_free(nsm_config* cfg);
NSM_API nsm_status nsm_config_set_mode(nsm_config* cfg, const char* mode);
NSM_API nsm_status nsm_config_set_seed(nsm_config* cfg, uint64_t seed);
NSM_API nsm_status nsm_config_set_out(nsm_config* cfg, const char* dir);
NSM_API nsm_status nsm_config_set_quiet(nsm_config* cfg, int quiet);
/* Merge a JSON object of overrides (same schema) into cfg. */
NSM_API nsm_status nsm_config_merge(nsm_config* cfg, const char* json);
/* Pointer valid until the next call on cfg or its release. */
NSM_API const char* nsm_config_json(nsm_config* cfg);
NSM_API const char* nsm_config_hash(nsm_config* cfg);

/* Runs the configured mode. On a study failure *out is still set and the
   failure code is returned. */
NSM_API nsm_status nsm_execute(const nsm_config* cfg, nsm_result** out);
NSM_API void nsm_result_free(nsm_result* r);
NSM_API int nsm_result_passed(const nsm_result* r);
NSM_API const char* nsm_result_summary_json(const nsm_result* r);
NSM_API const char* nsm_result_status(const nsm_result* r);
NSM_API const char* nsm_result_reason(const nsm_result* r);
NSM_API const char* nsm_result_out_dir(const nsm_result* r);

NSM_API nsm_status nsm_dispersion_root(int k, double* re_c, double* im_c);
NSM_API nsm_status nsm_gevrey_multiplier(double xi, double radius, double s, double* log_value);
NSM_API nsm_status nsm_oscillator_ground(int k, int ny, double* re_l, double* im_l, double* residual);

/* Time stepper on the configured grid, data and mode (eps, hydrostatic, linear). */
NSM_API nsm_status nsm_sim_create(const nsm_config* cfg, nsm_sim** out);
NSM_API void nsm_sim_free(nsm_sim* sim);
NSM_API nsm_status nsm_sim_advance(nsm_sim* sim, long steps);
NSM_API double nsm_sim_time(const nsm_sim* sim);
/* which: 0 = u, 1 = h, 2 = v; radius delta0/2 and index s from the config. */
NSM_API nsm_status nsm_sim_norm(const nsm_sim* sim, int which, double* out);

#ifdef __cplusplus
}
#endif

#endif

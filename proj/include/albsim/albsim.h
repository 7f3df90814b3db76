/* albsim — multi-agent adaptive load-balancing simulator.
 *
 * C interface to the simulator core. Handles are opaque; every entry point
 * returns a status code and leaves a human-readable message retrievable via
 * albsim_last_error() on failure. Strings returned through char** out
 * parameters are heap-allocated and must be released with albsim_free().
 */
#ifndef ALBSIM_H
#define ALBSIM_H

#include <stdint.h>

#if defined(_WIN32)
#define ALBSIM_API __declspec(dllexport)
#else
#define ALBSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum albsim_status {
  ALBSIM_OK = 0,
  ALBSIM_ERR_VALIDATION = 1, /* bad configuration or arguments */
  ALBSIM_ERR_RUNTIME = 2     /* failure while running */
} albsim_status;

typedef struct albsim_config albsim_config;

/* Loads and validates a scenario configuration file (JSON, see README). */
ALBSIM_API albsim_status albsim_config_open(const char* path,
                                            albsim_config** out);

/* Parses a configuration from a string; empty input yields the defaults. */
ALBSIM_API albsim_status albsim_config_parse(const char* text,
                                             albsim_config** out);

ALBSIM_API void albsim_config_close(albsim_config* config);

/* Seed recorded in the configuration (used when the caller has no override). */
ALBSIM_API uint64_t albsim_config_seed(const albsim_config* config);

/* Runs one scenario and returns the CSV report. */
ALBSIM_API albsim_status albsim_run_csv(const albsim_config* config,
                                        uint64_t seed, char** csv_out);

/* Runs a named preset over `seeds` seeds (0 = default). threads = 0 picks
 * the hardware concurrency. */
ALBSIM_API albsim_status albsim_preset_csv(const char* name, uint32_t seeds,
                                           uint32_t threads, char** csv_out);

/* Runs a parameter sweep over the given base configuration. `axes` is a
 * semicolon-separated list such as "w=0.1,0.3,0.5;n=2..10". */
ALBSIM_API albsim_status albsim_sweep_csv(const albsim_config* config,
                                          const char* axes, uint32_t seeds,
                                          uint32_t threads, char** csv_out);

/* Newline-separated "name\tdescription" lines for every preset. */
ALBSIM_API albsim_status albsim_preset_names(char** out);

ALBSIM_API void albsim_free(char* text);

/* Message for the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next albsim_* call on the same thread. */
ALBSIM_API const char* albsim_last_error(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ALBSIM_H */

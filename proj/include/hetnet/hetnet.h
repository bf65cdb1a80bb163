/* C interface to the hetnet simulator.
 *
 * Every function returns a hetnet_status. On failure the message is kept in
 * thread-local storage and can be read with hetnet_last_error() until the
 * next call on the same thread. Handles are not shared between threads by
 * the library; distinct handles may be used concurrently. */
#ifndef HETNET_H
#define HETNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HETNET_BUILDING_LIBRARY)
#    define HETNET_API __declspec(dllexport)
#  else
#    define HETNET_API __declspec(dllimport)
#  endif
#else
#  define HETNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hetnet_status {
  HETNET_OK = 0,
  HETNET_ERR_INTERNAL = 1,
  HETNET_ERR_SCENARIO = 2,
  HETNET_ERR_INFEASIBLE = 3,
  HETNET_ERR_ARGUMENT = 4,
  HETNET_ERR_INVALID_DECISION = 5,
  HETNET_ERR_IO = 6
} hetnet_status;

typedef struct hetnet_scenario hetnet_scenario;
typedef struct hetnet_run hetnet_run;
typedef struct hetnet_aggregate hetnet_aggregate;

typedef struct hetnet_slot_metrics {
  int64_t slot;
  double overall_bps;
  double effective_bps;
  int32_t satisfied;
  double decision_us;
} hetnet_slot_metrics;

HETNET_API const char* hetnet_last_error(void);
HETNET_API const char* hetnet_version(void);

/* Scenarios. */
HETNET_API hetnet_status hetnet_scenario_default(hetnet_scenario** out);
HETNET_API hetnet_status hetnet_scenario_parse(const char* text, hetnet_scenario** out);
HETNET_API hetnet_status hetnet_scenario_load(const char* path, hetnet_scenario** out);
HETNET_API hetnet_status hetnet_scenario_clone(const hetnet_scenario* s, hetnet_scenario** out);
/* Sets one key and re-validates the whole scenario; on failure the scenario
 * is left unchanged. */
HETNET_API hetnet_status hetnet_scenario_set(hetnet_scenario* s, const char* key, const char* value);
/* Copies the value of `key` into buf (NUL-terminated, truncated to cap).
 * *needed, if non-null, receives the full length plus one. */
HETNET_API hetnet_status hetnet_scenario_get(const hetnet_scenario* s, const char* key, char* buf,
                                             size_t cap, size_t* needed);
HETNET_API hetnet_status hetnet_scenario_hash(const hetnet_scenario* s, uint64_t* out);
HETNET_API void hetnet_scenario_free(hetnet_scenario* s);

/* Runs. `algorithm` is one of omsc, omsc-sinr, lcuas, lcuas-sc, sdmab,
 * sdmab-sc. */
HETNET_API hetnet_status hetnet_run_create(const hetnet_scenario* s, const char* algorithm,
                                           uint64_t seed, hetnet_run** out);
HETNET_API hetnet_status hetnet_run_step(hetnet_run* run, hetnet_slot_metrics* out);
HETNET_API hetnet_status hetnet_run_steps(hetnet_run* run, int32_t count);
HETNET_API hetnet_status hetnet_run_slot_count(const hetnet_run* run, int64_t* out);
/* Per-slot CSV. decision_us is written only when `timing` is non-zero. */
HETNET_API hetnet_status hetnet_run_write_csv(const hetnet_run* run, const char* path, int timing);
HETNET_API void hetnet_run_free(hetnet_run* run);

/* Aggregate CSV across seeds. Each add() contributes one row built from
 * runs that share scenario and algorithm. */
HETNET_API hetnet_status hetnet_aggregate_create(hetnet_aggregate** out);
HETNET_API hetnet_status hetnet_aggregate_add(hetnet_aggregate* agg, const char* sweep_label,
                                              const hetnet_run* const* runs, size_t count,
                                              int timing);
HETNET_API hetnet_status hetnet_aggregate_write(const hetnet_aggregate* agg, const char* path);
HETNET_API void hetnet_aggregate_free(hetnet_aggregate* agg);

/* Long-format comparison table over every seed_*.csv below `dirs`. Writes
 * to `out_path`, or to stdout when it is null. Refuses mixed scenarios. */
HETNET_API hetnet_status hetnet_summarize(const char* const* dirs, size_t count,
                                          const char* out_path);

#ifdef __cplusplus
}
#endif

#endif

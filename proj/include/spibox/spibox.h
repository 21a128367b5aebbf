/* C interface to the spibox simulator.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a spibox_status;
 * on failure spibox_last_error() describes the problem for the calling
 * thread until its next call into the library. */
#ifndef SPIBOX_SPIBOX_H
#define SPIBOX_SPIBOX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SPIBOX_API __declspec(dllexport)
#else
#define SPIBOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spibox_status {
  SPIBOX_OK = 0,
  SPIBOX_ERR_INVALID_ARGUMENT = 1,
  SPIBOX_ERR_CONTRACT = 2,
  SPIBOX_ERR_PARSE = 3,
  SPIBOX_ERR_IO = 4,
  SPIBOX_ERR_GENERATION_STALL = 5,
  SPIBOX_ERR_UNDEFINED_SPREAD = 6,
  SPIBOX_ERR_EMPTY_INPUT = 7,
  SPIBOX_ERR_INTERNAL = 99
} spibox_status;

typedef enum spibox_mode { SPIBOX_MODE_RANDOM = 0, SPIBOX_MODE_SPI = 1 } spibox_mode;

typedef enum spibox_outcome {
  SPIBOX_OUTCOME_SUCCESS = 0,
  SPIBOX_OUTCOME_COLLISION = 1,
  SPIBOX_OUTCOME_TIMEOUT = 2
} spibox_outcome;

typedef struct spibox_map spibox_map;
typedef struct spibox_scenario spibox_scenario;
typedef struct spibox_log spibox_log;

SPIBOX_API const char* spibox_version(void);
SPIBOX_API const char* spibox_last_error(void);
SPIBOX_API const char* spibox_status_name(spibox_status status);

/* ---- maps ---- */
SPIBOX_API spibox_status spibox_map_build(size_t n_pdls, double cap, double margin, uint64_t seed, spibox_map** out);
SPIBOX_API spibox_status spibox_map_from_pdls(const double* values, size_t n_pdls, spibox_map** out);
SPIBOX_API spibox_status spibox_map_load(const char* path, spibox_map** out);
SPIBOX_API spibox_status spibox_map_save(const spibox_map* map, const char* path);
SPIBOX_API size_t spibox_map_size(const spibox_map* map);
SPIBOX_API spibox_status spibox_map_pdl(const spibox_map* map, size_t index, double out[6]);
/* Counts entries failing PDL validation and reports whether the map is made of
 * cyclic quads. */
SPIBOX_API spibox_status spibox_map_check(const spibox_map* map, size_t* n_invalid, int* quad_structure);
SPIBOX_API void spibox_map_free(spibox_map* map);

/* Classifies a candidate PDL of any length: SPIBOX_OK when valid, otherwise
 * SPIBOX_ERR_INVALID_ARGUMENT with the reason in spibox_last_error(). */
SPIBOX_API spibox_status spibox_pdl_validate(const double* values, size_t n);

/* ---- scenarios ---- */
SPIBOX_API spibox_status spibox_scenario_default(spibox_scenario** out);
SPIBOX_API spibox_status spibox_scenario_load(const char* path, spibox_scenario** out);
SPIBOX_API void spibox_scenario_free(spibox_scenario* scenario);

/* ---- fitness ---- */
typedef struct spibox_fitness_params {
  uint32_t n_agents;
  uint64_t n_sims;
  uint32_t n_bins; /* 0: one bin per agent */
  double speed_factor;
  uint64_t seed;
} spibox_fitness_params;

typedef struct spibox_fitness_report {
  double origin_avoidance;
  double angular_spread;
  double raw_cv;
  uint64_t n_sims;
  uint32_t n_bins;
} spibox_fitness_report;

SPIBOX_API void spibox_fitness_params_default(spibox_fitness_params* params);

/* map == NULL selects uniform random exploration. samples_csv, when not NULL,
 * receives one "x,y" line per simulation. */
SPIBOX_API spibox_status spibox_fitness(const spibox_map* map, const spibox_fitness_params* params,
                                        const char* samples_csv, spibox_fitness_report* out);

SPIBOX_API spibox_status spibox_sweep_pdl(const size_t* counts, size_t n_counts, double cap, double margin,
                                          const spibox_fitness_params* params, const char* out_csv);
SPIBOX_API spibox_status spibox_sweep_cap_margin(const double* caps, size_t n_caps, const double* margins,
                                                 size_t n_margins, size_t n_pdls,
                                                 const spibox_fitness_params* per_cell, const char* out_csv);

/* ---- training ---- */
typedef struct spibox_train_config {
  uint32_t n_agents;
  uint32_t episodes;
  double speed_factor;
  spibox_mode mode;
  size_t n_pdls;
  double cap;
  double margin;
  uint64_t map_seed;
  double alpha;
  double gamma;
  double epsilon_start;
  double epsilon_end;
  double decay_fraction;
  int32_t angle_bins;
  int32_t synchronized_exploration;
  double w1, w2, w3, w4;
  uint64_t seed;
} spibox_train_config;

typedef struct spibox_episode {
  uint64_t episode_index;
  spibox_outcome outcome;
  int32_t steps;
  double total_reward;
  double epsilon;
} spibox_episode;

SPIBOX_API void spibox_train_config_default(spibox_train_config* config);

/* In SPI mode a NULL map means "build one from the config's map fields". */
SPIBOX_API spibox_status spibox_train(const spibox_scenario* scenario, const spibox_map* map,
                                      const spibox_train_config* config, spibox_log** out);
SPIBOX_API spibox_status spibox_log_load(const char* path, spibox_log** out);
SPIBOX_API spibox_status spibox_log_save(const spibox_log* log, const char* path);
SPIBOX_API size_t spibox_log_size(const spibox_log* log);
SPIBOX_API spibox_status spibox_log_episode(const spibox_log* log, size_t index, spibox_episode* out);
SPIBOX_API void spibox_log_free(spibox_log* log);

/* ---- comparison and plots ---- */
typedef struct spibox_mode_summary {
  double final_success_rate;
  double final_mean_reward;
  double first_window_success_rate;
  double success_steps_second_half_mean;
  double failure_steps_second_half_mean;
} spibox_mode_summary;

typedef struct spibox_summary {
  spibox_mode_summary spi;
  spibox_mode_summary random;
} spibox_summary;

/* Pools the given logs per mode; out_csv (optional) receives the long-format
 * summary table. */
SPIBOX_API spibox_status spibox_compare(const spibox_log* const* spi_logs, size_t n_spi,
                                        const spibox_log* const* random_logs, size_t n_random, uint32_t window,
                                        uint32_t bin_width, const char* out_csv, spibox_summary* out);

/* Renders SVG charts for the given CSV files into out_dir. */
SPIBOX_API spibox_status spibox_plot(const char* const* csv_paths, size_t n_paths, const char* out_dir,
                                     size_t* n_written);

/* Writes a JSON provenance record. config_keys/config_values are parallel
 * arrays of n_config strings. */
SPIBOX_API spibox_status spibox_write_manifest(const char* path, const char* verb, const char* const* config_keys,
                                               const char* const* config_values, size_t n_config, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* SPIBOX_SPIBOX_H */

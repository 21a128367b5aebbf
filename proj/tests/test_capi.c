/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "spibox/spibox.h"

static int failures = 0;

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: CHECK(%s) failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const char* tmp_path(const char* name) {
  static char buf[512];
  const char* dir = getenv("TMPDIR");
  snprintf(buf, sizeof buf, "%s/spibox_capi_%s", dir ? dir : "/tmp", name);
  return buf;
}

static void test_errors(void) {
  spibox_map* map = NULL;
  CHECK(spibox_map_build(4000, 0.8, 0.5, 1, &map) == SPIBOX_ERR_INVALID_ARGUMENT);
  CHECK(map == NULL);
  CHECK(strstr(spibox_last_error(), "cap") != NULL);
  CHECK(spibox_map_build(4000, 0.1, 0.3, 1, NULL) == SPIBOX_ERR_INVALID_ARGUMENT);
  CHECK(spibox_map_load("/nonexistent/map.txt", &map) == SPIBOX_ERR_IO);
  CHECK(strcmp(spibox_status_name(SPIBOX_ERR_PARSE), "parse_error") == 0);
  CHECK(strcmp(spibox_status_name(SPIBOX_OK), "ok") == 0);
  CHECK(spibox_map_size(NULL) == 0);
  spibox_map_free(NULL);
  spibox_log_free(NULL);
  spibox_scenario_free(NULL);
}

static void test_pdls(void) {
  const double sixth[6] = {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  const double seventh[6] = {1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7};
  CHECK(spibox_pdl_validate(sixth, 6) == SPIBOX_OK);
  CHECK(spibox_pdl_validate(seventh, 6) == SPIBOX_ERR_INVALID_ARGUMENT);
  CHECK(spibox_pdl_validate(sixth, 4) == SPIBOX_ERR_INVALID_ARGUMENT);

  spibox_map* map = NULL;
  CHECK(spibox_map_build(400, 0.1, 0.3, 7, &map) == SPIBOX_OK);
  CHECK(spibox_map_size(map) == 400);
  size_t invalid = 99;
  int quads = 0;
  CHECK(spibox_map_check(map, &invalid, &quads) == SPIBOX_OK);
  CHECK(invalid == 0);
  CHECK(quads == 1);
  double p[6];
  CHECK(spibox_map_pdl(map, 0, p) == SPIBOX_OK);
  CHECK(p[1] == p[2] && p[4] == p[5]);
  CHECK(spibox_map_pdl(map, 400, p) == SPIBOX_ERR_INVALID_ARGUMENT);

  const char* path = tmp_path("map.txt");
  CHECK(spibox_map_save(map, path) == SPIBOX_OK);
  spibox_map* back = NULL;
  CHECK(spibox_map_load(path, &back) == SPIBOX_OK);
  CHECK(spibox_map_size(back) == 400);
  double q[6];
  CHECK(spibox_map_pdl(back, 123, q) == SPIBOX_OK);
  CHECK(spibox_map_pdl(map, 123, p) == SPIBOX_OK);
  CHECK(memcmp(p, q, sizeof p) == 0);
  spibox_map_free(back);
  spibox_map_free(map);

  spibox_map* hand = NULL;
  CHECK(spibox_map_from_pdls(seventh, 1, &hand) == SPIBOX_ERR_INVALID_ARGUMENT);
  CHECK(spibox_map_from_pdls(sixth, 1, &hand) == SPIBOX_OK);
  CHECK(spibox_map_size(hand) == 1);
  spibox_map_free(hand);
}

static void test_fitness(void) {
  spibox_fitness_params params;
  spibox_fitness_params_default(&params);
  CHECK(params.n_agents == 15);
  CHECK(params.n_sims == 100000);
  params.n_sims = 20000;
  spibox_fitness_report r1, r2;
  CHECK(spibox_fitness(NULL, &params, NULL, &r1) == SPIBOX_OK);
  CHECK(spibox_fitness(NULL, &params, NULL, &r2) == SPIBOX_OK);
  CHECK(r1.origin_avoidance == r2.origin_avoidance);
  CHECK(r1.origin_avoidance > 0.2 && r1.origin_avoidance < 0.3);
  CHECK(r1.n_bins == 15);

  params.speed_factor = 2.0;
  CHECK(spibox_fitness(NULL, &params, NULL, &r1) == SPIBOX_ERR_INVALID_ARGUMENT);

  const double stuck[6] = {0.5, 0, 0, 0.5, 0, 0};
  spibox_map* map = NULL;
  CHECK(spibox_map_from_pdls(stuck, 1, &map) == SPIBOX_OK);
  spibox_fitness_params_default(&params);
  params.n_agents = 2;
  params.n_sims = 1;
  int saw_undefined = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    params.seed = seed;
    if (spibox_fitness(map, &params, NULL, &r1) == SPIBOX_ERR_UNDEFINED_SPREAD) saw_undefined = 1;
  }
  CHECK(saw_undefined);
  spibox_map_free(map);
}

static void test_training(void) {
  spibox_scenario* scenario = NULL;
  CHECK(spibox_scenario_default(&scenario) == SPIBOX_OK);
  spibox_train_config cfg;
  spibox_train_config_default(&cfg);
  CHECK(cfg.n_agents == 15);
  CHECK(cfg.episodes == 1000);
  CHECK(fabs(cfg.speed_factor - 1.0 / 3.0) < 1e-15);
  cfg.episodes = 8;
  cfg.n_pdls = 400;

  spibox_log* spi = NULL;
  spibox_log* random = NULL;
  CHECK(spibox_train(scenario, NULL, &cfg, &spi) == SPIBOX_OK);
  cfg.mode = SPIBOX_MODE_RANDOM;
  CHECK(spibox_train(scenario, NULL, &cfg, &random) == SPIBOX_OK);
  CHECK(spibox_log_size(spi) == 8);
  spibox_episode ep;
  CHECK(spibox_log_episode(spi, 0, &ep) == SPIBOX_OK);
  CHECK(ep.episode_index == 0);
  CHECK(ep.epsilon == 1.0);
  CHECK(ep.steps >= 1 && ep.steps <= 300);
  CHECK(spibox_log_episode(spi, 8, &ep) == SPIBOX_ERR_INVALID_ARGUMENT);

  char path[512];
  snprintf(path, sizeof path, "%s", tmp_path("log.csv"));
  CHECK(spibox_log_save(spi, path) == SPIBOX_OK);
  spibox_log* back = NULL;
  CHECK(spibox_log_load(path, &back) == SPIBOX_OK);
  CHECK(spibox_log_size(back) == 8);

  spibox_summary summary;
  const spibox_log* spi_logs[1] = {back};
  const spibox_log* random_logs[1] = {random};
  CHECK(spibox_compare(spi_logs, 1, random_logs, 1, 4, 10, NULL, &summary) == SPIBOX_OK);
  CHECK(summary.spi.final_success_rate >= 0.0 && summary.spi.final_success_rate <= 1.0);
  CHECK(spibox_compare(random_logs, 1, spi_logs, 1, 4, 10, NULL, &summary) == SPIBOX_ERR_INVALID_ARGUMENT);

  cfg.alpha = 5.0;
  spibox_log* bad = NULL;
  CHECK(spibox_train(scenario, NULL, &cfg, &bad) == SPIBOX_ERR_INVALID_ARGUMENT);
  CHECK(bad == NULL);

  const char* csvs[1] = {path};
  size_t written = 0;
  CHECK(spibox_plot(csvs, 1, tmp_path("plots"), &written) == SPIBOX_OK);
  CHECK(written >= 3);

  const char* keys[1] = {"episodes"};
  const char* values[1] = {"8"};
  CHECK(spibox_write_manifest(tmp_path("manifest.json"), "train", keys, values, 1, 3) == SPIBOX_OK);

  spibox_log_free(back);
  spibox_log_free(spi);
  spibox_log_free(random);
  spibox_scenario_free(scenario);

  spibox_scenario* missing = NULL;
  CHECK(spibox_scenario_load("/nonexistent/a.scn", &missing) == SPIBOX_ERR_IO);
}

int main(void) {
  CHECK(strlen(spibox_version()) > 0);
  test_errors();
  test_pdls();
  test_fitness();
  test_training();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}

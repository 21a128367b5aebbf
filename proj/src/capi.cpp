#include "spibox/spibox.h"

#include <memory>
#include <string>
#include <vector>

#include "spibox/error.hpp"
#include "spibox/harness.hpp"
#include "spibox/plot.hpp"

struct spibox_map {
  std::shared_ptr<const spibox::SpiMap> map;
};

struct spibox_scenario {
  spibox::Scenario scenario;
};

struct spibox_log {
  spibox::TrainingLog log;
};

namespace {

using namespace spibox;

thread_local std::string g_last_error;

spibox_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return SPIBOX_ERR_INVALID_ARGUMENT;
    case ErrorKind::contract_violation: return SPIBOX_ERR_CONTRACT;
    case ErrorKind::parse: return SPIBOX_ERR_PARSE;
    case ErrorKind::io: return SPIBOX_ERR_IO;
    case ErrorKind::generation_stall: return SPIBOX_ERR_GENERATION_STALL;
    case ErrorKind::undefined_spread: return SPIBOX_ERR_UNDEFINED_SPREAD;
    case ErrorKind::empty_input: return SPIBOX_ERR_EMPTY_INPUT;
  }
  return SPIBOX_ERR_INTERNAL;
}

template <class F>
spibox_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SPIBOX_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return SPIBOX_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPIBOX_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SPIBOX_ERR_INTERNAL;
  }
}

template <class T>
void not_null(const T* p, const char* what) {
  if (p == nullptr) fail(ErrorKind::invalid_argument, std::string(what) + " must not be NULL");
}

BmdParams bmd_params(const spibox_fitness_params* p) {
  not_null(p, "params");
  return {p->n_agents, static_cast<std::size_t>(p->n_sims), p->speed_factor, p->seed};
}

TrainConfig train_config(const spibox_train_config& c) {
  TrainConfig t;
  t.n_agents = c.n_agents;
  t.episodes = c.episodes;
  t.speed_factor = c.speed_factor;
  t.mode = c.mode == SPIBOX_MODE_SPI ? ExplorationMode::spi : ExplorationMode::random;
  t.map = {c.n_pdls, c.cap, c.margin, c.map_seed};
  t.alpha = c.alpha;
  t.gamma = c.gamma;
  t.epsilon_start = c.epsilon_start;
  t.epsilon_end = c.epsilon_end;
  t.decay_fraction = c.decay_fraction;
  t.angle_bins = c.angle_bins;
  t.synchronized_exploration = c.synchronized_exploration != 0;
  t.weights = {c.w1, c.w2, c.w3, c.w4};
  t.seed = c.seed;
  return t;
}

spibox_mode_summary mode_summary(const ModeSummary& m) {
  return {m.final_success, m.final_reward, m.window_success.empty() ? 0.0 : m.window_success.front(),
          m.success_second_half.mean, m.failure_second_half.mean};
}

std::vector<TrainingLog> gather(const spibox_log* const* logs, std::size_t n) {
  if (n > 0) not_null(logs, "log array");
  std::vector<TrainingLog> out;
  for (std::size_t i = 0; i < n; ++i) {
    not_null(logs[i], "log");
    out.push_back(logs[i]->log);
  }
  return out;
}

}  // namespace

extern "C" {

const char* spibox_version(void) { return library_version().data(); }

const char* spibox_last_error(void) { return g_last_error.c_str(); }

const char* spibox_status_name(spibox_status status) {
  switch (status) {
    case SPIBOX_OK: return "ok";
    case SPIBOX_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SPIBOX_ERR_CONTRACT: return "contract_violation";
    case SPIBOX_ERR_PARSE: return "parse_error";
    case SPIBOX_ERR_IO: return "io_error";
    case SPIBOX_ERR_GENERATION_STALL: return "generation_stall";
    case SPIBOX_ERR_UNDEFINED_SPREAD: return "undefined_spread";
    case SPIBOX_ERR_EMPTY_INPUT: return "empty_input";
    case SPIBOX_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

spibox_status spibox_map_build(size_t n_pdls, double cap, double margin, uint64_t seed, spibox_map** out) {
  return guarded([&] {
    not_null(out, "out");
    *out = nullptr;
    auto map = std::make_shared<const SpiMap>(SpiMap::build({n_pdls, cap, margin, seed}));
    *out = new spibox_map{std::move(map)};
  });
}

spibox_status spibox_map_from_pdls(const double* values, size_t n_pdls, spibox_map** out) {
  return guarded([&] {
    not_null(out, "out");
    not_null(values, "values");
    *out = nullptr;
    std::vector<Pdl> pdls(n_pdls);
    for (std::size_t i = 0; i < n_pdls; ++i) {
      for (std::size_t j = 0; j < 6; ++j) pdls[i][j] = values[i * 6 + j];
    }
    *out = new spibox_map{std::make_shared<const SpiMap>(SpiMap::from_pdls(std::move(pdls)))};
  });
}

spibox_status spibox_map_load(const char* path, spibox_map** out) {
  return guarded([&] {
    not_null(out, "out");
    not_null(path, "path");
    *out = nullptr;
    *out = new spibox_map{std::make_shared<const SpiMap>(SpiMap::load(path))};
  });
}

spibox_status spibox_map_save(const spibox_map* map, const char* path) {
  return guarded([&] {
    not_null(map, "map");
    not_null(path, "path");
    map->map->save(path);
  });
}

size_t spibox_map_size(const spibox_map* map) { return map ? map->map->size() : 0; }

spibox_status spibox_map_pdl(const spibox_map* map, size_t index, double out[6]) {
  return guarded([&] {
    not_null(map, "map");
    not_null(out, "out");
    const Pdl& p = (*map->map)[index];
    for (std::size_t j = 0; j < 6; ++j) out[j] = p[j];
  });
}

spibox_status spibox_map_check(const spibox_map* map, size_t* n_invalid, int* quad_structure) {
  return guarded([&] {
    not_null(map, "map");
    std::size_t bad = 0;
    for (const Pdl& p : map->map->pdls()) bad += validate_pdl(p).has_value();
    if (n_invalid) *n_invalid = bad;
    if (quad_structure) *quad_structure = map->map->has_quad_structure() ? 1 : 0;
  });
}

void spibox_map_free(spibox_map* map) { delete map; }

spibox_status spibox_pdl_validate(const double* values, size_t n) {
  return guarded([&] {
    if (n > 0) not_null(values, "values");
    if (auto why = validate_pdl(std::span<const double>(values, n))) fail(ErrorKind::invalid_argument, *why);
  });
}

spibox_status spibox_scenario_default(spibox_scenario** out) {
  return guarded([&] {
    not_null(out, "out");
    *out = new spibox_scenario{Scenario::standard()};
  });
}

spibox_status spibox_scenario_load(const char* path, spibox_scenario** out) {
  return guarded([&] {
    not_null(out, "out");
    not_null(path, "path");
    *out = nullptr;
    *out = new spibox_scenario{load_scenario(path)};
  });
}

void spibox_scenario_free(spibox_scenario* scenario) { delete scenario; }

void spibox_fitness_params_default(spibox_fitness_params* params) {
  if (params) *params = {15, 100000, 0, 1.0, 0};
}

spibox_status spibox_fitness(const spibox_map* map, const spibox_fitness_params* params, const char* samples_csv,
                             spibox_fitness_report* out) {
  return guarded([&] {
    not_null(out, "out");
    const BmdParams p = bmd_params(params);
    const ExplorationPolicy policy = map ? ExplorationPolicy::shared(map->map) : ExplorationPolicy::uniform();
    const auto samples = simulate_bmd(policy, p);
    if (samples_csv) write_csv(samples_csv, samples_table(samples));
    const FitnessReport r = score_samples(samples, p, params->n_bins);
    *out = {r.origin_avoidance, r.angular_spread, r.raw_cv, r.n_sims, static_cast<uint32_t>(r.n_bins)};
  });
}

spibox_status spibox_sweep_pdl(const size_t* counts, size_t n_counts, double cap, double margin,
                               const spibox_fitness_params* params, const char* out_csv) {
  return guarded([&] {
    not_null(counts, "counts");
    not_null(out_csv, "out_csv");
    const auto rows = sweep_pdl_count(std::span<const std::size_t>(counts, n_counts), cap, margin,
                                      bmd_params(params), params->n_bins);
    write_csv(out_csv, sweep_pdl_table(rows));
  });
}

spibox_status spibox_sweep_cap_margin(const double* caps, size_t n_caps, const double* margins, size_t n_margins,
                                      size_t n_pdls, const spibox_fitness_params* per_cell, const char* out_csv) {
  return guarded([&] {
    not_null(caps, "caps");
    not_null(margins, "margins");
    not_null(out_csv, "out_csv");
    const auto cells = sweep_cap_margin(std::span<const double>(caps, n_caps),
                                        std::span<const double>(margins, n_margins), n_pdls,
                                        bmd_params(per_cell), per_cell->n_bins);
    write_csv(out_csv, cap_margin_table(cells));
  });
}

void spibox_train_config_default(spibox_train_config* config) {
  if (!config) return;
  const TrainConfig t;
  *config = {static_cast<uint32_t>(t.n_agents),
             static_cast<uint32_t>(t.episodes),
             t.speed_factor,
             t.mode == ExplorationMode::spi ? SPIBOX_MODE_SPI : SPIBOX_MODE_RANDOM,
             t.map.n_pdls,
             t.map.cap,
             t.map.margin,
             t.map.seed,
             t.alpha,
             t.gamma,
             t.epsilon_start,
             t.epsilon_end,
             t.decay_fraction,
             t.angle_bins,
             t.synchronized_exploration ? 1 : 0,
             t.weights.distance,
             t.weights.rotation,
             t.weights.collision,
             t.weights.goal,
             t.seed};
}

spibox_status spibox_train(const spibox_scenario* scenario, const spibox_map* map, const spibox_train_config* config,
                           spibox_log** out) {
  return guarded([&] {
    not_null(scenario, "scenario");
    not_null(config, "config");
    not_null(out, "out");
    *out = nullptr;
    TrainingResult r = train(train_config(*config), scenario->scenario, map ? map->map : nullptr);
    *out = new spibox_log{std::move(r.log)};
  });
}

spibox_status spibox_log_load(const char* path, spibox_log** out) {
  return guarded([&] {
    not_null(path, "path");
    not_null(out, "out");
    *out = nullptr;
    *out = new spibox_log{load_log(path)};
  });
}

spibox_status spibox_log_save(const spibox_log* log, const char* path) {
  return guarded([&] {
    not_null(log, "log");
    not_null(path, "path");
    save_log(path, log->log);
  });
}

size_t spibox_log_size(const spibox_log* log) { return log ? log->log.episodes.size() : 0; }

spibox_status spibox_log_episode(const spibox_log* log, size_t index, spibox_episode* out) {
  return guarded([&] {
    not_null(log, "log");
    not_null(out, "out");
    const EpisodeRecord& e = log->log.episodes.at(index);
    const spibox_outcome o = e.outcome == Outcome::success     ? SPIBOX_OUTCOME_SUCCESS
                             : e.outcome == Outcome::collision ? SPIBOX_OUTCOME_COLLISION
                                                               : SPIBOX_OUTCOME_TIMEOUT;
    *out = {e.episode_index, o, e.steps, e.total_reward, e.epsilon};
  });
}

void spibox_log_free(spibox_log* log) { delete log; }

spibox_status spibox_compare(const spibox_log* const* spi_logs, size_t n_spi, const spibox_log* const* random_logs,
                             size_t n_random, uint32_t window, uint32_t bin_width, const char* out_csv,
                             spibox_summary* out) {
  return guarded([&] {
    const auto spi = gather(spi_logs, n_spi);
    const auto random = gather(random_logs, n_random);
    const SummaryStats s = compare_modes(spi, random, window, bin_width);
    if (out_csv) write_csv(out_csv, summary_table(s));
    if (out) *out = {mode_summary(s.spi), mode_summary(s.random)};
  });
}

spibox_status spibox_plot(const char* const* csv_paths, size_t n_paths, const char* out_dir, size_t* n_written) {
  return guarded([&] {
    not_null(out_dir, "out_dir");
    if (n_paths > 0) not_null(csv_paths, "csv_paths");
    std::vector<std::filesystem::path> inputs;
    for (std::size_t i = 0; i < n_paths; ++i) {
      not_null(csv_paths[i], "csv path");
      inputs.emplace_back(csv_paths[i]);
    }
    const auto written = emit_plots(inputs, out_dir);
    if (n_written) *n_written = written.size();
  });
}

spibox_status spibox_write_manifest(const char* path, const char* verb, const char* const* config_keys,
                                    const char* const* config_values, size_t n_config, uint64_t seed) {
  return guarded([&] {
    not_null(path, "path");
    not_null(verb, "verb");
    std::map<std::string, std::string> config;
    for (std::size_t i = 0; i < n_config; ++i) {
      not_null(config_keys[i], "config key");
      not_null(config_values[i], "config value");
      config[config_keys[i]] = config_values[i];
    }
    write_manifest(path, verb, config, seed);
  });
}

}  // extern "C"

// Command-line front end. Talks to the simulator exclusively through the C
// interface in spibox/spibox.h.

#include <cstdio>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spibox/spibox.h"

namespace fs = std::filesystem;

namespace {

/// Carries a failed status out of a verb so main can print one error line.
struct Failure : std::runtime_error {
  Failure(spibox_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  spibox_status status;
};

void check(spibox_status s) {
  if (s != SPIBOX_OK) throw Failure(s, spibox_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using MapPtr = std::unique_ptr<spibox_map, Deleter<spibox_map, spibox_map_free>>;
using ScenarioPtr = std::unique_ptr<spibox_scenario, Deleter<spibox_scenario, spibox_scenario_free>>;
using LogPtr = std::unique_ptr<spibox_log, Deleter<spibox_log, spibox_log_free>>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Config = std::map<std::string, std::string>;

void manifest(const fs::path& path, const char* verb, const Config& config, uint64_t seed) {
  std::vector<const char*> keys, values;
  for (const auto& [k, v] : config) {
    keys.push_back(k.c_str());
    values.push_back(v.c_str());
  }
  check(spibox_write_manifest(path.string().c_str(), verb, keys.data(), values.data(), keys.size(), seed));
}

fs::path sidecar(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

MapPtr build_or_load_map(const std::string& path, size_t n_pdls, double cap, double margin, uint64_t seed) {
  spibox_map* raw = nullptr;
  if (!path.empty()) {
    check(spibox_map_load(path.c_str(), &raw));
  } else {
    check(spibox_map_build(n_pdls, cap, margin, seed, &raw));
  }
  return MapPtr(raw);
}

ScenarioPtr scenario_from(const std::string& path) {
  spibox_scenario* raw = nullptr;
  check(path.empty() ? spibox_scenario_default(&raw) : spibox_scenario_load(path.c_str(), &raw));
  return ScenarioPtr(raw);
}

struct FitnessOpts {
  spibox_fitness_params params{};
  FitnessOpts() { spibox_fitness_params_default(&params); }

  void attach(CLI::App* cmd, bool sims_option = true) {
    cmd->add_option("--agents", params.n_agents, "number of agents")->capture_default_str();
    if (sims_option) cmd->add_option("--sims", params.n_sims, "one-step simulations")->capture_default_str();
    cmd->add_option("--bins", params.n_bins, "direction bins (0 = one per agent)")->capture_default_str();
    cmd->add_option("--speed-factor", params.speed_factor, "force multiplier in (0, 1]")->capture_default_str();
  }

  void record(Config& c) const {
    c["agents"] = std::to_string(params.n_agents);
    c["sims"] = std::to_string(params.n_sims);
    c["bins"] = std::to_string(params.n_bins);
    c["speed_factor"] = num(params.speed_factor);
  }
};

struct TrainOpts {
  spibox_train_config config{};
  std::string mode = "spi";
  std::string scenario;
  std::string map;
  TrainOpts() { spibox_train_config_default(&config); }

  void attach(CLI::App* cmd, bool with_mode) {
    if (with_mode) {
      cmd->add_option("--mode", mode, "exploration mode")->check(CLI::IsMember({"spi", "random"}))->capture_default_str();
    }
    cmd->add_option("--scenario", scenario, "scenario file (default arena when omitted)");
    cmd->add_option("--map", map, "SPI map file (built from --n-pdls/--cap/--margin when omitted)");
    cmd->add_option("--agents", config.n_agents)->capture_default_str();
    cmd->add_option("--episodes", config.episodes)->capture_default_str();
    cmd->add_option("--speed-factor", config.speed_factor)->capture_default_str();
    cmd->add_option("--n-pdls", config.n_pdls)->capture_default_str();
    cmd->add_option("--cap", config.cap)->capture_default_str();
    cmd->add_option("--margin", config.margin)->capture_default_str();
    cmd->add_option("--map-seed", config.map_seed)->capture_default_str();
    cmd->add_option("--alpha", config.alpha)->capture_default_str();
    cmd->add_option("--gamma", config.gamma)->capture_default_str();
    cmd->add_option("--epsilon-start", config.epsilon_start)->capture_default_str();
    cmd->add_option("--epsilon-end", config.epsilon_end)->capture_default_str();
    cmd->add_option("--decay-fraction", config.decay_fraction)->capture_default_str();
    cmd->add_option("--angle-bins", config.angle_bins)->capture_default_str();
    cmd->add_option("--synchronized-exploration", config.synchronized_exploration,
                    "1: one explore/exploit draw per step shared by all agents")
        ->capture_default_str();
    cmd->add_option("--w1", config.w1, "distance reward weight")->capture_default_str();
    cmd->add_option("--w2", config.w2, "rotation reward weight")->capture_default_str();
    cmd->add_option("--w3", config.w3, "collision reward weight")->capture_default_str();
    cmd->add_option("--w4", config.w4, "goal reward weight")->capture_default_str();
  }

  void record(Config& c) const {
    c["scenario"] = scenario.empty() ? "<default>" : scenario;
    c["map"] = map.empty() ? "<generated>" : map;
    c["agents"] = std::to_string(config.n_agents);
    c["episodes"] = std::to_string(config.episodes);
    c["speed_factor"] = num(config.speed_factor);
    c["n_pdls"] = std::to_string(config.n_pdls);
    c["cap"] = num(config.cap);
    c["margin"] = num(config.margin);
    c["map_seed"] = std::to_string(config.map_seed);
    c["alpha"] = num(config.alpha);
    c["gamma"] = num(config.gamma);
    c["epsilon_start"] = num(config.epsilon_start);
    c["epsilon_end"] = num(config.epsilon_end);
    c["decay_fraction"] = num(config.decay_fraction);
    c["angle_bins"] = std::to_string(config.angle_bins);
    c["synchronized_exploration"] = std::to_string(config.synchronized_exploration);
    c["w1"] = num(config.w1);
    c["w2"] = num(config.w2);
    c["w3"] = num(config.w3);
    c["w4"] = num(config.w4);
  }
};

/// Trains `seeds` runs (seed, seed+1, ...) concurrently and returns the logs in
/// seed order.
std::vector<LogPtr> train_runs(const TrainOpts& opts, spibox_mode mode, uint64_t seed, unsigned seeds) {
  const ScenarioPtr scenario = scenario_from(opts.scenario);
  MapPtr shared_map;
  if (mode == SPIBOX_MODE_SPI && !opts.map.empty()) shared_map = build_or_load_map(opts.map, 0, 0, 0, 0);
  std::vector<std::future<LogPtr>> jobs;
  for (unsigned k = 0; k < seeds; ++k) {
    jobs.push_back(std::async(std::launch::async, [&, k] {
      spibox_train_config c = opts.config;
      c.mode = mode;
      c.seed = seed + k;
      if (opts.map.empty()) c.map_seed = opts.config.map_seed + k;
      spibox_log* raw = nullptr;
      check(spibox_train(scenario.get(), shared_map.get(), &c, &raw));
      return LogPtr(raw);
    }));
  }
  std::vector<LogPtr> logs;
  for (auto& j : jobs) logs.push_back(j.get());
  return logs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shared-pool exploration box-pushing simulator"};
  app.set_config("--config", "", "INI/TOML file of option values; command-line flags take precedence");
  app.require_subcommand(1);
  uint64_t seed = 0;
  app.add_option("--seed", seed, "master seed for every random stream")->capture_default_str();
  app.set_version_flag("--version", std::string(spibox_version()));

  // build-map
  auto* build = app.add_subcommand("build-map", "generate an SPI map file");
  build->fallthrough();
  size_t n_pdls = 4000;
  double cap = 0.1, margin = 0.3;
  std::string out;
  build->add_option("--n-pdls", n_pdls)->capture_default_str();
  build->add_option("--cap", cap)->capture_default_str();
  build->add_option("--margin", margin)->capture_default_str();
  build->add_option("--out", out, "map file to write")->required();

  // validate-map / inspect-map
  auto* validate = app.add_subcommand("validate-map", "check every PDL and the quad structure of a map");
  validate->fallthrough();
  std::string map_path;
  validate->add_option("--map", map_path)->required();
  auto* inspect = app.add_subcommand("inspect-map", "print map size and selected PDLs");
  inspect->fallthrough();
  std::vector<size_t> indices;
  inspect->add_option("--map", map_path)->required();
  inspect->add_option("--index", indices, "PDL indices to print (default: first 4)")->delimiter(',');

  // fitness
  auto* fitness = app.add_subcommand("fitness", "one-step box movement fitness report");
  fitness->fallthrough();
  FitnessOpts fit;
  fit.attach(fitness);
  bool use_random = false;
  std::string samples;
  auto* fit_map = fitness->add_option("--map", map_path, "SPI map file");
  auto* fit_random = fitness->add_flag("--random", use_random, "uniform random exploration");
  fit_map->excludes(fit_random);
  fitness->add_option("--samples", samples, "write per-simulation displacements (x,y) here");
  fitness->add_option("--out", out, "write the report as a CSV file");

  // sweep-pdl
  auto* sweep_pdl = app.add_subcommand("sweep-pdl", "fitness versus number of PDLs");
  sweep_pdl->fallthrough();
  FitnessOpts sweep_fit;
  sweep_fit.attach(sweep_pdl);
  std::vector<size_t> counts{4, 52, 100, 252, 500, 1000, 4000};
  sweep_pdl->add_option("--counts", counts)->delimiter(',')->capture_default_str();
  sweep_pdl->add_option("--cap", cap)->capture_default_str();
  sweep_pdl->add_option("--margin", margin)->capture_default_str();
  sweep_pdl->add_option("--out", out)->required();

  // sweep-capmargin
  auto* sweep_cm = app.add_subcommand("sweep-capmargin", "fitness over a cap x margin grid");
  sweep_cm->fallthrough();
  FitnessOpts cm_fit;
  cm_fit.attach(sweep_cm, false);
  std::vector<double> caps{0.05, 0.1, 0.2, 0.3}, margins{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  uint64_t total_sims = 100000, sims_per_cell = 0;
  sweep_cm->add_option("--caps", caps)->delimiter(',')->capture_default_str();
  sweep_cm->add_option("--margins", margins)->delimiter(',')->capture_default_str();
  sweep_cm->add_option("--n-pdls", n_pdls)->capture_default_str();
  sweep_cm->add_option("--sims", total_sims, "total simulations, split evenly over cells")->capture_default_str();
  sweep_cm->add_option("--sims-per-cell", sims_per_cell, "overrides --sims when nonzero");
  sweep_cm->add_option("--out", out)->required();

  // train
  auto* train = app.add_subcommand("train", "train per-agent Q-learners on a scenario");
  train->fallthrough();
  TrainOpts topts;
  topts.attach(train, true);
  unsigned seeds = 1;
  train->add_option("--seeds", seeds, "independent runs with seeds seed, seed+1, ...")->capture_default_str();
  train->add_option("--out", out, "log CSV (one run) or output directory (several runs)")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "summarize SPI against random exploration");
  compare->fallthrough();
  TrainOpts copts;
  copts.attach(compare, false);
  std::vector<std::string> spi_logs, random_logs;
  uint32_t window = 100, bin_width = 10;
  unsigned compare_seeds = 5;
  compare->add_option("--spi", spi_logs, "SPI training logs")->delimiter(',');
  compare->add_option("--random", random_logs, "random-exploration training logs")->delimiter(',');
  compare->add_option("--seeds", compare_seeds, "runs per mode when training here")->capture_default_str();
  compare->add_option("--window", window)->capture_default_str();
  compare->add_option("--bin-width", bin_width)->capture_default_str();
  compare->add_option("--out", out, "output directory")->required();

  // plot
  auto* plot = app.add_subcommand("plot", "render SVG charts from CSV outputs");
  plot->fallthrough();
  std::vector<std::string> inputs;
  plot->add_option("--in", inputs, "CSV inputs")->required()->delimiter(',');
  plot->add_option("--out", out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      MapPtr map = build_or_load_map("", n_pdls, cap, margin, seed);
      check(spibox_map_save(map.get(), out.c_str()));
      manifest(sidecar(out), "build-map",
               {{"n_pdls", std::to_string(n_pdls)}, {"cap", num(cap)}, {"margin", num(margin)}}, seed);
      std::printf("wrote %zu PDLs to %s\n", spibox_map_size(map.get()), out.c_str());
    } else if (*validate) {
      MapPtr map = build_or_load_map(map_path, 0, 0, 0, 0);
      size_t invalid = 0;
      int quads = 0;
      check(spibox_map_check(map.get(), &invalid, &quads));
      std::printf("pdls=%zu invalid=%zu quad_structure=%d\n", spibox_map_size(map.get()), invalid, quads);
      if (invalid != 0) throw Failure(SPIBOX_ERR_INVALID_ARGUMENT, "map contains invalid PDLs");
    } else if (*inspect) {
      MapPtr map = build_or_load_map(map_path, 0, 0, 0, 0);
      const size_t size = spibox_map_size(map.get());
      std::printf("pdls=%zu\n", size);
      if (indices.empty()) {
        for (size_t i = 0; i < std::min<size_t>(4, size); ++i) indices.push_back(i);
      }
      for (size_t i : indices) {
        double p[6];
        check(spibox_map_pdl(map.get(), i, p));
        std::printf("%zu: %.6f %.6f %.6f %.6f %.6f %.6f\n", i, p[0], p[1], p[2], p[3], p[4], p[5]);
      }
    } else if (*fitness) {
      if (map_path.empty() && !use_random) throw Failure(SPIBOX_ERR_INVALID_ARGUMENT, "pass --map or --random");
      MapPtr map = use_random ? MapPtr() : build_or_load_map(map_path, 0, 0, 0, 0);
      fit.params.seed = seed;
      spibox_fitness_report r{};
      check(spibox_fitness(map.get(), &fit.params, samples.empty() ? nullptr : samples.c_str(), &r));
      const std::string policy = use_random ? "random" : "spi";
      const std::string line = policy + "," + num(r.origin_avoidance) + "," + num(r.angular_spread) + "," +
                               num(r.raw_cv) + "," + std::to_string(r.n_sims) + "," + std::to_string(r.n_bins);
      std::printf("%s\n", line.c_str());
      Config c;
      fit.record(c);
      c["policy"] = use_random ? "random" : map_path;
      if (!out.empty()) {
        FILE* f = std::fopen(out.c_str(), "w");
        if (!f) throw Failure(SPIBOX_ERR_IO, "cannot write " + out);
        std::fprintf(f, "policy,origin_avoidance,angular_spread,raw_cv,n_sims,n_bins\n%s\n", line.c_str());
        std::fclose(f);
        manifest(sidecar(out), "fitness", c, seed);
      }
      if (!samples.empty()) manifest(sidecar(samples), "fitness", c, seed);
    } else if (*sweep_pdl) {
      sweep_fit.params.seed = seed;
      check(spibox_sweep_pdl(counts.data(), counts.size(), cap, margin, &sweep_fit.params, out.c_str()));
      Config c;
      sweep_fit.record(c);
      c["cap"] = num(cap);
      c["margin"] = num(margin);
      std::string list;
      for (size_t k : counts) list += (list.empty() ? "" : ",") + std::to_string(k);
      c["counts"] = list;
      manifest(sidecar(out), "sweep-pdl", c, seed);
      std::printf("wrote %s\n", out.c_str());
    } else if (*sweep_cm) {
      const uint64_t cells = caps.size() * margins.size();
      cm_fit.params.n_sims = sims_per_cell ? sims_per_cell : (cells ? total_sims / cells : 0);
      cm_fit.params.seed = seed;
      check(spibox_sweep_cap_margin(caps.data(), caps.size(), margins.data(), margins.size(), n_pdls, &cm_fit.params,
                                    out.c_str()));
      Config c;
      cm_fit.record(c);
      c["n_pdls"] = std::to_string(n_pdls);
      manifest(sidecar(out), "sweep-capmargin", c, seed);
      std::printf("wrote %s (%llu sims per cell)\n", out.c_str(), static_cast<unsigned long long>(cm_fit.params.n_sims));
    } else if (*train) {
      if (seeds < 1) throw Failure(SPIBOX_ERR_INVALID_ARGUMENT, "--seeds must be at least 1");
      const spibox_mode mode = topts.mode == "spi" ? SPIBOX_MODE_SPI : SPIBOX_MODE_RANDOM;
      const auto logs = train_runs(topts, mode, seed, seeds);
      Config c;
      topts.record(c);
      c["mode"] = topts.mode;
      c["seeds"] = std::to_string(seeds);
      if (seeds == 1) {
        check(spibox_log_save(logs[0].get(), out.c_str()));
        manifest(sidecar(out), "train", c, seed);
      } else {
        for (unsigned k = 0; k < seeds; ++k) {
          const fs::path p = fs::path(out) / ("train_" + topts.mode + "_seed" + std::to_string(seed + k) + ".csv");
          check(spibox_log_save(logs[k].get(), p.string().c_str()));
        }
        manifest(fs::path(out) / "manifest.json", "train", c, seed);
      }
      std::printf("trained %u run(s), %zu episodes each\n", seeds, spibox_log_size(logs[0].get()));
    } else if (*compare) {
      std::vector<LogPtr> spi, random;
      Config c;
      auto load = [](const std::vector<std::string>& paths) {
        std::vector<LogPtr> logs;
        for (const auto& p : paths) {
          spibox_log* raw = nullptr;
          check(spibox_log_load(p.c_str(), &raw));
          logs.emplace_back(raw);
        }
        return logs;
      };
      if (spi_logs.empty() != random_logs.empty()) {
        throw Failure(SPIBOX_ERR_INVALID_ARGUMENT, "pass both --spi and --random, or neither to train here");
      }
      if (!spi_logs.empty()) {
        spi = load(spi_logs);
        random = load(random_logs);
        c["spi_logs"] = std::to_string(spi_logs.size());
        c["random_logs"] = std::to_string(random_logs.size());
      } else {
        spi = train_runs(copts, SPIBOX_MODE_SPI, seed, compare_seeds);
        random = train_runs(copts, SPIBOX_MODE_RANDOM, seed, compare_seeds);
        for (unsigned k = 0; k < compare_seeds; ++k) {
          const std::string suffix = "_seed" + std::to_string(seed + k) + ".csv";
          check(spibox_log_save(spi[k].get(), (fs::path(out) / ("train_spi" + suffix)).string().c_str()));
          check(spibox_log_save(random[k].get(), (fs::path(out) / ("train_random" + suffix)).string().c_str()));
        }
        copts.record(c);
        c["seeds"] = std::to_string(compare_seeds);
      }
      std::vector<const spibox_log*> spi_raw, random_raw;
      for (const auto& l : spi) spi_raw.push_back(l.get());
      for (const auto& l : random) random_raw.push_back(l.get());
      spibox_summary s{};
      const fs::path summary = fs::path(out) / "summary.csv";
      fs::create_directories(out);
      check(spibox_compare(spi_raw.data(), spi_raw.size(), random_raw.data(), random_raw.size(), window, bin_width,
                           summary.string().c_str(), &s));
      c["window"] = std::to_string(window);
      c["bin_width"] = std::to_string(bin_width);
      manifest(fs::path(out) / "manifest.json", "compare", c, seed);
      std::printf("metric,spi,random\n");
      std::printf("final_success_rate,%.4f,%.4f\n", s.spi.final_success_rate, s.random.final_success_rate);
      std::printf("final_mean_reward,%.2f,%.2f\n", s.spi.final_mean_reward, s.random.final_mean_reward);
      std::printf("first_window_success_rate,%.4f,%.4f\n", s.spi.first_window_success_rate,
                  s.random.first_window_success_rate);
      std::printf("success_steps_second_half_mean,%.2f,%.2f\n", s.spi.success_steps_second_half_mean,
                  s.random.success_steps_second_half_mean);
      std::printf("failure_steps_second_half_mean,%.2f,%.2f\n", s.spi.failure_steps_second_half_mean,
                  s.random.failure_steps_second_half_mean);
    } else if (*plot) {
      std::vector<const char*> raw;
      for (const auto& p : inputs) raw.push_back(p.c_str());
      size_t written = 0;
      check(spibox_plot(raw.data(), raw.size(), out.c_str(), &written));
      manifest(fs::path(out) / "manifest.json", "plot", {{"inputs", std::to_string(inputs.size())}}, seed);
      std::printf("wrote %zu SVG file(s) to %s\n", written, out.c_str());
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s: %s\n", spibox_status_name(f.status), f.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal_error: %s\n", e.what());
    return 1;
  }
  return 0;
}

#include "spibox/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "json.hpp"
#include "spibox/error.hpp"
#include "spibox/text.hpp"

#ifndef SPIBOX_VERSION
#define SPIBOX_VERSION "0.0.0"
#endif

namespace spibox {

CsvTable log_to_table(const TrainingLog& log) {
  CsvTable t;
  t.header = {"episode_index", "mode", "speed_factor", "outcome", "steps", "total_reward", "epsilon"};
  for (const EpisodeRecord& e : log.episodes) {
    t.rows.push_back({std::to_string(e.episode_index), std::string(to_string(log.mode)),
                      format_double(log.speed_factor), std::string(to_string(e.outcome)), std::to_string(e.steps),
                      format_double(e.total_reward), format_double(e.epsilon)});
  }
  return t;
}

TrainingLog log_from_table(const CsvTable& t) {
  if (t.rows.empty()) fail(ErrorKind::empty_input, "training log has no episodes");
  TrainingLog log;
  log.mode = parse_mode(t.text(0, "mode"));
  log.speed_factor = t.number(0, "speed_factor");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::string line = "training log line " + std::to_string(r + 2);
    if (parse_mode(t.text(r, "mode")) != log.mode || t.number(r, "speed_factor") != log.speed_factor) {
      fail(ErrorKind::parse, line + ": mode and speed_factor must be constant");
    }
    EpisodeRecord e;
    const double idx = t.number(r, "episode_index");
    const double steps = t.number(r, "steps");
    if (idx < 0 || idx != std::floor(idx) || steps < 0 || steps != std::floor(steps)) {
      fail(ErrorKind::parse, line + ": episode_index and steps must be non-negative integers");
    }
    e.episode_index = static_cast<std::size_t>(idx);
    e.steps = static_cast<int>(steps);
    e.outcome = parse_outcome(t.text(r, "outcome"));
    e.total_reward = t.number(r, "total_reward");
    e.epsilon = t.number(r, "epsilon");
    log.episodes.push_back(e);
  }
  return log;
}

void save_log(const std::filesystem::path& path, const TrainingLog& log) { write_csv(path, log_to_table(log)); }

TrainingLog load_log(const std::filesystem::path& path) { return log_from_table(read_csv(path)); }

std::vector<SweepPdlRow> sweep_pdl_count(std::span<const std::size_t> counts, double cap, double margin,
                                         const BmdParams& base, std::size_t n_bins) {
  require(!counts.empty(), "sweep needs at least one PDL count");
  for (std::size_t c : counts) require(c >= 4 && c % 4 == 0, "PDL counts must be positive multiples of 4");
  check_generation_params(cap, margin);

  std::vector<std::future<SweepPdlRow>> jobs;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      const auto map = std::make_shared<const SpiMap>(
          SpiMap::build({counts[i], cap, margin, substream_seed(base.seed, 2 * i)}));
      BmdParams p = base;
      p.seed = substream_seed(base.seed, 2 * i + 1);
      return SweepPdlRow{counts[i], fitness_report(ExplorationPolicy::shared(map), p, n_bins)};
    }));
  }
  std::vector<SweepPdlRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

CsvTable sweep_pdl_table(std::span<const SweepPdlRow> rows) {
  CsvTable t;
  t.header = {"n_pdls", "origin_avoidance", "angular_spread", "raw_cv", "n_sims", "n_bins"};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.n_pdls), format_double(r.report.origin_avoidance),
                      format_double(r.report.angular_spread), format_double(r.report.raw_cv),
                      std::to_string(r.report.n_sims), std::to_string(r.report.n_bins)});
  }
  return t;
}

std::vector<CapMarginCell> sweep_cap_margin(std::span<const double> caps, std::span<const double> margins,
                                            std::size_t n_pdls, const BmdParams& per_cell, std::size_t n_bins) {
  require(!caps.empty() && !margins.empty(), "cap and margin grids must be nonempty");
  std::vector<CapMarginCell> cells;
  for (double c : caps) {
    for (double m : margins) {
      CapMarginCell cell{c, m, true, {}};
      try {
        check_generation_params(c, m);
      } catch (const Error&) {
        cell.feasible = false;
      }
      cells.push_back(cell);
    }
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].feasible) continue;
    jobs.push_back(std::async(std::launch::async, [&, i] {
      const auto map = std::make_shared<const SpiMap>(
          SpiMap::build({n_pdls, cells[i].cap, cells[i].margin, substream_seed(per_cell.seed, 2 * i)}));
      BmdParams p = per_cell;
      p.seed = substream_seed(per_cell.seed, 2 * i + 1);
      cells[i].report = fitness_report(ExplorationPolicy::shared(map), p, n_bins);
    }));
  }
  for (auto& j : jobs) j.get();
  return cells;
}

CsvTable cap_margin_table(std::span<const CapMarginCell> cells) {
  CsvTable t;
  t.header = {"cap", "margin", "feasible", "origin_avoidance", "angular_spread", "raw_cv", "n_sims"};
  for (const auto& c : cells) {
    if (!c.feasible) {
      t.rows.push_back({format_double(c.cap), format_double(c.margin), "0", "nan", "nan", "nan", "0"});
      continue;
    }
    t.rows.push_back({format_double(c.cap), format_double(c.margin), "1", format_double(c.report.origin_avoidance),
                      format_double(c.report.angular_spread), format_double(c.report.raw_cv),
                      std::to_string(c.report.n_sims)});
  }
  return t;
}

CsvTable fitness_table(const FitnessReport& r, std::string_view policy) {
  CsvTable t;
  t.header = {"policy", "origin_avoidance", "angular_spread", "raw_cv", "n_sims", "n_bins"};
  t.rows.push_back({std::string(policy), format_double(r.origin_avoidance), format_double(r.angular_spread),
                    format_double(r.raw_cv), std::to_string(r.n_sims), std::to_string(r.n_bins)});
  return t;
}

CsvTable samples_table(std::span<const Vec2> samples) {
  CsvTable t;
  t.header = {"x", "y"};
  t.rows.reserve(samples.size());
  for (Vec2 s : samples) t.rows.push_back({format_double(s.x), format_double(s.y)});
  return t;
}

namespace {

void check_matched(const TrainingLog& ref, const TrainingLog& log) {
  if (log.episodes.size() != ref.episodes.size()) {
    fail(ErrorKind::invalid_argument, "logs differ in episode count");
  }
  if (log.speed_factor != ref.speed_factor) fail(ErrorKind::invalid_argument, "logs differ in speed factor");
  for (std::size_t e = 0; e < ref.episodes.size(); ++e) {
    if (log.episodes[e].epsilon != ref.episodes[e].epsilon) {
      fail(ErrorKind::invalid_argument, "logs differ in epsilon schedule at episode " + std::to_string(e));
    }
  }
}

StepStats step_stats(const std::vector<int>& steps, std::size_t bin_width, std::size_t n_bins) {
  StepStats s;
  s.count = steps.size();
  s.histogram.assign(n_bins, 0);
  double sum = 0.0;
  for (int v : steps) {
    sum += v;
    ++s.histogram[std::min(static_cast<std::size_t>(v) / bin_width, n_bins - 1)];
  }
  s.mean = steps.empty() ? std::nan("") : sum / static_cast<double>(steps.size());
  return s;
}

ModeSummary summarize(std::span<const TrainingLog> logs, std::size_t window, std::size_t bin_width,
                      std::size_t n_bins) {
  ModeSummary m;
  m.runs = logs.size();
  m.episodes = logs.front().episodes.size();
  const std::size_t n_windows = (m.episodes + window - 1) / window;
  std::vector<double> succ(n_windows, 0.0), reward(n_windows, 0.0), count(n_windows, 0.0);
  std::vector<int> s1, s2, f1, f2;
  double final_succ = 0.0, final_reward = 0.0, final_count = 0.0;
  const std::size_t final_start = m.episodes > window ? m.episodes - window : 0;
  for (const TrainingLog& log : logs) {
    for (std::size_t e = 0; e < log.episodes.size(); ++e) {
      const EpisodeRecord& rec = log.episodes[e];
      const bool ok = rec.outcome == Outcome::success;
      const std::size_t w = e / window;
      succ[w] += ok;
      reward[w] += rec.total_reward;
      count[w] += 1.0;
      if (e >= final_start) {
        final_succ += ok;
        final_reward += rec.total_reward;
        final_count += 1.0;
      }
      const bool second = e >= m.episodes / 2;
      (ok ? (second ? s2 : s1) : (second ? f2 : f1)).push_back(rec.steps);
    }
  }
  for (std::size_t w = 0; w < n_windows; ++w) {
    m.window_success.push_back(succ[w] / count[w]);
    m.window_reward.push_back(reward[w] / count[w]);
  }
  m.final_success = final_succ / final_count;
  m.final_reward = final_reward / final_count;
  m.success_first_half = step_stats(s1, bin_width, n_bins);
  m.success_second_half = step_stats(s2, bin_width, n_bins);
  m.failure_first_half = step_stats(f1, bin_width, n_bins);
  m.failure_second_half = step_stats(f2, bin_width, n_bins);
  return m;
}

}  // namespace

SummaryStats compare_modes(std::span<const TrainingLog> spi, std::span<const TrainingLog> random,
                           std::size_t window, std::size_t bin_width) {
  require(!spi.empty() && !random.empty(), "comparison needs at least one log per mode");
  require(window >= 1 && bin_width >= 1, "window and bin width must be positive");
  const TrainingLog& ref = spi.front();
  require(!ref.episodes.empty(), "logs must contain episodes");
  int max_steps = 0;
  for (const TrainingLog& l : spi) {
    if (l.mode != ExplorationMode::spi) fail(ErrorKind::invalid_argument, "random-mode log passed as spi");
    check_matched(ref, l);
    for (const auto& e : l.episodes) max_steps = std::max(max_steps, e.steps);
  }
  for (const TrainingLog& l : random) {
    if (l.mode != ExplorationMode::random) fail(ErrorKind::invalid_argument, "spi-mode log passed as random");
    check_matched(ref, l);
    for (const auto& e : l.episodes) max_steps = std::max(max_steps, e.steps);
  }
  const std::size_t n_bins = static_cast<std::size_t>(max_steps) / bin_width + 1;
  SummaryStats s;
  s.window = window;
  s.bin_width = bin_width;
  s.spi = summarize(spi, window, bin_width, n_bins);
  s.random = summarize(random, window, bin_width, n_bins);
  return s;
}

CsvTable summary_table(const SummaryStats& s) {
  CsvTable t;
  t.header = {"mode", "metric", "index", "value"};
  auto add = [&t](std::string_view mode, std::string_view metric, std::size_t index, double value) {
    t.rows.push_back({std::string(mode), std::string(metric), std::to_string(index), format_double(value)});
  };
  for (const auto& [mode, m] : {std::pair<std::string_view, const ModeSummary&>{"spi", s.spi},
                                std::pair<std::string_view, const ModeSummary&>{"random", s.random}}) {
    add(mode, "runs", 0, static_cast<double>(m.runs));
    add(mode, "final_success_rate", 0, m.final_success);
    add(mode, "final_mean_reward", 0, m.final_reward);
    for (std::size_t w = 0; w < m.window_success.size(); ++w) add(mode, "window_success_rate", w, m.window_success[w]);
    for (std::size_t w = 0; w < m.window_reward.size(); ++w) add(mode, "window_mean_reward", w, m.window_reward[w]);
    const std::pair<std::string_view, const StepStats&> parts[] = {
        {"success_steps_first_half", m.success_first_half},
        {"success_steps_second_half", m.success_second_half},
        {"failure_steps_first_half", m.failure_first_half},
        {"failure_steps_second_half", m.failure_second_half}};
    for (const auto& [name, st] : parts) {
      add(mode, std::string(name) + "_count", 0, static_cast<double>(st.count));
      add(mode, std::string(name) + "_mean", 0, st.mean);
      for (std::size_t b = 0; b < st.histogram.size(); ++b) {
        add(mode, std::string(name) + "_hist", b * s.bin_width, static_cast<double>(st.histogram[b]));
      }
    }
  }
  return t;
}

std::string_view library_version() { return SPIBOX_VERSION; }

void write_manifest(const std::filesystem::path& path, std::string_view verb,
                    const std::map<std::string, std::string>& config, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["verb"] = verb;
  j["seed"] = seed;
  j["version"] = library_version();
  j["config"] = config;
  write_file(path, j.dump(2) + "\n");
}

}  // namespace spibox

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spibox/csv.hpp"
#include "spibox/fitness.hpp"
#include "spibox/learn.hpp"

namespace spibox {

// ---- training logs -------------------------------------------------------

CsvTable log_to_table(const TrainingLog& log);
TrainingLog log_from_table(const CsvTable& table);
void save_log(const std::filesystem::path& path, const TrainingLog& log);
TrainingLog load_log(const std::filesystem::path& path);

// ---- fitness sweeps ------------------------------------------------------

struct SweepPdlRow {
  std::size_t n_pdls = 0;
  FitnessReport report;
};

/// One fitness report per map size. Cell i draws its map and its samples from
/// substreams of `base.seed`, so the table only depends on the inputs.
std::vector<SweepPdlRow> sweep_pdl_count(std::span<const std::size_t> counts, double cap, double margin,
                                         const BmdParams& base, std::size_t n_bins = 0);
CsvTable sweep_pdl_table(std::span<const SweepPdlRow> rows);

struct CapMarginCell {
  double cap = 0.0;
  double margin = 0.0;
  bool feasible = false;
  FitnessReport report;
};

/// Full cap x margin grid at a fixed map size. Infeasible pairs are kept as
/// rows with feasible == false.
std::vector<CapMarginCell> sweep_cap_margin(std::span<const double> caps, std::span<const double> margins,
                                            std::size_t n_pdls, const BmdParams& per_cell,
                                            std::size_t n_bins = 0);
CsvTable cap_margin_table(std::span<const CapMarginCell> cells);

CsvTable fitness_table(const FitnessReport& r, std::string_view policy);
CsvTable samples_table(std::span<const Vec2> samples);

// ---- mode comparison -----------------------------------------------------

struct StepStats {
  std::size_t count = 0;
  double mean = 0.0;
  /// Counts per bin of width `bin_width`, starting at step 0.
  std::vector<std::size_t> histogram;
};

struct ModeSummary {
  std::size_t runs = 0;
  std::size_t episodes = 0;
  /// Success rate and mean reward per consecutive window, pooled over runs.
  std::vector<double> window_success;
  std::vector<double> window_reward;
  double final_success = 0.0;
  double final_reward = 0.0;
  StepStats success_first_half;
  StepStats success_second_half;
  StepStats failure_first_half;
  StepStats failure_second_half;
};

struct SummaryStats {
  std::size_t window = 100;
  std::size_t bin_width = 10;
  ModeSummary spi;
  ModeSummary random;
};

/// Pools runs per mode. Every log must share episode count, speed factor and
/// epsilon schedule; any mismatch, or a log in the wrong group, is rejected.
SummaryStats compare_modes(std::span<const TrainingLog> spi, std::span<const TrainingLog> random,
                           std::size_t window = 100, std::size_t bin_width = 10);

/// Long-format table: mode, metric, index, value.
CsvTable summary_table(const SummaryStats& s);

// ---- provenance ----------------------------------------------------------

std::string_view library_version();

/// JSON sidecar recording verb, configuration, seed and library version.
void write_manifest(const std::filesystem::path& path, std::string_view verb,
                    const std::map<std::string, std::string>& config, std::uint64_t seed);

}  // namespace spibox

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spibox/explore.hpp"
#include "spibox/geometry.hpp"

namespace spibox {

struct BmdParams {
  std::size_t n_agents = 15;
  std::size_t n_sims = 100'000;
  double speed_factor = 1.0;
  std::uint64_t seed = 0;
};

/// One-step box displacements from a fixed origin in an open arena. Work is
/// split into a fixed number of shards with derived RNG streams, so the result
/// does not depend on how many threads run them.
std::vector<Vec2> simulate_bmd(const ExplorationPolicy& policy, const BmdParams& params);

/// 1 - (samples with |d| < max_disp / 3) / total.
double origin_avoidance_score(std::span<const Vec2> samples, double max_disp);

struct SpreadScore {
  double score = 0.0;
  double raw_cv = 0.0;
};

/// Histogram of sample bearings over n_bins equal arcs of [0°, 360°);
/// score = clamp(1 - CV, 0, 1). Zero displacements are skipped.
SpreadScore angular_spread_score(std::span<const Vec2> samples, std::size_t n_bins);

/// Per-bin counts used by angular_spread_score.
std::vector<std::size_t> direction_histogram(std::span<const Vec2> samples, std::size_t n_bins);

struct FitnessReport {
  double origin_avoidance = 0.0;
  double angular_spread = 0.0;
  double raw_cv = 0.0;
  std::size_t n_sims = 0;
  std::size_t n_bins = 0;
};

/// n_bins == 0 means "one bin per agent".
FitnessReport fitness_report(const ExplorationPolicy& policy, const BmdParams& params, std::size_t n_bins = 0);
FitnessReport score_samples(std::span<const Vec2> samples, const BmdParams& params, std::size_t n_bins);

}  // namespace spibox

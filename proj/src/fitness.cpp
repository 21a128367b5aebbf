#include "spibox/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "spibox/error.hpp"
#include "spibox/scenario.hpp"

namespace spibox {

namespace {
constexpr std::size_t kShards = 16;
}

std::vector<Vec2> simulate_bmd(const ExplorationPolicy& policy, const BmdParams& params) {
  require(params.n_sims >= 1, "n_sims must be at least 1");
  require(params.n_agents >= 1, "n_agents must be at least 1");
  require(params.speed_factor > 0.0 && params.speed_factor <= 1.0, "speed_factor must be in (0, 1]");
  const Scenario field = Scenario::open_field();
  const WorldState origin = initial_state(field);
  std::vector<Vec2> samples(params.n_sims);

  auto run_shard = [&](std::size_t shard) {
    Rng rng = Rng::derived(params.seed, shard);
    std::vector<Action> joint(params.n_agents);
    const std::size_t begin = shard * params.n_sims / kShards;
    const std::size_t end = (shard + 1) * params.n_sims / kShards;
    for (std::size_t i = begin; i < end; ++i) {
      const auto key = policy.step_key(rng);
      for (Action& a : joint) a = policy.explore(key, rng);
      samples[i] = apply_joint_action(field, origin, joint, params.speed_factor).displacement;
    }
  };

  std::vector<std::future<void>> jobs;
  for (std::size_t s = 0; s < kShards; ++s) jobs.push_back(std::async(std::launch::async, run_shard, s));
  for (auto& j : jobs) j.get();
  return samples;
}

double origin_avoidance_score(std::span<const Vec2> samples, double max_disp) {
  if (samples.empty()) fail(ErrorKind::empty_input, "origin avoidance needs at least one sample");
  require(max_disp > 0.0, "max_disp must be positive");
  const double threshold = max_disp / 3.0;
  const auto near = std::count_if(samples.begin(), samples.end(), [&](Vec2 d) { return norm(d) < threshold; });
  return 1.0 - static_cast<double>(near) / static_cast<double>(samples.size());
}

std::vector<std::size_t> direction_histogram(std::span<const Vec2> samples, std::size_t n_bins) {
  require(n_bins >= 2, "n_bins must be at least 2");
  std::vector<std::size_t> counts(n_bins, 0);
  const double width = 360.0 / static_cast<double>(n_bins);
  for (Vec2 d : samples) {
    if (d.x == 0.0 && d.y == 0.0) continue;
    const double deg = degrees(wrap_two_pi(std::atan2(d.y, d.x)));
    const auto bin = std::min(static_cast<std::size_t>(std::floor(deg / width)), n_bins - 1);
    ++counts[bin];
  }
  return counts;
}

SpreadScore angular_spread_score(std::span<const Vec2> samples, std::size_t n_bins) {
  const auto counts = direction_histogram(samples, n_bins);
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0.0) fail(ErrorKind::undefined_spread, "every sample is at the origin; spread is undefined");
  const double mean = total / static_cast<double>(n_bins);
  double var = 0.0;
  for (auto c : counts) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  var /= static_cast<double>(n_bins);
  const double cv = std::sqrt(var) / mean;
  return {std::clamp(1.0 - cv, 0.0, 1.0), cv};
}

FitnessReport score_samples(std::span<const Vec2> samples, const BmdParams& params, std::size_t n_bins) {
  if (n_bins == 0) n_bins = params.n_agents;
  const double max_disp = max_step_displacement(Scenario::open_field(), params.n_agents, params.speed_factor);
  FitnessReport r;
  r.origin_avoidance = origin_avoidance_score(samples, max_disp);
  const SpreadScore spread = angular_spread_score(samples, n_bins);
  r.angular_spread = spread.score;
  r.raw_cv = spread.raw_cv;
  r.n_sims = samples.size();
  r.n_bins = n_bins;
  return r;
}

FitnessReport fitness_report(const ExplorationPolicy& policy, const BmdParams& params, std::size_t n_bins) {
  const auto samples = simulate_bmd(policy, params);
  return score_samples(samples, params, n_bins);
}

}  // namespace spibox

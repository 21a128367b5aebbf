#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spibox/explore.hpp"
#include "spibox/reward.hpp"
#include "spibox/scenario.hpp"
#include "spibox/sense.hpp"
#include "spibox/spi.hpp"

namespace spibox {

class QTable {
 public:
  explicit QTable(std::size_t n_states) : n_states_(n_states), values_(n_states * kNumActions, 0.0) {}

  std::size_t n_states() const { return n_states_; }

  double& at(std::size_t state, Action a) { return values_[offset(state) + action_index(a)]; }
  double at(std::size_t state, Action a) const { return values_[offset(state) + action_index(a)]; }
  std::span<const double> row(std::size_t state) const { return {values_.data() + offset(state), kNumActions}; }
  std::span<double> row(std::size_t state) { return {values_.data() + offset(state), kNumActions}; }

  /// Lowest action id wins ties.
  Action greedy(std::size_t state) const;
  double max_value(std::size_t state) const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t offset(std::size_t state) const;

  std::size_t n_states_;
  std::vector<double> values_;
};

/// Information every agent reads identically during one step.
struct StepContext {
  std::optional<Key> key;
  /// Uniform [0, 1) draw compared against epsilon. Empty means each agent
  /// draws its own.
  std::optional<double> explore_draw;
};

/// Epsilon-greedy choice whose exploration branch is delegated to `policy`.
/// Greedy ties go to the lowest action id.
Action select_action(const QTable& q, DiscreteState s, double epsilon, const ExplorationPolicy& policy,
                     const StepContext& ctx, Rng& rng);

struct TdStep {
  std::size_t state = 0;
  Action action = Action::left;
  double reward = 0.0;
  std::size_t next_state = 0;
  bool terminal = false;
};

/// One-step Q-learning backup.
void q_update(QTable& q, const TdStep& step, double alpha, double gamma);

struct TrainConfig {
  std::size_t n_agents = 15;
  std::size_t episodes = 1000;
  double speed_factor = 1.0 / 3.0;
  ExplorationMode mode = ExplorationMode::spi;
  MapParams map;
  double alpha = 0.1;
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  /// Fraction of episodes over which epsilon decays linearly.
  double decay_fraction = 0.8;
  int angle_bins = kDefaultAngleBins;
  /// When true the explore-or-exploit draw is made once per step and read by
  /// every agent, so agents explore on the same steps. Each agent still
  /// explores with probability epsilon.
  bool synchronized_exploration = true;
  RewardWeights weights;
  std::uint64_t seed = 0;

  /// Throws invalid_argument on out-of-range fields.
  void validate() const;
  double epsilon_for(std::size_t episode) const;
};

enum class Outcome { success, collision, timeout };

std::string_view to_string(Outcome o);
Outcome parse_outcome(std::string_view text);

struct EpisodeRecord {
  std::size_t episode_index = 0;
  Outcome outcome = Outcome::timeout;
  int steps = 0;
  double total_reward = 0.0;
  double epsilon = 0.0;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

/// One independent learner per agent.
struct AgentTeam {
  std::vector<QTable> tables;

  AgentTeam(std::size_t n_agents, std::size_t n_states) : tables(n_agents, QTable(n_states)) {}
};

/// Plays one episode from the scenario start, updating every agent's table
/// with the shared reward after each joint push.
EpisodeRecord run_episode(const Scenario& scenario, AgentTeam& team, const ExplorationPolicy& policy,
                          const TrainConfig& config, double epsilon, Rng& rng, std::size_t episode_index = 0);

struct TrainingLog {
  ExplorationMode mode = ExplorationMode::spi;
  double speed_factor = 1.0;
  std::vector<EpisodeRecord> episodes;
};

struct TrainingResult {
  TrainingLog log;
  AgentTeam team;
};

/// Runs config.episodes episodes. In spi mode `map` is used when given,
/// otherwise one is built from config.map.
TrainingResult train(const TrainConfig& config, const Scenario& scenario,
                     std::shared_ptr<const SpiMap> map = nullptr);

}  // namespace spibox

#include "spibox/learn.hpp"

#include <algorithm>
#include <cmath>

#include "spibox/error.hpp"

namespace spibox {

std::size_t QTable::offset(std::size_t state) const {
  if (state >= n_states_) {
    fail(ErrorKind::invalid_argument, "state index " + std::to_string(state) + " out of range");
  }
  return state * kNumActions;
}

Action QTable::greedy(std::size_t state) const {
  const auto r = row(state);
  return static_cast<Action>(std::max_element(r.begin(), r.end()) - r.begin() + 1);
}

double QTable::max_value(std::size_t state) const {
  const auto r = row(state);
  return *std::max_element(r.begin(), r.end());
}

Action select_action(const QTable& q, DiscreteState s, double epsilon, const ExplorationPolicy& policy,
                     const StepContext& ctx, Rng& rng) {
  if (policy.mode() == ExplorationMode::spi && !ctx.key) {
    fail(ErrorKind::contract_violation, "spi mode requires the step's shared key");
  }
  const double draw = ctx.explore_draw ? *ctx.explore_draw : rng.uniform();
  if (draw < epsilon) return policy.explore(ctx.key, rng);
  return q.greedy(s.index);
}

void q_update(QTable& q, const TdStep& step, double alpha, double gamma) {
  const double bootstrap = step.terminal ? 0.0 : gamma * q.max_value(step.next_state);
  double& v = q.at(step.state, step.action);
  v += alpha * (step.reward + bootstrap - v);
}

void TrainConfig::validate() const {
  require(n_agents >= 1, "n_agents must be at least 1");
  require(episodes >= 1, "episodes must be at least 1");
  require(speed_factor > 0.0 && speed_factor <= 1.0, "speed_factor must be in (0, 1]");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]");
  require(gamma > 0.0 && gamma <= 1.0, "gamma must be in (0, 1]");
  require(epsilon_start >= 0.0 && epsilon_start <= 1.0, "epsilon_start must be in [0, 1]");
  require(epsilon_end >= 0.0 && epsilon_end <= 1.0, "epsilon_end must be in [0, 1]");
  require(decay_fraction > 0.0 && decay_fraction <= 1.0, "decay_fraction must be in (0, 1]");
  require(angle_bins >= 1, "angle_bins must be at least 1");
  require(weights.valid(), "reward weights must be non-negative with the distance weight largest");
}

double TrainConfig::epsilon_for(std::size_t episode) const {
  const double horizon = std::max(1.0, decay_fraction * static_cast<double>(episodes));
  const double t = std::min(1.0, static_cast<double>(episode) / horizon);
  return epsilon_start + (epsilon_end - epsilon_start) * t;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::success: return "success";
    case Outcome::collision: return "collision";
    case Outcome::timeout: return "timeout";
  }
  return "timeout";
}

Outcome parse_outcome(std::string_view text) {
  if (text == "success") return Outcome::success;
  if (text == "collision") return Outcome::collision;
  if (text == "timeout") return Outcome::timeout;
  fail(ErrorKind::parse, "unknown outcome '" + std::string(text) + "'");
}

EpisodeRecord run_episode(const Scenario& scenario, AgentTeam& team, const ExplorationPolicy& policy,
                          const TrainConfig& config, double epsilon, Rng& rng, std::size_t episode_index) {
  require(team.tables.size() == config.n_agents, "team size does not match n_agents");
  WorldState world = initial_state(scenario);
  DiscreteState s = discretize(encode_state(scenario, world.pose), config.angle_bins);
  double distance = norm(scenario.goal.center - world.pose.position);
  double bearing = relative_bearing(world.pose, scenario.goal.center);

  EpisodeRecord rec;
  rec.episode_index = episode_index;
  rec.epsilon = epsilon;
  std::vector<Action> joint(config.n_agents);
  while (!world.terminated) {
    StepContext ctx;
    ctx.key = policy.step_key(rng);
    if (config.synchronized_exploration) ctx.explore_draw = rng.uniform();
    for (std::size_t i = 0; i < joint.size(); ++i) {
      joint[i] = select_action(team.tables[i], s, epsilon, policy, ctx, rng);
    }
    const StepOutcome out = apply_joint_action(scenario, world, joint, config.speed_factor);
    world = next_state(world, out);
    const DiscreteState next = discretize(encode_state(scenario, world.pose), config.angle_bins);
    const double new_distance = norm(scenario.goal.center - world.pose.position);
    const double new_bearing = relative_bearing(world.pose, scenario.goal.center);
    const RewardBreakdown r = total_reward(
        {distance, new_distance, bearing, new_bearing, out.collided, out.reached_goal}, config.weights);
    for (std::size_t i = 0; i < joint.size(); ++i) {
      q_update(team.tables[i], {s.index, joint[i], r.total, next.index, out.terminal()}, config.alpha,
               config.gamma);
    }
    rec.total_reward += r.total;
    ++rec.steps;
    if (out.reached_goal) {
      rec.outcome = Outcome::success;
    } else if (out.collided) {
      rec.outcome = Outcome::collision;
    } else {
      rec.outcome = Outcome::timeout;
    }
    s = next;
    distance = new_distance;
    bearing = new_bearing;
  }
  return rec;
}

TrainingResult train(const TrainConfig& config, const Scenario& scenario, std::shared_ptr<const SpiMap> map) {
  config.validate();
  ExplorationPolicy policy = ExplorationPolicy::uniform();
  if (config.mode == ExplorationMode::spi) {
    if (!map) map = std::make_shared<const SpiMap>(SpiMap::build(config.map));
    require(map->size() > config.n_agents, "map must hold more PDLs than there are agents");
    policy = ExplorationPolicy::shared(std::move(map));
  }
  TrainingResult result{{config.mode, config.speed_factor, {}},
                        AgentTeam(config.n_agents, state_count(config.angle_bins))};
  result.log.episodes.reserve(config.episodes);
  for (std::size_t e = 0; e < config.episodes; ++e) {
    Rng rng = Rng::derived(config.seed, e);
    result.log.episodes.push_back(
        run_episode(scenario, result.team, policy, config, config.epsilon_for(e), rng, e));
  }
  return result;
}

}  // namespace spibox

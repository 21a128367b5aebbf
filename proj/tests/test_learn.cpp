#include <array>
#include <cmath>
#include <memory>

#include "doctest.h"
#include "oracles.hpp"
#include "spibox/learn.hpp"

using namespace spibox;

namespace {

std::shared_ptr<const SpiMap> onehot_map(std::size_t copies) {
  return std::make_shared<const SpiMap>(SpiMap::from_pdls(std::vector<Pdl>(copies, Pdl{1, 0, 0, 0, 0, 0})));
}

TrainConfig small_config(ExplorationMode mode) {
  TrainConfig c;
  c.n_agents = 4;
  c.episodes = 3;
  c.mode = mode;
  c.map = {40, 0.1, 0.3, 1};
  c.seed = 5;
  return c;
}

}  // namespace

TEST_CASE("greedy picks the largest value and breaks ties toward the lowest id") {
  QTable q(3);
  CHECK(q.greedy(0) == Action::left);
  q.at(1, Action::right) = 2.0;
  q.at(1, Action::top_right) = 2.0;
  CHECK(q.greedy(1) == Action::right);
  CHECK(q.max_value(1) == 2.0);
  CHECK(oracle::throws_kind([&] { q.greedy(3); }, ErrorKind::invalid_argument));
}

TEST_CASE("epsilon-greedy selection") {
  QTable q(1);
  q.at(0, Action::bottom_right) = 1.0;
  Rng rng(1);
  const auto uniform = ExplorationPolicy::uniform();
  for (int i = 0; i < 200; ++i) CHECK(select_action(q, {0}, 0.0, uniform, {}, rng) == Action::bottom_right);

  const int n = 100000;
  std::array<int, 6> counts{};
  for (int i = 0; i < n; ++i) ++counts[action_index(select_action(q, {0}, 1.0, uniform, {}, rng))];
  const double p = 1.0 / 6.0, sigma = std::sqrt(n * p * (1 - p));
  for (int c : counts) CHECK(std::abs(c - n * p) < 3 * sigma);

  const auto spi = ExplorationPolicy::shared(onehot_map(1));
  for (int i = 0; i < 200; ++i) {
    const StepContext ctx{spi.step_key(rng), std::nullopt};
    CHECK(select_action(q, {0}, 1.0, spi, ctx, rng) == Action::left);
  }
  CHECK(oracle::throws_kind([&] { select_action(q, {0}, 1.0, spi, {}, rng); }, ErrorKind::contract_violation));
}

TEST_CASE("a shared exploration draw decides for every agent") {
  QTable q(1);
  q.at(0, Action::right) = 1.0;
  Rng rng(2);
  const auto spi = ExplorationPolicy::shared(onehot_map(1));
  const StepContext low{Key{0}, 0.3};
  const StepContext high{Key{0}, 0.7};
  CHECK(select_action(q, {0}, 0.5, spi, low, rng) == Action::left);    // explores
  CHECK(select_action(q, {0}, 0.5, spi, high, rng) == Action::right);  // exploits
}

TEST_CASE("one-step backups") {
  QTable q(2);
  q_update(q, {0, Action::left, 7.0, 1, true}, 1.0, 0.0);
  CHECK(q.at(0, Action::left) == 7.0);

  QTable r(2);
  r.at(1, Action::left) = 3.0;
  q_update(r, {0, Action::right, 7.0, 1, false}, 0.0, 0.9);
  CHECK(r.at(0, Action::right) == 0.0);

  QTable z(2);
  q_update(z, {0, Action::left, 10.0, 1, false}, 0.5, 0.9);
  CHECK(z.at(0, Action::left) == 5.0);

  // Terminal steps ignore the successor value.
  QTable t(2);
  t.at(1, Action::left) = 100.0;
  q_update(t, {0, Action::left, 1.0, 1, true}, 1.0, 0.9);
  CHECK(t.at(0, Action::left) == 1.0);
}

TEST_CASE("tabular updates on a deterministic chain converge to the optimal values") {
  const oracle::Chain chain{0.9};
  QTable q(oracle::Chain::kStates);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    for (int s = 0; s < oracle::Chain::kStates; ++s) {
      for (int id = 1; id <= kNumActions; ++id) {
        const Action a = action_from_id(id);
        TdStep step;
        step.state = s;
        step.action = a;
        if (a == Action::left) {
          step.terminal = s == oracle::Chain::kStates - 1;
          step.reward = step.terminal ? 1.0 : 0.0;
          step.next_state = step.terminal ? s : s + 1;
        } else {
          step.next_state = s == 0 ? 0 : s - 1;
        }
        q_update(q, step, 0.1, chain.gamma);
      }
    }
  }
  for (int s = 0; s < oracle::Chain::kStates; ++s) {
    CHECK(std::abs(q.at(s, Action::left) - chain.q_forward(s)) < 1e-6);
    for (int id = 2; id <= kNumActions; ++id) CHECK(std::abs(q.at(s, action_from_id(id)) - chain.q_back(s)) < 1e-6);
    CHECK(q.greedy(s) == Action::left);
  }
}

TEST_CASE("epsilon decays linearly then holds") {
  TrainConfig c;
  c.episodes = 1000;
  CHECK(c.epsilon_for(0) == 1.0);
  CHECK(c.epsilon_for(400) == doctest::Approx(0.525));
  CHECK(c.epsilon_for(800) == doctest::Approx(0.05));
  CHECK(c.epsilon_for(999) == doctest::Approx(0.05));
}

TEST_CASE("training configuration is validated") {
  TrainConfig c;
  c.speed_factor = 0.0;
  CHECK(oracle::throws_kind([&] { c.validate(); }, ErrorKind::invalid_argument));
  c = TrainConfig{};
  c.alpha = 1.5;
  CHECK(oracle::throws_kind([&] { c.validate(); }, ErrorKind::invalid_argument));
  c = TrainConfig{};
  c.weights = {1, 5, 1, 1};
  CHECK(oracle::throws_kind([&] { c.validate(); }, ErrorKind::invalid_argument));
  CHECK_NOTHROW(TrainConfig{}.validate());
}

TEST_CASE("outcome names round trip") {
  for (Outcome o : {Outcome::success, Outcome::collision, Outcome::timeout}) CHECK(parse_outcome(to_string(o)) == o);
  CHECK(oracle::throws_kind([] { parse_outcome("draw"); }, ErrorKind::parse));
}

TEST_CASE("a goal under the start pose ends the first step with the goal bonus") {
  Scenario s = Scenario::standard();
  s.goal = Disc{s.box_start, 30.0};
  const TrainConfig c = small_config(ExplorationMode::random);
  AgentTeam team(c.n_agents, state_count(c.angle_bins));
  Rng rng(1);
  const auto rec = run_episode(s, team, ExplorationPolicy::uniform(), c, 1.0, rng);
  CHECK(rec.outcome == Outcome::success);
  CHECK(rec.steps == 1);
  CHECK(rec.total_reward > 900.0 * c.weights.goal - 100.0);
}

TEST_CASE("an obstacle under the start pose collides on the first step") {
  Scenario s = Scenario::standard();
  s.obstacles.push_back(Disc{s.box_start, 25.0});
  const TrainConfig c = small_config(ExplorationMode::random);
  AgentTeam team(c.n_agents, state_count(c.angle_bins));
  Rng rng(1);
  const auto rec = run_episode(s, team, ExplorationPolicy::uniform(), c, 1.0, rng);
  CHECK(rec.outcome == Outcome::collision);
  CHECK(rec.steps == 1);
  CHECK(rec.total_reward < -900.0 * c.weights.collision + 100.0);
}

TEST_CASE("fully exploratory episodes end within the step limit in both modes") {
  const Scenario s = Scenario::standard();
  for (ExplorationMode mode : {ExplorationMode::random, ExplorationMode::spi}) {
    TrainConfig c = small_config(mode);
    c.n_agents = 15;
    const auto map = std::make_shared<const SpiMap>(SpiMap::build({400, 0.1, 0.3, 2}));
    const auto policy = mode == ExplorationMode::spi ? ExplorationPolicy::shared(map) : ExplorationPolicy::uniform();
    AgentTeam team(c.n_agents, state_count(c.angle_bins));
    for (std::uint64_t e = 0; e < 10; ++e) {
      Rng rng(e);
      const auto rec = run_episode(s, team, policy, c, 1.0, rng, e);
      CHECK(rec.steps >= 1);
      CHECK(rec.steps <= s.max_steps);
      CHECK((rec.outcome == Outcome::timeout) == (rec.steps == s.max_steps));
    }
  }
}

TEST_CASE("training is reproducible") {
  const Scenario s = Scenario::standard();
  TrainConfig c = small_config(ExplorationMode::spi);
  c.episodes = 1;
  CHECK(train(c, s).log.episodes.size() == 1);

  c.episodes = 5;
  const auto a = train(c, s);
  const auto b = train(c, s);
  CHECK(a.log.episodes == b.log.episodes);
  CHECK(a.team.tables == b.team.tables);
  CHECK(a.log.mode == ExplorationMode::spi);
  CHECK(a.log.speed_factor == c.speed_factor);
  for (std::size_t e = 0; e < a.log.episodes.size(); ++e) {
    CHECK(a.log.episodes[e].episode_index == e);
    CHECK(a.log.episodes[e].epsilon == c.epsilon_for(e));
  }

  c.seed = 6;
  CHECK_FALSE(train(c, s).log.episodes == a.log.episodes);
}

TEST_CASE("an SPI map must be larger than the team") {
  const Scenario s = Scenario::standard();
  TrainConfig c = small_config(ExplorationMode::spi);
  CHECK(oracle::throws_kind([&] { train(c, s, onehot_map(4)); }, ErrorKind::invalid_argument));
  CHECK_NOTHROW(train(c, s, onehot_map(5)));
}

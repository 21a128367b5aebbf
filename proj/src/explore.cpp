#include "spibox/explore.hpp"

#include "spibox/error.hpp"

namespace spibox {

std::string_view to_string(ExplorationMode mode) {
  return mode == ExplorationMode::spi ? "spi" : "random";
}

ExplorationMode parse_mode(std::string_view text) {
  if (text == "spi") return ExplorationMode::spi;
  if (text == "random") return ExplorationMode::random;
  fail(ErrorKind::invalid_argument, "mode must be 'spi' or 'random', got '" + std::string(text) + "'");
}

ExplorationPolicy ExplorationPolicy::uniform() { return ExplorationPolicy(nullptr); }

ExplorationPolicy ExplorationPolicy::shared(std::shared_ptr<const SpiMap> map) {
  require(map != nullptr, "spi exploration needs a map");
  return ExplorationPolicy(std::move(map));
}

std::optional<Key> ExplorationPolicy::step_key(Rng& rng) const {
  if (!map_) return std::nullopt;
  return draw_key(map_->size(), rng);
}

Action ExplorationPolicy::explore(std::optional<Key> key, Rng& rng) const {
  if (!map_) return static_cast<Action>(rng.below(kNumActions) + 1);
  if (!key) fail(ErrorKind::contract_violation, "spi exploration without a step key");
  return sample_action((*map_)[key->value], rng);
}

}  // namespace spibox

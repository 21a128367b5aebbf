#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "spibox/rng.hpp"
#include "spibox/spi.hpp"
#include "spibox/world.hpp"

namespace spibox {

enum class ExplorationMode { random, spi };

std::string_view to_string(ExplorationMode mode);
ExplorationMode parse_mode(std::string_view text);

/// What an agent does on an exploration step: a uniform pick, or a draw from
/// the map entry selected by the step's shared key.
class ExplorationPolicy {
 public:
  static ExplorationPolicy uniform();
  static ExplorationPolicy shared(std::shared_ptr<const SpiMap> map);

  ExplorationMode mode() const { return map_ ? ExplorationMode::spi : ExplorationMode::random; }
  const SpiMap* map() const { return map_.get(); }

  /// One key per step in spi mode, none in random mode.
  std::optional<Key> step_key(Rng& rng) const;

  /// Throws contract_violation when the policy is spi and `key` is empty.
  Action explore(std::optional<Key> key, Rng& rng) const;

 private:
  explicit ExplorationPolicy(std::shared_ptr<const SpiMap> map) : map_(std::move(map)) {}

  std::shared_ptr<const SpiMap> map_;
};

}  // namespace spibox

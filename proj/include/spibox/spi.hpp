#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spibox/rng.hpp"
#include "spibox/world.hpp"

namespace spibox {

/// Probability distribution over the six push actions.
using Pdl = std::array<double, kNumActions>;

inline constexpr double kPdlTolerance = 1e-9;
inline constexpr std::uint64_t kMaxQuadAttempts = 1'000'000;

/// Empty when `candidate` is a valid distribution, otherwise the reason.
std::optional<std::string> validate_pdl(std::span<const double> candidate);

/// Four base values (weak direction first) and the 4x4 cyclic matrix built
/// from them: row i is the base vector shifted right by i.
using Quad = std::array<std::array<double, 4>, 4>;

struct QuadDraw {
  std::array<double, 4> base{};
  std::uint64_t attempts = 0;
};

/// Throws invalid_argument unless 0 < cap <= 1, 0 <= margin < 1 and
/// cap + margin <= 1.
void check_generation_params(double cap, double margin);

/// Rejection-samples base values until |base[0] - base[2]| >= margin.
QuadDraw draw_quad_base(double cap, double margin, Rng& rng,
                        std::uint64_t max_attempts = kMaxQuadAttempts);
Quad cyclic_quad(const std::array<double, 4>& base);
Quad generate_quad(double cap, double margin, Rng& rng);

/// Splits the two lateral columns into equal halves and renormalizes.
Pdl expand_4_to_6(const std::array<double, 4>& row);

struct MapParams {
  std::size_t n_pdls = 4000;
  double cap = 0.1;
  double margin = 0.3;
  std::uint64_t seed = 0;
};

/// Immutable lookup table shared read-only by every agent.
class SpiMap {
 public:
  /// Generated map: n_pdls / 4 cyclic quads.
  static SpiMap build(const MapParams& params);

  /// Hand-specified map (tests, degenerate policies). Every entry is validated.
  static SpiMap from_pdls(std::vector<Pdl> pdls);

  std::size_t size() const { return pdls_.size(); }
  const Pdl& operator[](std::size_t key) const { return pdls_.at(key); }
  std::span<const Pdl> pdls() const { return pdls_; }
  const std::optional<MapParams>& params() const { return params_; }

  /// True when the map is a whole number of quads whose rows are cyclic
  /// shifts of a single expanded 4-vector.
  bool has_quad_structure(double tol = 1e-12) const;

  std::string serialize() const;
  static SpiMap parse(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static SpiMap load(const std::filesystem::path& path);

 private:
  SpiMap(std::vector<Pdl> pdls, std::optional<MapParams> params)
      : pdls_(std::move(pdls)), params_(params) {}

  std::vector<Pdl> pdls_;
  std::optional<MapParams> params_;
};

struct Key {
  std::size_t value = 0;
};

Key draw_key(std::size_t map_size, Rng& rng);
Action sample_action(const Pdl& pdl, Rng& rng);

}  // namespace spibox

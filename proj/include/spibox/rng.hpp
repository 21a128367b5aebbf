#pragma once

#include <cstdint>
#include <random>

namespace spibox {

/// splitmix64 finalizer, used to derive statistically independent seeds for
/// substreams (per shard, per episode, per run) from one master seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master,
                                       std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(master) ^ mix_seed(stream + 0x5851f42d4c957f2dULL));
}

/// Thin wrapper over mt19937_64. The standard distributions are
/// implementation-defined, so uniform doubles and bounded integers are drawn
/// by hand to keep outputs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= limit) return r % bound;
    }
  }

  static Rng derived(std::uint64_t master, std::uint64_t stream) {
    return Rng(substream_seed(master, stream));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spibox

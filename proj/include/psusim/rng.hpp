#pragma once

// Deterministic random generation. All experiment randomness derives from a
// single 64-bit root seed; independent streams are split off with a fixed
// mixing constant so that packet p of a run is reproducible in isolation.

#include <cstdint>

#include "psusim/bits.hpp"

namespace psusim {

// splitmix64 (Steele, Lea, Flood). Small, fast, and fully specified, so
// output bytes are identical on every platform.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Modulo draw; the bias is immaterial for bound <= 256.
  constexpr std::uint64_t next_below(std::uint64_t bound) {
    return next() % bound;
  }

 private:
  std::uint64_t state_;
};

/// Seed for substream `stream` of generator rooted at `root`.
constexpr std::uint64_t stream_seed(std::uint64_t root, std::uint64_t stream) {
  SplitMix64 mix(root ^ stream * 0xA24BAED4963EE407ull);
  return mix.next();
}

/// Generator for packet `packet_index` of the run rooted at `root`.
constexpr SplitMix64 packet_rng(std::uint64_t root, std::uint64_t packet_index) {
  return SplitMix64(stream_seed(root, packet_index));
}

// Distribution of random link traffic.
//
// PopcountUniform draws the ones count uniformly from [0, 8] and then a
// uniform bit pattern with that count; equivalently, each word's bits are
// Bernoulli with a per-word density drawn uniformly from [0, 1]. Bit
// marginals stay at 1/2 (baseline BT is the analytic 64 per flit) while the
// ones-count spread matches the reordering behavior measured in hardware
// traffic. Uniform draws plain i.i.d. bytes; its ones counts concentrate
// binomially around 4, where ordering has almost no effect.
enum class TrafficModel { PopcountUniform, Uniform };

/// One random word under the given traffic model.
Word random_word(SplitMix64& rng, TrafficModel model);

}  // namespace psusim

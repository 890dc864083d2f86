#pragma once

#include <cstdint>
#include <limits>

namespace walksparse {

/// Named random substreams. Every random decision in the library is drawn
/// from (seed, stream, index) so that results do not depend on how the work
/// is partitioned across threads.
enum class Stream : std::uint64_t {
  kEdgeSampling = 0x65646765u,
  kWalkExtension = 0x77616c6bu,
  kJlSketch = 0x6a6c736bu,
  kTreeRoots = 0x74726565u,
  kGenerate = 0x67656e65u,
};

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

  /// Generator for item `index` of substream `stream` under `seed`.
  static constexpr SplitMix64 substream(std::uint64_t seed, Stream stream,
                                        std::uint64_t index) {
    std::uint64_t s = splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL *
                                                (static_cast<std::uint64_t>(stream) + 1));
    s = splitmix64_mix(s ^ (index + 0x632be59bd9b4e019ULL));
    return SplitMix64(s);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift; the bias is < bound / 2^64.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  constexpr bool coin() { return ((*this)() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace walksparse

#pragma once

#include <cstdint>

namespace pgs {

/// SplitMix64 (Steele, Lea, Flood 2014). Used for all seeded randomness:
/// model generation, Monte-Carlo sampling, refutation sampling. Splittable,
/// so worker streams can be derived deterministically from one seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). Rejection-free modulo is fine for our n << 2^64.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  /// Derives an independent stream; distinct tags give distinct streams.
  SplitMix64 split(std::uint64_t tag) {
    SplitMix64 mixer(state_ ^ (0x632be59bd9b4e019ULL * (tag + 1)));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace pgs

/*
 * rng.hpp
 *
 * Deterministic random streams. Every consumer derives its own stream from
 * (seed, stream ids), so results do not depend on scheduling or on how many
 * worker threads draw samples.
 */

#ifndef TEMPO_RNG_HPP_
#define TEMPO_RNG_HPP_

#include <cstdint>

namespace tempo {

/** @brief splitmix64 generator with an explicit, stable state transition. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /* uniform in [0, 1), 53 mantissa bits */
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /* derive an independent stream id from a seed and up to two indices */
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    Rng r(seed ^ (a * 0xD1B54A32D192ED03ULL) ^ (b * 0x9E6C63D0876A9DECULL));
    return r.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace tempo

#endif /* TEMPO_RNG_HPP_ */

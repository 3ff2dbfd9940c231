#ifndef QSN_RNG_H_
#define QSN_RNG_H_

#include <cstdint>

namespace qsn {

/// Seedable, splittable PRNG (xoshiro256** seeded through splitmix64).
///
/// Monte Carlo trials draw from per-trial substreams derived from
/// (seed, stream index), so results are independent of how trials are
/// batched across threads. All bounded draws avoid std::uniform_*
/// distributions, which are not bit-stable across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) { reseed(seed); }
  Rng(uint64_t seed, uint64_t stream) { reseed(split_mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))); }

  /// Substream generator for trial `stream`; stable under any batching.
  static Rng substream(uint64_t seed, uint64_t stream) { return Rng(seed, stream); }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound). bound > 0. Unbiased (rejection sampling).
  uint64_t next_below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static uint64_t split_mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  void reseed(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
  }

  uint64_t s_[4];
};

}  // namespace qsn

#endif  // QSN_RNG_H_

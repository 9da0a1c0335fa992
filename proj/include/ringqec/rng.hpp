#pragma once

#include <array>
#include <cstdint>

namespace ringqec {

// Reproducibility contract: every draw below is integer arithmetic on
// xoshiro256++ words, so identical seeds give identical streams on any
// platform. No libm, no <random> distributions.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Stateless mix of (seed, counter) into a fresh 64-bit seed. Used for
/// counter-based per-trial / per-stream seeding.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t s = seed ^ (counter * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull);
  return splitmix64(s);
}

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

/// Probability as a 128-bit threshold against uniform 64-bit words:
/// P(word < threshold) == clamp(p, 0, 1) exactly at the endpoints.
inline unsigned __int128 prob_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return static_cast<unsigned __int128>(1) << 64;
  // p < 1: p * 2^64 < 2^64; long double (x87 80-bit) holds it exactly enough.
  return static_cast<unsigned __int128>(static_cast<long double>(p) * 18446744073709551616.0L);
}

inline bool threshold_hit(std::uint64_t word, unsigned __int128 threshold) {
  return static_cast<unsigned __int128>(word) < threshold;
}

}  // namespace ringqec

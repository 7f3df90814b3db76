#pragma once

#include <cstdint>
#include <span>

namespace albsim {

// Seed expansion step (splitmix64). Also used to derive independent
// sub-streams from one master seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (stream * 0xd1b54a32d192ed03ULL);
  std::uint64_t a = splitmix64_next(s);
  return a ^ splitmix64_next(s);
}

// xoshiro256++ generator. The algorithm is fixed here (rather than relying
// on <random> distributions) so that a (config, seed) pair reproduces the
// exact same trajectory on every platform and standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive.
  std::uint32_t uniform_int(std::uint32_t lo, std::uint32_t hi) {
    const std::uint64_t range = std::uint64_t(hi) - lo + 1;
    const std::uint64_t word = next() >> 32;
    return lo + static_cast<std::uint32_t>((word * range) >> 32);
  }

  std::size_t pick(std::size_t count) {
    return uniform_int(0, static_cast<std::uint32_t>(count - 1));
  }

  // Samples an index from a normalized probability vector.
  std::size_t categorical(std::span<const double> probabilities) {
    const double u = uniform();
    double cumulative = 0.0;
    for (std::size_t i = 0; i + 1 < probabilities.size(); ++i) {
      cumulative += probabilities[i];
      if (u < cumulative) return i;
    }
    return probabilities.empty() ? 0 : probabilities.size() - 1;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace albsim

#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace qslab {

// SplitMix64 step function (Vigna). Used to expand seeds and to derive
// independent per-stream seeds from (seed, stream index).
struct SplitMix64 {
  std::uint64_t state;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Derives the seed of an independent stream. Results depend only on
// (seed, stream), never on scheduling, so parallel runs are reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 sm(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL)));
  sm.next();
  return sm.next();
}

// xoshiro256** 1.0 (Blackman & Vigna, public domain), state expanded from a
// 64-bit seed via SplitMix64.
class Xoshiro256ss {
public:
  explicit constexpr Xoshiro256ss(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : state_) w = sm.next();
  }

  constexpr std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Xoshiro256ss& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

// Uniform double in the open interval (0, 1); zero is rejected.
inline double uniform_open01(Xoshiro256ss& rng) {
  for (;;) {
    const double u = uniform01(rng);
    if (u > 0.0) return u;
  }
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Xoshiro256ss& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng.next();
    if (r >= threshold) return r % bound;
  }
}

// Fisher-Yates shuffle.
template <class T>
void shuffle(std::span<T> a, Xoshiro256ss& rng) {
  for (std::size_t i = a.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(a[i - 1], a[j]);
  }
}

}  // namespace qslab

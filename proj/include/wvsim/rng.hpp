#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wvsim {
namespace rng {

// Self-contained generator so sampled output is bit-identical across
// platforms and standard library versions. std::mt19937 itself is portable
// but the distributions wrapped around it are not, hence the hand-rolled
// uniform and normal below.
//
// State setup is splitmix64 (fills the xoshiro state from one seed word),
// stepping is xoshiro256++.
struct SplitMix64 {
  std::uint64_t s;

  explicit SplitMix64(std::uint64_t seed) : s(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
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

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal, Box-Muller cosine branch. No spare is cached, so a
  // generator's output stream is a pure function of its state with no
  // parity effects across calls.
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Generator for one trial of an ensemble. Seeding by index, not by splitting
// a shared stream, is what makes results independent of how trials are
// distributed over worker threads.
inline Xoshiro256pp trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  return Xoshiro256pp(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ull);
}

}  // namespace rng
}  // namespace wvsim

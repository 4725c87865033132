#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fedsched {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic RNG used everywhere randomness is needed. mt19937_64 output is
// bit-exact across platforms; we avoid std:: distributions because their
// sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Modulo bias is irrelevant at our scales and
  // keeps the draw sequence trivially reproducible.
  std::uint64_t uniform_int(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  // Independent deterministic substream derived from the original seed.
  Rng fork(std::string_view tag) const { return Rng(splitmix64(seed_ ^ fnv1a64(tag))); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace fedsched

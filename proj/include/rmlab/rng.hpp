#pragma once

#include <cstdint>

namespace rmlab {

// splitmix64 step (Vigna). Used both as the seed-splitting rule and as the
// whitener inside Rng seeding.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed-splitting rule used by every experiment driver:
//   seed_i = splitmix64(master ^ splitmix64(index + 1))
// Trials, retries and sweep rows each get an independent derived seed, so
// results are deterministic for a given master seed regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = index + 1;
  std::uint64_t mixed = master ^ splitmix64(s);
  return splitmix64(mixed);
}

// Small deterministic PRNG (xoshiro-free, pure splitmix64 stream).
// All randomness in the library flows through this class so that a master
// seed pins every result bit-exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t u64() { return splitmix64(state_); }

  // Uniform in [0,1) with 53 random bits.
  double u01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  // One fair coin flip; consumes buffered 64-bit blocks one bit at a time.
  bool fair_bit() {
    if (bit_count_ == 0) {
      bit_buffer_ = u64();
      bit_count_ = 64;
    }
    bool b = bit_buffer_ & 1u;
    bit_buffer_ >>= 1;
    --bit_count_;
    return b;
  }

  // Uniform k-bit value, 0 <= k <= 64.
  std::uint64_t bits(int k) {
    if (k <= 0) return 0;
    return k >= 64 ? u64() : (u64() >> (64 - k));
  }

  // Unbiased uniform value in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t mask = ~0ull >> __builtin_clzll(n | 1);
    for (;;) {
      std::uint64_t v = u64() & mask;
      if (v < n) return v;
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t bit_buffer_ = 0;
  int bit_count_ = 0;
};

}  // namespace rmlab

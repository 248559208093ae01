#pragma once

#include <cstdint>
#include <string_view>

namespace oertopics {

/// pcg32: the PCG XSH-RR 64/32 generator (setseq variant). Tiny state,
/// identical output on every platform, published reference values. All
/// randomness in the library flows through this generator so that a seed
/// fully determines a run.
class Pcg32 {
 public:
  static constexpr uint64_t kDefaultStream = 54u;

  explicit Pcg32(uint64_t seed, uint64_t stream = kDefaultStream)
      : state_(0u), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
  }

  uint32_t next_u32() {
    const uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
    const uint32_t rot = static_cast<uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

  /// Unbiased integer in [0, bound) via rejection sampling.
  uint32_t next_below(uint32_t bound) {
    const uint32_t threshold = (-bound) % bound;
    for (;;) {
      const uint32_t r = next_u32();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_double01() {
    const uint64_t hi = next_u32();
    const uint64_t lo = next_u32();
    const uint64_t bits = ((hi << 32u) | lo) >> 11u;
    return static_cast<double>(bits) * 0x1.0p-53;
  }

  uint64_t state() const { return state_; }
  uint64_t stream() const { return inc_; }

 private:
  uint64_t state_;
  uint64_t inc_;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30u)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27u)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31u);
}

/// FNV-1a 64-bit, used to fold document ids into seeds.
inline uint64_t hash_string(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic subordinate seed for (base seed, salt). Adding one salt to
/// a run never perturbs the seeds derived for the others.
inline uint64_t derive_seed(uint64_t base_seed, uint64_t salt) {
  return splitmix64(base_seed ^ splitmix64(salt));
}

inline uint64_t derive_seed(uint64_t base_seed, std::string_view salt) {
  return derive_seed(base_seed, hash_string(salt));
}

}  // namespace oertopics

#pragma once

#include <cstdint>

namespace owlbench {

// SplitMix64. Chosen over std::mt19937_64 + <random> distributions because the
// distribution algorithms are implementation-defined; this keeps dataset
// generation bit-reproducible across compilers.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejection-free modulo bias is negligible for the
  // bounds used here (< 2^32), but we reject anyway to stay exact.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Derives an independent stream for (seed, stream_id) pairs; used to give
  // every dataset instance its own deterministic generator.
  static SplitMix64 stream(uint64_t seed, uint64_t stream_id) {
    SplitMix64 mix(seed ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL));
    mix.next_u64();
    return mix;
  }

 private:
  uint64_t state_;
};

}  // namespace owlbench

#pragma once

#include <cstdint>
#include <random>

namespace softtorus {

// Deterministic random source. Every draw is specified on top of the
// std::mt19937_64 bit stream (which the standard pins down exactly), so
// two builds produce the same stream; only libm rounding differs across
// platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; consumes exactly two uniforms
  double gaussian();

  // uniform index in [0, n)
  std::uint32_t uniform_index(std::uint32_t n);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 of x; used to derive independent substreams
std::uint64_t scramble_seed(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

}  // namespace softtorus

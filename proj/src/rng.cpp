#include "softtorus/rng.hpp"

#include <cmath>
#include <numbers>

namespace softtorus {

double SeededRng::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  // 1 - u1 lies in (0, 1], so the log is finite
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint32_t SeededRng::uniform_index(std::uint32_t n) {
  if (n == 0) return 0;
  auto k = static_cast<std::uint32_t>(uniform() * n);
  return k < n ? k : n - 1;
}

std::uint64_t scramble_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  return scramble_seed(base ^ scramble_seed(salt));
}

}  // namespace softtorus

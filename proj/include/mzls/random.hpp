#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mzls {

// Counter-based generator: every draw is a pure function of
// (seed, index, stream), so results do not depend on evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t index, std::uint64_t stream) const noexcept {
    std::uint64_t z = seed_ ^ mix(index * 0x9E3779B97F4A7C15ULL + stream);
    return mix(z + 0xD1B54A32D192ED03ULL * (stream + 1));
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index, std::uint64_t stream) const noexcept {
    return static_cast<double>(bits(index, stream) >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on streams (2*stream, 2*stream + 1).
  double normal(std::uint64_t index, std::uint64_t stream) const noexcept {
    const double u1 = 1.0 - uniform(index, 2 * stream);  // (0, 1]
    const double u2 = uniform(index, 2 * stream + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t seed_;
};

}  // namespace mzls

#pragma once

#include <cstdint>

namespace limsup {

// Counter-based generator: the value at (seed, stream, index) is a pure function of
// the triple, so parallel draws are reproducible regardless of thread count.
// Mixing is SplitMix64 (Steele, Lea, Flood 2014) applied to a Weyl sequence.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix(key_ + (index + 1) * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  constexpr CounterRng split(std::uint64_t stream) const noexcept {
    CounterRng child(0);
    child.key_ = mix(key_ ^ mix(stream + 0xA0761D6478BD642FULL));
    return child;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

}  // namespace limsup

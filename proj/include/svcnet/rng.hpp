#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace svcnet {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mixes a root seed with a stream label and item index. Every randomized
/// stage derives its own stream this way, so adding a stage or changing the
/// worker count never perturbs another stage's draws.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
  for (unsigned char c : label) h = splitmix64(h ^ c);
  return splitmix64(h ^ index);
}

/// mt19937_64 with fully specified integer and real draws. The std::
/// distributions are implementation-defined, which would break the
/// byte-identical-output contracts; these are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  /// Independent substream for (label, index).
  Rng stream(std::string_view label, std::uint64_t index = 0) const {
    return Rng(derive_seed(seed_, label, index));
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampled, no bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = eng_();
      if (r >= threshold) return r % bound;
    }
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace svcnet

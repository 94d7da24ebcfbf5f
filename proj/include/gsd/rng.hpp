#pragma once

#include <cstdint>
#include <random>

namespace gsd {

// Stream tags for deriving per-purpose seeds from one master seed.
// A (master, purpose, counter) triple always maps to the same engine seed,
// so trials can run in any order and still reproduce.
enum class SeedPurpose : std::uint64_t {
  GraphPlacement = 1,
  Coefficients = 2,
  ObservationNoise = 3,
  Quantization = 4,
  Instance = 5,
};

namespace detail {

// splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Counter-based split: three splitmix64 rounds keep sibling streams from
// overlapping for any combination of purpose and counter.
constexpr std::uint64_t derive_seed(std::uint64_t master, SeedPurpose purpose,
                                    std::uint64_t counter = 0) {
  using detail::splitmix64;
  return splitmix64(splitmix64(splitmix64(master) ^ static_cast<std::uint64_t>(purpose)) ^
                    counter);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace gsd

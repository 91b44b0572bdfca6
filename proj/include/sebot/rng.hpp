#pragma once

#include <cstdint>
#include <random>

namespace sebot {

// Stream tags for deriving independent generators from one run seed.
enum class Stream : std::uint64_t {
  Activity = 1,
  Detector = 2,
  Selection = 3,
  Diffusion = 4,
  Network = 5,
  Split = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive combination of two 64-bit keys.
constexpr std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream s) noexcept {
  return mix_keys(seed, static_cast<std::uint64_t>(s));
}

/// Uniform double in [0,1) from the top 53 bits of a 64-bit word.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, Stream s) {
  return Engine{derive_seed(seed, s)};
}

inline double next_unit(Engine& eng) { return to_unit(eng()); }

}  // namespace sebot

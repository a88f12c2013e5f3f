#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace rmnk {

/// Every random draw in the library goes through one of these, seeded from a derived seed.
using RandomStream = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed splitting. A child seed depends only on (parent, tag), so streams for
/// different purposes never perturb each other.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag) noexcept {
  return splitmix64(splitmix64(parent) ^ fnv1a(tag));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent ^ 0x5851f42d4c957f2dULL) + splitmix64(index));
}

inline RandomStream make_stream(std::uint64_t seed) { return RandomStream(seed); }

inline std::size_t uniform_index(RandomStream& rng, std::size_t count) {
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

}  // namespace rmnk

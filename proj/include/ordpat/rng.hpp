#pragma once

#include <cstdint>

namespace ordpat {

/// splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * Deterministic child seed for (stream, index) under a master seed.
 *
 * Every random consumer (bootstrap replicate, benchmark replication, series
 * jitter, pair job) draws from its own child seed, so results depend only on
 * the master seed and never on scheduling.
 */
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                                  std::uint64_t index = 0) noexcept {
  return mix64(mix64(mix64(master) ^ (stream * 0xd1b54a32d192ed03ULL)) ^ (index * 0x8cb92ba72f3d8dd7ULL));
}

}  // namespace ordpat

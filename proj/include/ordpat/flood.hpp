#pragma once

#include <utility>
#include <vector>

namespace ordpat {

/// (class id, lower non-exceedance bound) pairs, ascending.
struct FloodClassBoundaries {
  std::vector<std::pair<int, double>> lower_bounds;

  /// 0: p < 0.5, 1: [0.5, 0.8), 2: [0.8, 0.933), 3: [0.933, 0.966), 4: p >= 0.966.
  static FloodClassBoundaries standard();
};

/// Throws std::invalid_argument for malformed boundaries.
void validate(const FloodClassBoundaries& boundaries);

/// Class of a peak with the given non-exceedance probability; the upper class wins at a boundary.
[[nodiscard]] int classify_peak(double non_exceedance,
                                const FloodClassBoundaries& boundaries = FloodClassBoundaries::standard());

}  // namespace ordpat

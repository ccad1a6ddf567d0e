#include "ordpat/flood.hpp"

#include <stdexcept>
#include <string>

namespace ordpat {

FloodClassBoundaries FloodClassBoundaries::standard() {
  return {{{0, 0.0}, {1, 0.5}, {2, 0.8}, {3, 0.933}, {4, 0.966}}};
}

void validate(const FloodClassBoundaries& boundaries) {
  const auto& b = boundaries.lower_bounds;
  if (b.empty()) throw std::invalid_argument("flood class boundaries are empty");
  if (!(b.front().second < 0.5)) throw std::invalid_argument("lowest class must start below 0.5");
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].first != static_cast<int>(i))
      throw std::invalid_argument("flood classes must be contiguous from 0, found " + std::to_string(b[i].first));
    if (i > 0 && !(b[i].second > b[i - 1].second))
      throw std::invalid_argument("flood class bounds must be strictly increasing");
    if (b[i].second < 0.0 || b[i].second > 1.0) throw std::invalid_argument("flood class bound outside [0, 1]");
  }
}

int classify_peak(double non_exceedance, const FloodClassBoundaries& boundaries) {
  if (!(non_exceedance >= 0.0 && non_exceedance <= 1.0))
    throw std::invalid_argument("non-exceedance probability must lie in [0, 1]");
  int cls = boundaries.lower_bounds.front().first;
  for (const auto& [id, lower] : boundaries.lower_bounds)
    if (non_exceedance >= lower) cls = id;
  return cls;
}

}  // namespace ordpat

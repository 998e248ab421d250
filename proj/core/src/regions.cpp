#include "vmnet/regions.hpp"

#include <algorithm>

#include "vmnet/errors.hpp"

namespace vmnet {

std::size_t region_side(std::size_t h, std::size_t w, int scale_index) {
  if (scale_index < 1 || scale_index > kNumScales) {
    throw ArgumentError("scale index must be in 1..3");
  }
  const std::size_t side = 2 * std::min(h, w) / static_cast<std::size_t>(scale_index + 1);
  return std::max<std::size_t>(1, side);
}

std::vector<std::size_t> window_offsets(std::size_t extent, std::size_t side) {
  if (side >= extent) return {0};
  const std::size_t span = extent - side;
  const std::size_t max_windows = span + 1;
  std::size_t m = 2;
  // step = span/(m-1) <= 0.6*side, in integers: 5*span <= 3*side*(m-1)
  while (m < max_windows && 5 * span > 3 * side * (m - 1)) ++m;
  std::vector<std::size_t> offsets(m);
  for (std::size_t i = 0; i < m; ++i) offsets[i] = i * span / (m - 1);
  return offsets;
}

std::vector<Region> rmac_regions(std::size_t h, std::size_t w) {
  if (h == 0 || w == 0) throw ArgumentError("rmac_regions: dims must be positive");
  std::vector<Region> regions;
  for (int t = 1; t <= kNumScales; ++t) {
    const std::size_t side = region_side(h, w, t);
    const auto rows = window_offsets(h, side);
    const auto cols = window_offsets(w, side);
    for (std::size_t r : rows) {
      for (std::size_t c : cols) regions.push_back({r, c, side, t});
    }
  }
  return regions;
}

}  // namespace vmnet

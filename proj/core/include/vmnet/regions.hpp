#pragma once

#include <cstddef>
#include <vector>

namespace vmnet {

/// Square pooling window in feature-map cells.
struct Region {
  std::size_t row0 = 0;
  std::size_t col0 = 0;
  std::size_t side = 1;
  int scale_index = 1;  // 1 = largest windows, 3 = smallest

  std::size_t area() const { return side * side; }
  friend bool operator==(const Region&, const Region&) = default;
};

inline constexpr int kNumScales = 3;

/// Window side for scale t in {1,2,3}: max(1, floor(2*min(h,w)/(t+1))).
std::size_t region_side(std::size_t h, std::size_t w, int scale_index);

/// Offsets of windows of length `side` along an axis of length `extent`.
/// One window when side >= extent; otherwise the fewest windows (at least two)
/// whose step is <= 0.6*side, capped at the number of distinct integer offsets.
/// Offsets are floor(i*(extent-side)/(m-1)), so the last window is flush with the edge.
std::vector<std::size_t> window_offsets(std::size_t extent, std::size_t side);

/// All windows for the three scales, ordered by scale then row-major.
std::vector<Region> rmac_regions(std::size_t h, std::size_t w);

}  // namespace vmnet

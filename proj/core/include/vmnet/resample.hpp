#pragma once

#include <cstddef>

#include "vmnet/tensor.hpp"

namespace vmnet {

/// Bilinear resampling with half-pixel centres (align_corners = false).
/// Source coordinates are clamped to the edge, so each output is a convex
/// combination of at most four source samples.
Plane bilinear_resize(const Plane& src, std::size_t out_h, std::size_t out_w);

}  // namespace vmnet

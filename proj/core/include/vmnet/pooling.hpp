#pragma once

#include <vector>

#include "vmnet/regions.hpp"
#include "vmnet/tensor.hpp"

namespace vmnet {

enum class PoolMode { kMax, kLp, kAvg };

/// Pool every channel of `t` over `r`. Returns the raw (un-normalized) C-vector.
///  max: maximum over the window
///  avg: mean over all window cells, masked zeros included
///  lp:  ((1/|r|) * sum max(x,0)^p_pool)^(1/p_pool)
/// Throws ArgumentError if the region leaves the tensor, or for lp with p_pool < 1.
std::vector<double> pool_region(const FeatureTensor& t, const Region& r, PoolMode mode,
                                double p_pool);

}  // namespace vmnet

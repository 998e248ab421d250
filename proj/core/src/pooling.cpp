#include "vmnet/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vmnet/errors.hpp"

namespace vmnet {

std::vector<double> pool_region(const FeatureTensor& t, const Region& r, PoolMode mode,
                                double p_pool) {
  if (r.side == 0 || r.row0 + r.side > t.height() || r.col0 + r.side > t.width()) {
    throw ArgumentError("region (" + std::to_string(r.row0) + "," + std::to_string(r.col0) +
                        ") side " + std::to_string(r.side) + " leaves the " +
                        std::to_string(t.height()) + "x" + std::to_string(t.width()) + " grid");
  }
  if (mode == PoolMode::kLp && !(p_pool >= 1.0 && std::isfinite(p_pool))) {
    throw ArgumentError("lp pooling exponent must be >= 1, got " + std::to_string(p_pool));
  }

  const double cells = static_cast<double>(r.area());
  std::vector<double> out(t.channels());
  for (std::size_t c = 0; c < t.channels(); ++c) {
    double acc = mode == PoolMode::kMax ? -std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = r.row0; i < r.row0 + r.side; ++i) {
      for (std::size_t j = r.col0; j < r.col0 + r.side; ++j) {
        const double x = t.at(c, i, j);
        switch (mode) {
          case PoolMode::kMax: acc = std::max(acc, x); break;
          case PoolMode::kAvg: acc += x; break;
          case PoolMode::kLp: acc += std::pow(std::max(x, 0.0), p_pool); break;
        }
      }
    }
    switch (mode) {
      case PoolMode::kMax: out[c] = acc; break;
      case PoolMode::kAvg: out[c] = acc / cells; break;
      case PoolMode::kLp: out[c] = std::pow(acc / cells, 1.0 / p_pool); break;
    }
  }
  return out;
}

}  // namespace vmnet

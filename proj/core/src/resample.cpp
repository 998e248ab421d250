#include "vmnet/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vmnet/errors.hpp"

namespace vmnet {

namespace {

struct Tap {
  std::size_t lo;
  std::size_t hi;
  double frac;  // weight of `hi`
};

std::vector<Tap> axis_taps(std::size_t in, std::size_t out) {
  std::vector<Tap> taps(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  for (std::size_t o = 0; o < out; ++o) {
    double src = (static_cast<double>(o) + 0.5) * scale - 0.5;
    src = std::max(src, 0.0);
    auto lo = static_cast<std::size_t>(std::floor(src));
    lo = std::min(lo, in - 1);
    const std::size_t hi = std::min(lo + 1, in - 1);
    const double frac = (hi == lo) ? 0.0 : src - static_cast<double>(lo);
    taps[o] = {lo, hi, frac};
  }
  return taps;
}

}  // namespace

Plane bilinear_resize(const Plane& src, std::size_t out_h, std::size_t out_w) {
  if (out_h == 0 || out_w == 0) throw ArgumentError("bilinear_resize: target dims must be positive");
  if (src.size() == 0) throw ArgumentError("bilinear_resize: empty source plane");

  const auto rows = axis_taps(src.height(), out_h);
  const auto cols = axis_taps(src.width(), out_w);
  Plane out(out_h, out_w);
  for (std::size_t i = 0; i < out_h; ++i) {
    const auto& ry = rows[i];
    for (std::size_t j = 0; j < out_w; ++j) {
      const auto& cx = cols[j];
      const double top = (1.0 - cx.frac) * src.at(ry.lo, cx.lo) + cx.frac * src.at(ry.lo, cx.hi);
      const double bot = (1.0 - cx.frac) * src.at(ry.hi, cx.lo) + cx.frac * src.at(ry.hi, cx.hi);
      out.at(i, j) = static_cast<float>((1.0 - ry.frac) * top + ry.frac * bot);
    }
  }
  return out;
}

}  // namespace vmnet

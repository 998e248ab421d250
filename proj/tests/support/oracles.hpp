#pragma once

// Brute-force reference implementations. These deliberately avoid the
// engine's helpers (apply_mask, combine, pool_region, rmac_regions, ...) and
// work straight from the defining formulas, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vmnet/tensor.hpp"

namespace vmnet::oracle {

using Bits = std::vector<std::uint8_t>;

// Threshold the depth-wise sum at the shifted power mean; empty -> all ones.
inline Bits variable_mask(const FeatureTensor& t, double p) {
  const std::size_t h = t.height(), w = t.width();
  std::vector<double> a(h * w, 0.0);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j)
      for (std::size_t c = 0; c < t.channels(); ++c) a[i * w + j] += t.at(c, i, j);
  double min_a = a[0];
  for (double x : a) min_a = x < min_a ? x : min_a;
  double s = 0.0;
  for (double x : a) s += std::pow(x - min_a, p);
  const double threshold = std::pow(s / static_cast<double>(h * w), 1.0 / p) + min_a;
  Bits m(h * w);
  bool any = false;
  for (std::size_t k = 0; k < m.size(); ++k) {
    m[k] = a[k] > threshold;
    any = any || m[k];
  }
  if (!any) std::fill(m.begin(), m.end(), 1);
  return m;
}

// Triangle-kernel formulation of half-pixel bilinear resampling:
// out = sum over all source pixels of tri(sy - y) * tri(sx - x) * src(y, x)
// with the sample coordinate clamped into [0, n-1].
inline std::vector<double> bilinear(const std::vector<double>& src, std::size_t in_h,
                                    std::size_t in_w, std::size_t out_h, std::size_t out_w) {
  auto coord = [](std::size_t o, std::size_t in, std::size_t out) {
    double s = (o + 0.5) * static_cast<double>(in) / static_cast<double>(out) - 0.5;
    return std::clamp(s, 0.0, static_cast<double>(in - 1));
  };
  auto tri = [](double d) { return std::max(0.0, 1.0 - std::abs(d)); };
  std::vector<double> out(out_h * out_w, 0.0);
  for (std::size_t i = 0; i < out_h; ++i) {
    const double sy = coord(i, in_h, out_h);
    for (std::size_t j = 0; j < out_w; ++j) {
      const double sx = coord(j, in_w, out_w);
      double v = 0.0;
      for (std::size_t y = 0; y < in_h; ++y)
        for (std::size_t x = 0; x < in_w; ++x)
          v += tri(sy - static_cast<double>(y)) * tri(sx - static_cast<double>(x)) * src[y * in_w + x];
      out[i * out_w + j] = v;
    }
  }
  return out;
}

struct Window {
  std::size_t r, c, s;
  int scale;
};

// Window geometry written from the placement rule in floating point.
inline std::vector<std::size_t> axis_positions(std::size_t extent, std::size_t s) {
  if (s >= extent) return {0};
  const double span = static_cast<double>(extent - s);
  std::size_t m = 2;
  while (m < extent - s + 1 && span / static_cast<double>(m - 1) > 0.6 * s + 1e-9) ++m;
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < m; ++i) pos.push_back(static_cast<std::size_t>(std::floor(i * span / (m - 1) + 1e-9)));
  return pos;
}

inline std::vector<Window> windows(std::size_t h, std::size_t w) {
  std::vector<Window> out;
  for (int t = 1; t <= 3; ++t) {
    std::size_t s = static_cast<std::size_t>(std::floor(2.0 * std::min(h, w) / (t + 1)));
    if (s < 1) s = 1;
    for (auto r : axis_positions(h, s))
      for (auto c : axis_positions(w, s)) out.push_back({r, c, s, t});
  }
  return out;
}

enum class Op { kMax, kLp, kAvg };

// f_GRM before normalization. `prose` selects avg/lp/max for scales 1/2/3,
// otherwise max/lp/avg. Avg sees vmask AND smask (all ones if that is empty),
// lp and max see vmask; every window is weighted by q_t * vmask coverage.
inline std::vector<double> grmaac_raw(const FeatureTensor& t, const Bits& vm, const Bits& sm,
                                      const double q[3], double p_pool, bool prose = true) {
  const std::size_t h = t.height(), w = t.width(), C = t.channels();
  Bits both(vm.size());
  bool any = false;
  for (std::size_t k = 0; k < vm.size(); ++k) {
    both[k] = vm[k] && sm[k];
    any = any || both[k];
  }
  if (!any) std::fill(both.begin(), both.end(), 1);

  std::vector<double> f(C, 0.0);
  for (const auto& win : windows(h, w)) {
    Op op = Op::kLp;
    if (win.scale == 1) op = prose ? Op::kAvg : Op::kMax;
    if (win.scale == 3) op = prose ? Op::kMax : Op::kAvg;
    const Bits& filter = op == Op::kAvg ? both : vm;
    double covered = 0.0;
    for (std::size_t i = win.r; i < win.r + win.s; ++i)
      for (std::size_t j = win.c; j < win.c + win.s; ++j) covered += vm[i * w + j];
    const double n = static_cast<double>(win.s * win.s);
    const double weight = q[win.scale - 1] * covered / n;
    for (std::size_t c = 0; c < C; ++c) {
      std::vector<double> cells;
      for (std::size_t i = win.r; i < win.r + win.s; ++i)
        for (std::size_t j = win.c; j < win.c + win.s; ++j)
          cells.push_back(filter[i * w + j] ? static_cast<double>(t.at(c, i, j)) : 0.0);
      double v = 0.0;
      if (op == Op::kMax) {
        v = *std::max_element(cells.begin(), cells.end());
      } else if (op == Op::kAvg) {
        for (double x : cells) v += x;
        v /= n;
      } else {
        for (double x : cells) v += std::pow(std::max(x, 0.0), p_pool);
        v = std::pow(v / n, 1.0 / p_pool);
      }
      f[c] += weight * v;
    }
  }
  return f;
}

inline std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  const double n = std::sqrt(s);
  if (n > 1e-12)
    for (double& x : v) x /= n;
  else
    std::fill(v.begin(), v.end(), 0.0);
  return v;
}

// AP(n) from the definition, recounting the relevant prefix at every rank.
inline double ap(const std::vector<std::string>& ranked, const std::set<std::string>& rel,
                 std::size_t n, bool clamp) {
  double s = 0.0;
  for (std::size_t i = 1; i <= n && i <= ranked.size(); ++i) {
    if (!rel.count(ranked[i - 1])) continue;
    std::size_t prefix = 0;
    for (std::size_t k = 0; k < i; ++k) prefix += rel.count(ranked[k]);
    s += static_cast<double>(prefix) / static_cast<double>(i);
  }
  const double denom = clamp ? static_cast<double>(std::min(rel.size(), n)) : static_cast<double>(rel.size());
  return s / denom;
}

inline double map_at_7(const std::map<std::string, std::vector<std::string>>& run,
                       const std::map<std::string, std::set<std::string>>& qrels,
                       bool clamp = false) {
  double total = 0.0;
  for (std::size_t n = 1; n <= 7; ++n) {
    double m = 0.0;
    for (const auto& [q, rel] : qrels) {
      auto it = run.find(q);
      if (it != run.end()) m += ap(it->second, rel, n, clamp);
    }
    total += m / static_cast<double>(qrels.size());
  }
  return total / 7.0;
}

}  // namespace vmnet::oracle

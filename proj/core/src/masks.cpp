#include "vmnet/masks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vmnet/errors.hpp"
#include "vmnet/resample.hpp"

namespace vmnet {

namespace {

std::string dims(std::size_t h, std::size_t w) {
  return std::to_string(h) + "x" + std::to_string(w);
}

std::vector<double> wide_channel_sum(const FeatureTensor& t) {
  const std::size_t n = t.plane_size();
  std::vector<double> acc(n, 0.0);
  for (std::size_t c = 0; c < t.channels(); ++c) {
    const auto ch = t.channel(c);
    for (std::size_t k = 0; k < n; ++k) acc[k] += ch[k];
  }
  return acc;
}

BinaryMask or_all_ones(BinaryMask m) {
  if (m.all_zero()) return BinaryMask::ones(m.height(), m.width());
  return m;
}

}  // namespace

BinaryMask::BinaryMask(std::size_t height, std::size_t width, bool fill)
    : height_(height), width_(width), bits_(height * width, fill ? 1 : 0) {
  if (height == 0 || width == 0) throw ArgumentError("mask dims must be positive");
}

BinaryMask::BinaryMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
  if (height == 0 || width == 0) throw ArgumentError("mask dims must be positive");
  if (bits_.size() != height * width) throw ArgumentError("mask bit count does not match dims");
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw ArgumentError("mask entries must be 0 or 1");
  }
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
  if (height_ != other.height_ || width_ != other.width_) {
    throw ArgumentError("mask dim mismatch: " + dims(height_, width_) + " vs " +
                        dims(other.height_, other.width_));
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

Plane BinaryMask::to_plane() const {
  std::vector<float> v(bits_.begin(), bits_.end());
  return Plane(height_, width_, std::move(v));
}

Plane channel_sum(const FeatureTensor& t) {
  const auto acc = wide_channel_sum(t);
  std::vector<float> out(acc.begin(), acc.end());
  return Plane(t.height(), t.width(), std::move(out));
}

double variable_mask_threshold(std::span<const double> sums, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ArgumentError("variable mask exponent p must be positive, got " + std::to_string(p));
  }
  if (sums.empty()) throw ArgumentError("variable mask of an empty plane");
  const double min_a = *std::min_element(sums.begin(), sums.end());
  double acc = 0.0;
  for (double x : sums) acc += std::pow(x - min_a, p);
  const double mean = acc / static_cast<double>(sums.size());
  return std::pow(mean, 1.0 / p) + min_a;
}

BinaryMask variable_mask(const FeatureTensor& t, double p) {
  const auto sums = wide_channel_sum(t);
  const double threshold = variable_mask_threshold(sums, p);
  std::vector<std::uint8_t> bits(sums.size());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = sums[k] > threshold ? 1 : 0;
  return or_all_ones(BinaryMask(t.height(), t.width(), std::move(bits)));
}

BinaryMask binarize_saliency(const Plane& raw, std::size_t target_h, std::size_t target_w,
                             double threshold) {
  Plane clamped = raw;
  for (float& x : clamped.data()) x = std::clamp(x, 0.0f, 1.0f);
  const Plane resized = bilinear_resize(clamped, target_h, target_w);
  std::vector<std::uint8_t> bits(resized.size());
  const auto data = resized.data();
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = data[k] >= threshold ? 1 : 0;
  return or_all_ones(BinaryMask(target_h, target_w, std::move(bits)));
}

BinaryMask combine(const BinaryMask& a, const BinaryMask& b) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw ArgumentError("mask dim mismatch: " + dims(a.height(), a.width()) + " vs " +
                        dims(b.height(), b.width()));
  }
  std::vector<std::uint8_t> bits(a.size());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = a.bits()[k] & b.bits()[k];
  return or_all_ones(BinaryMask(a.height(), a.width(), std::move(bits)));
}

FeatureTensor apply_mask(const FeatureTensor& t, const BinaryMask& m) {
  if (t.height() != m.height() || t.width() != m.width()) {
    throw ArgumentError("mask " + dims(m.height(), m.width()) + " does not match tensor " +
                        dims(t.height(), t.width()));
  }
  FeatureTensor out = t;
  const auto bits = m.bits();
  for (std::size_t c = 0; c < out.channels(); ++c) {
    auto ch = out.channel(c);
    for (std::size_t k = 0; k < ch.size(); ++k) {
      if (!bits[k]) ch[k] = 0.0f;
    }
  }
  return out;
}

}  // namespace vmnet

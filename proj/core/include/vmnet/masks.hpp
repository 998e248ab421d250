#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vmnet/tensor.hpp"

namespace vmnet {

/// H x W mask with entries in {0, 1}.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t height, std::size_t width, bool fill);
  /// Throws ArgumentError if any entry is not 0 or 1.
  BinaryMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> bits);

  static BinaryMask ones(std::size_t height, std::size_t width) { return {height, width, true}; }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return bits_.size(); }

  std::uint8_t at(std::size_t i, std::size_t j) const { return bits_[i * width_ + j]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  bool all_zero() const noexcept { return count() == 0; }
  bool all_ones() const noexcept { return count() == size(); }
  /// True if every set bit of *this is also set in `other`.
  bool subset_of(const BinaryMask& other) const;

  Plane to_plane() const;

  friend bool operator==(const BinaryMask& a, const BinaryMask& b) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// A[i,j] = sum over channels, accumulated in double.
Plane channel_sum(const FeatureTensor& t);

/// Threshold the channel sum A at
///   T = ((1/(h*w)) * sum (A - minA)^p)^(1/p) + minA
/// keeping cells with A > T. An empty result becomes the all-ones mask.
/// Throws ArgumentError unless p > 0 and finite.
BinaryMask variable_mask(const FeatureTensor& t, double p);

/// The threshold T used by variable_mask over double-precision channel sums.
double variable_mask_threshold(std::span<const double> channel_sums, double p);

/// Clamp raw saliency to [0,1], resample to the target grid, keep value >= threshold.
/// An empty result becomes the all-ones mask.
BinaryMask binarize_saliency(const Plane& raw, std::size_t target_h, std::size_t target_w,
                             double threshold);

/// Elementwise AND with the same all-ones fallback. Throws ArgumentError on dim mismatch.
BinaryMask combine(const BinaryMask& a, const BinaryMask& b);

/// Multiply every channel by the mask. Throws ArgumentError on dim mismatch.
FeatureTensor apply_mask(const FeatureTensor& t, const BinaryMask& m);

}  // namespace vmnet

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vmnet {

/// C x H x W stack of activation maps, stored channel-major then row-major.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  /// Zero-filled tensor. Throws ArgumentError on any zero dimension.
  FeatureTensor(std::size_t channels, std::size_t height, std::size_t width);
  /// Takes ownership of `data`; requires data.size() == C*H*W and finite values.
  FeatureTensor(std::size_t channels, std::size_t height, std::size_t width,
                std::vector<float> data);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept { return height_ * width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  float at(std::size_t c, std::size_t i, std::size_t j) const {
    return data_[(c * height_ + i) * width_ + j];
  }
  float& at(std::size_t c, std::size_t i, std::size_t j) {
    return data_[(c * height_ + i) * width_ + j];
  }

  std::span<const float> channel(std::size_t c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<float> channel(std::size_t c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  /// Exact equality of shape and bit patterns.
  friend bool operator==(const FeatureTensor& a, const FeatureTensor& b);

 private:
  std::size_t channels_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> data_;
};

/// Single H x W map of floats (channel sums, raw saliency).
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t height, std::size_t width, float fill = 0.0f);
  Plane(std::size_t height, std::size_t width, std::vector<float> data);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }

  float at(std::size_t i, std::size_t j) const { return data_[i * width_ + j]; }
  float& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  /// View a C=1 feature tensor as a plane. Throws ArgumentError if C != 1.
  static Plane from_tensor(const FeatureTensor& t);
  FeatureTensor to_tensor() const;

  friend bool operator==(const Plane& a, const Plane& b) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> data_;
};

/// Global image descriptor. Unit L2 norm, or all zeros when the input had no energy.
class Descriptor {
 public:
  Descriptor() = default;
  explicit Descriptor(std::vector<float> values) : values_(std::move(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }
  float operator[](std::size_t i) const { return values_[i]; }
  std::span<const float> values() const noexcept { return values_; }

  bool is_zero() const noexcept;
  double norm() const noexcept;

  friend bool operator==(const Descriptor& a, const Descriptor& b);

 private:
  std::vector<float> values_;
};

/// Norm below which a vector is treated as zero.
inline constexpr double kZeroNormEpsilon = 1e-12;

/// Scale to unit L2 norm (accumulated in double). Vectors with norm <= 1e-12
/// come back as all zeros.
Descriptor l2_normalize(std::span<const double> v);
Descriptor l2_normalize(std::span<const float> v);
Descriptor l2_normalize(const Descriptor& v);

/// Dot product accumulated in double. Throws ArgumentError on dim mismatch.
double dot(const Descriptor& a, const Descriptor& b);

}  // namespace vmnet

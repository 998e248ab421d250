#include "vmnet/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "vmnet/errors.hpp"

namespace vmnet {

namespace {

void require_positive(std::size_t c, std::size_t h, std::size_t w) {
  if (c == 0 || h == 0 || w == 0) {
    throw ArgumentError("tensor dims must be positive, got " + std::to_string(c) + "x" +
                        std::to_string(h) + "x" + std::to_string(w));
  }
}

void require_finite(std::span<const float> data) {
  auto it = std::find_if(data.begin(), data.end(), [](float x) { return !std::isfinite(x); });
  if (it != data.end()) {
    throw ArgumentError("non-finite value at offset " + std::to_string(it - data.begin()));
  }
}

bool bitwise_equal(std::span<const float> a, std::span<const float> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](float x, float y) {
    return std::bit_cast<std::uint32_t>(x) == std::bit_cast<std::uint32_t>(y);
  });
}

}  // namespace

FeatureTensor::FeatureTensor(std::size_t channels, std::size_t height, std::size_t width)
    : channels_(channels), height_(height), width_(width) {
  require_positive(channels, height, width);
  data_.assign(channels * height * width, 0.0f);
}

FeatureTensor::FeatureTensor(std::size_t channels, std::size_t height, std::size_t width,
                             std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  require_positive(channels, height, width);
  if (data_.size() != channels * height * width) {
    throw ArgumentError("tensor data has " + std::to_string(data_.size()) +
                        " values, expected " + std::to_string(channels * height * width));
  }
  require_finite(data_);
}

bool operator==(const FeatureTensor& a, const FeatureTensor& b) {
  return a.channels_ == b.channels_ && a.height_ == b.height_ && a.width_ == b.width_ &&
         bitwise_equal(a.data_, b.data_);
}

Plane::Plane(std::size_t height, std::size_t width, float fill)
    : height_(height), width_(width) {
  require_positive(1, height, width);
  data_.assign(height * width, fill);
}

Plane::Plane(std::size_t height, std::size_t width, std::vector<float> data)
    : height_(height), width_(width), data_(std::move(data)) {
  require_positive(1, height, width);
  if (data_.size() != height * width) {
    throw ArgumentError("plane data has " + std::to_string(data_.size()) +
                        " values, expected " + std::to_string(height * width));
  }
  require_finite(data_);
}

Plane Plane::from_tensor(const FeatureTensor& t) {
  if (t.channels() != 1) {
    throw ArgumentError("expected a single-channel tensor, got C=" +
                        std::to_string(t.channels()));
  }
  return Plane(t.height(), t.width(), std::vector<float>(t.data().begin(), t.data().end()));
}

FeatureTensor Plane::to_tensor() const { return FeatureTensor(1, height_, width_, data_); }

bool Descriptor::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](float x) { return x == 0.0f; });
}

double Descriptor::norm() const noexcept {
  double s = 0.0;
  for (float x : values_) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

bool operator==(const Descriptor& a, const Descriptor& b) {
  return bitwise_equal(a.values_, b.values_);
}

Descriptor l2_normalize(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  const double n = std::sqrt(s);
  std::vector<float> out(v.size(), 0.0f);
  if (n > kZeroNormEpsilon) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<float>(v[i] / n);
  }
  return Descriptor(std::move(out));
}

Descriptor l2_normalize(std::span<const float> v) {
  std::vector<double> wide(v.begin(), v.end());
  return l2_normalize(std::span<const double>(wide));
}

Descriptor l2_normalize(const Descriptor& v) { return l2_normalize(v.values()); }

double dot(const Descriptor& a, const Descriptor& b) {
  if (a.dim() != b.dim()) {
    throw ArgumentError("descriptor dim mismatch: " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += static_cast<double>(a[i]) * b[i];
  return s;
}

}  // namespace vmnet

#pragma once

// FMAP feature-map interchange format, little-endian throughout:
//
//   offset  size  field
//   0       4     magic "FMAP"
//   4       4     version (u32) = 1
//   8       4     ndim (u32) = 3
//   12      12    dims C, H, W (u32 each)
//   24      4*N   N = C*H*W f32 values, channel-major then row-major
//
// Saliency maps are stored with C = 1.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vmnet/tensor.hpp"

namespace vmnet {

inline constexpr std::uint32_t kFmapVersion = 1;
inline constexpr std::uint32_t kFmapNdim = 3;
inline constexpr std::size_t kFmapHeaderSize = 24;

std::vector<std::uint8_t> encode_fmap(const FeatureTensor& t);
/// Throws FormatError naming the offending field; UnsupportedVersionError on version != 1.
FeatureTensor decode_fmap(std::span<const std::uint8_t> bytes);

FeatureTensor load_tensor(const std::filesystem::path& path);
void save_tensor(const FeatureTensor& t, const std::filesystem::path& path);

/// load_tensor followed by a C == 1 check.
Plane load_plane(const std::filesystem::path& path);
void save_plane(const Plane& p, const std::filesystem::path& path);

}  // namespace vmnet

#include "vmnet/fmap_io.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "byte_codec.hpp"
#include "vmnet/errors.hpp"
#include "vmnet/io_util.hpp"

namespace vmnet {

namespace {

constexpr std::string_view kMagic = "FMAP";

}  // namespace

std::vector<std::uint8_t> encode_fmap(const FeatureTensor& t) {
  detail::ByteWriter w;
  w.reserve(kFmapHeaderSize + 4 * t.size());
  w.bytes(kMagic);
  w.u32(kFmapVersion);
  w.u32(kFmapNdim);
  w.u32(static_cast<std::uint32_t>(t.channels()));
  w.u32(static_cast<std::uint32_t>(t.height()));
  w.u32(static_cast<std::uint32_t>(t.width()));
  for (float x : t.data()) w.f32(x);
  return w.take();
}

FeatureTensor decode_fmap(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes);
  if (r.remaining() < 4 || r.bytes(4) != kMagic) throw FormatError("bad magic");
  if (r.remaining() < 4) throw FormatError("truncated header: version");
  const auto version = r.u32();
  if (version != kFmapVersion) {
    throw UnsupportedVersionError("unsupported version: " + std::to_string(version));
  }
  if (r.remaining() < 4) throw FormatError("truncated header: ndim");
  const auto ndim = r.u32();
  if (ndim != kFmapNdim) throw FormatError("bad ndim: " + std::to_string(ndim));
  if (r.remaining() < 12) throw FormatError("truncated header: dims");
  const std::uint64_t c = r.u32();
  const std::uint64_t h = r.u32();
  const std::uint64_t w = r.u32();
  if (c == 0 || h == 0 || w == 0) throw FormatError("bad dims: zero extent");

  // Each dim fits in 32 bits, so c*h fits in 64; guard the final product.
  const std::uint64_t ch = c * h;
  if (w > std::numeric_limits<std::uint64_t>::max() / 4 / ch) {
    throw FormatError("dim overflow: " + std::to_string(c) + "x" + std::to_string(h) + "x" +
                      std::to_string(w));
  }
  const std::uint64_t count = ch * w;
  if (r.remaining() < count * 4) {
    throw FormatError("truncated payload: expected " + std::to_string(count) +
                      " floats, found " + std::to_string(r.remaining() / 4));
  }
  if (r.remaining() > count * 4) {
    throw FormatError("trailing bytes after payload: " + std::to_string(r.remaining() - count * 4));
  }

  std::vector<float> data(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    data[i] = r.f32();
    if (!std::isfinite(data[i])) throw FormatError("non-finite value at index " + std::to_string(i));
  }
  return FeatureTensor(c, h, w, std::move(data));
}

FeatureTensor load_tensor(const std::filesystem::path& path) {
  const auto bytes = io::read_file(path);
  try {
    return decode_fmap(bytes);
  } catch (const UnsupportedVersionError& e) {
    throw UnsupportedVersionError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_tensor(const FeatureTensor& t, const std::filesystem::path& path) {
  io::write_file_atomic(path, encode_fmap(t));
}

Plane load_plane(const std::filesystem::path& path) {
  auto t = load_tensor(path);
  if (t.channels() != 1) {
    throw FormatError(path.string() + ": expected C=1 saliency map, got C=" +
                      std::to_string(t.channels()));
  }
  return Plane::from_tensor(t);
}

void save_plane(const Plane& p, const std::filesystem::path& path) {
  save_tensor(p.to_tensor(), path);
}

}  // namespace vmnet

#include "vmnet/index_store.hpp"

#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <limits>

#include "byte_codec.hpp"
#include "json.hpp"
#include "vmnet/errors.hpp"
#include "vmnet/io_util.hpp"

#ifndef VMNET_VERSION
#define VMNET_VERSION "0.0.0"
#endif

namespace vmnet {

namespace {

constexpr std::string_view kMagic = "VMIX";
constexpr std::size_t kHeaderSize = 4 + 4 + 4 + 4 + 8;
constexpr std::size_t kCrcSize = 4;

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const auto n = static_cast<uInt>(std::min(kChunk, bytes.size() - off));
    crc = crc32(crc, bytes.data() + off, n);
  }
  return static_cast<std::uint32_t>(crc);
}

void write_vector(detail::ByteWriter& w, const Descriptor& d) {
  for (float x : d.values()) w.f32(x);
}

Descriptor read_vector(detail::ByteReader& r, std::size_t dim) {
  std::vector<float> v(dim);
  for (auto& x : v) x = r.f32();
  return Descriptor(std::move(v));
}

}  // namespace

std::string_view engine_version() { return VMNET_VERSION; }

const FeatureSet* Index::find(std::string_view id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const FeatureSet& fs, std::string_view key) {
                               return std::string_view(fs.image_id) < key;
                             });
  if (it == entries_.end() || it->image_id != id) return nullptr;
  return &*it;
}

Index build_index(std::vector<FeatureSet> feature_sets) {
  if (feature_sets.empty()) throw BuildError("cannot build an empty index");
  const std::size_t last_dim = feature_sets.front().vamac.dim();
  const std::size_t middle_dim = feature_sets.front().middle.dim();
  if (last_dim == 0 || middle_dim == 0) throw BuildError("descriptor dims must be positive");
  if (last_dim > std::numeric_limits<std::uint32_t>::max() ||
      middle_dim > std::numeric_limits<std::uint32_t>::max()) {
    throw BuildError("descriptor dims exceed the index format limit");
  }
  for (const auto& fs : feature_sets) {
    if (fs.image_id.empty()) throw BuildError("empty image id");
    if (fs.vamac.dim() != last_dim || fs.grmaac.dim() != last_dim) {
      throw BuildError("dim mismatch for " + fs.image_id + ": last-layer descriptors have " +
                       std::to_string(fs.vamac.dim()) + "/" + std::to_string(fs.grmaac.dim()) +
                       ", index expects " + std::to_string(last_dim));
    }
    if (fs.middle.dim() != middle_dim) {
      throw BuildError("dim mismatch for " + fs.image_id + ": middle descriptor has " +
                       std::to_string(fs.middle.dim()) + ", index expects " +
                       std::to_string(middle_dim));
    }
  }

  std::sort(feature_sets.begin(), feature_sets.end(),
            [](const FeatureSet& a, const FeatureSet& b) { return a.image_id < b.image_id; });
  auto dup = std::adjacent_find(feature_sets.begin(), feature_sets.end(),
                                [](const FeatureSet& a, const FeatureSet& b) {
                                  return a.image_id == b.image_id;
                                });
  if (dup != feature_sets.end()) throw BuildError("duplicate id: " + dup->image_id);

  Index ix;
  ix.entries_ = std::move(feature_sets);
  ix.last_dim_ = last_dim;
  ix.middle_dim_ = middle_dim;
  return ix;
}

std::vector<std::uint8_t> encode_index(const Index& ix) {
  detail::ByteWriter w;
  w.bytes(kMagic);
  w.u32(kIndexVersion);
  w.u32(static_cast<std::uint32_t>(ix.last_dim()));
  w.u32(static_cast<std::uint32_t>(ix.middle_dim()));
  w.u64(ix.size());
  for (const auto& fs : ix.entries()) {
    w.u32(static_cast<std::uint32_t>(fs.image_id.size()));
    w.bytes(fs.image_id);
    write_vector(w, fs.vamac);
    write_vector(w, fs.grmaac);
    write_vector(w, fs.middle);
  }
  w.u32(crc32_of(w.view()));
  return w.take();
}

Index decode_index(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes);
  if (r.remaining() < 4) throw IntegrityError("truncated index: " + std::to_string(bytes.size()) + " bytes");
  if (r.bytes(4) != kMagic) throw FormatError("bad magic");
  if (r.remaining() < 4) throw IntegrityError("truncated index header");
  const auto version = r.u32();
  if (version != kIndexVersion) {
    throw UnsupportedVersionError("unsupported version: " + std::to_string(version));
  }
  if (bytes.size() < kHeaderSize + kCrcSize) throw IntegrityError("truncated index header");

  const auto payload = bytes.first(bytes.size() - kCrcSize);
  detail::ByteReader crc_reader(bytes.subspan(bytes.size() - kCrcSize));
  const std::uint32_t stored = crc_reader.u32();
  const std::uint32_t actual = crc32_of(payload);
  if (stored != actual) throw IntegrityError("checksum mismatch");

  detail::ByteReader body(payload);
  body.bytes(8);
  const std::size_t last_dim = body.u32();
  const std::size_t middle_dim = body.u32();
  const std::uint64_t count = body.u64();
  if (last_dim == 0 || middle_dim == 0) throw FormatError("bad dims: zero descriptor length");
  if (count == 0) throw FormatError("bad count: index has no entries");

  const std::uint64_t vector_bytes = 4 * (2 * static_cast<std::uint64_t>(last_dim) + middle_dim);
  // smallest possible entry: 4-byte length, 1-byte id, vectors
  if (count > body.remaining() / (5 + vector_bytes)) {
    throw FormatError("corrupt length: count " + std::to_string(count) + " exceeds payload");
  }

  std::vector<FeatureSet> entries;
  entries.reserve(count);
  for (std::uint64_t e = 0; e < count; ++e) {
    if (body.remaining() < 4) throw FormatError("corrupt length: entry " + std::to_string(e));
    const std::uint32_t id_len = body.u32();
    if (id_len == 0 || body.remaining() < id_len + vector_bytes) {
      throw FormatError("corrupt length: entry " + std::to_string(e));
    }
    FeatureSet fs;
    fs.image_id = std::string(body.bytes(id_len));
    fs.vamac = read_vector(body, last_dim);
    fs.grmaac = read_vector(body, last_dim);
    fs.middle = read_vector(body, middle_dim);
    if (!entries.empty() && !(entries.back().image_id < fs.image_id)) {
      throw FormatError("entries not in strictly ascending id order at " + fs.image_id);
    }
    entries.push_back(std::move(fs));
  }
  if (body.remaining() != 0) {
    throw FormatError("corrupt length: " + std::to_string(body.remaining()) + " trailing bytes");
  }

  Index ix;
  ix.entries_ = std::move(entries);
  ix.last_dim_ = last_dim;
  ix.middle_dim_ = middle_dim;
  return ix;
}

void save_index(const Index& ix, const std::filesystem::path& path) {
  io::write_file_atomic(path, encode_index(ix));
}

Index load_index(const std::filesystem::path& path) {
  const auto bytes = io::read_file(path);
  try {
    return decode_index(bytes);
  } catch (const UnsupportedVersionError& e) {
    throw UnsupportedVersionError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const IntegrityError& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

IndexManifest make_manifest(const Index& ix, const EngineConfig& cfg) {
  IndexManifest m;
  m.engine_version = std::string(engine_version());
  m.config = cfg;
  m.entry_count = ix.size();
  m.last_dim = static_cast<std::uint32_t>(ix.last_dim());
  m.middle_dim = static_cast<std::uint32_t>(ix.middle_dim());

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.build_timestamp = buf;
  return m;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& index_path) {
  auto p = index_path;
  p += ".manifest.json";
  return p;
}

void save_manifest(const IndexManifest& m, const std::filesystem::path& path) {
  const auto& c = m.config;
  nlohmann::ordered_json j = {
      {"engine_version", m.engine_version},
      {"format_version", m.format_version},
      {"entry_count", m.entry_count},
      {"last_dim", m.last_dim},
      {"middle_dim", m.middle_dim},
      {"build_timestamp", m.build_timestamp},
      {"config",
       {{"p", c.mask.p},
        {"saliency_threshold", c.mask.saliency_threshold},
        {"q1", c.pooling.q1},
        {"q2", c.pooling.q2},
        {"q3", c.pooling.q3},
        {"p_pool", c.pooling.p_pool},
        {"pooling_assignment", std::string(to_string(c.pooling.assignment))},
        {"p_s1", c.fusion.p_s1},
        {"p_s2", c.fusion.p_s2},
        {"p_s3", c.fusion.p_s3},
        {"k", c.k}}},
  };
  const std::string text = j.dump(2) + "\n";
  io::write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                        text.size()));
}

IndexManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  IndexManifest m;
  try {
    const auto j = nlohmann::json::parse(in);
    m.engine_version = j.at("engine_version").get<std::string>();
    m.format_version = j.at("format_version").get<std::uint32_t>();
    m.entry_count = j.at("entry_count").get<std::uint64_t>();
    m.last_dim = j.at("last_dim").get<std::uint32_t>();
    m.middle_dim = j.at("middle_dim").get<std::uint32_t>();
    m.build_timestamp = j.at("build_timestamp").get<std::string>();
    const auto& c = j.at("config");
    m.config.mask.p = c.at("p").get<double>();
    m.config.mask.saliency_threshold = c.at("saliency_threshold").get<double>();
    m.config.pooling.q1 = c.at("q1").get<double>();
    m.config.pooling.q2 = c.at("q2").get<double>();
    m.config.pooling.q3 = c.at("q3").get<double>();
    m.config.pooling.p_pool = c.at("p_pool").get<double>();
    m.config.pooling.assignment =
        parse_pooling_assignment(c.at("pooling_assignment").get<std::string>());
    m.config.fusion.p_s1 = c.at("p_s1").get<double>();
    m.config.fusion.p_s2 = c.at("p_s2").get<double>();
    m.config.fusion.p_s3 = c.at("p_s3").get<double>();
    m.config.k = c.at("k").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace vmnet

#pragma once

// VMIX index file, little-endian throughout:
//
//   magic "VMIX" | version u32 = 1 | last_dim u32 | middle_dim u32 | count u64
//   count x { id_len u32 | id bytes (UTF-8) | vamac f32[last_dim]
//             | grmaac f32[last_dim] | middle f32[middle_dim] }
//   crc32 u32 over every preceding byte
//
// The sidecar manifest (JSON) records the configuration the index was built with.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vmnet/config.hpp"
#include "vmnet/descriptors.hpp"

namespace vmnet {

inline constexpr std::uint32_t kIndexVersion = 1;

struct IndexManifest {
  std::string engine_version;
  std::uint32_t format_version = kIndexVersion;
  EngineConfig config;
  std::uint64_t entry_count = 0;
  std::uint32_t last_dim = 0;
  std::uint32_t middle_dim = 0;
  std::string build_timestamp;  // ISO-8601 UTC
};

/// Immutable database of feature sets sorted by image id (byte order), ids unique.
class Index {
 public:
  Index() = default;

  const std::vector<FeatureSet>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t last_dim() const noexcept { return last_dim_; }
  std::size_t middle_dim() const noexcept { return middle_dim_; }

  /// Pointer to the entry with this id, or nullptr.
  const FeatureSet* find(std::string_view id) const;

  friend bool operator==(const Index&, const Index&) = default;

 private:
  friend Index build_index(std::vector<FeatureSet> feature_sets);
  friend Index decode_index(std::span<const std::uint8_t> bytes);

  std::vector<FeatureSet> entries_;
  std::size_t last_dim_ = 0;
  std::size_t middle_dim_ = 0;
};

/// Sorts by id. Throws BuildError on an empty input, a duplicate id
/// ("duplicate id: X") or inconsistent descriptor dims.
Index build_index(std::vector<FeatureSet> feature_sets);

std::vector<std::uint8_t> encode_index(const Index& ix);
/// Throws IntegrityError (truncated, checksum mismatch), FormatError (bad magic,
/// corrupt lengths) or UnsupportedVersionError.
Index decode_index(std::span<const std::uint8_t> bytes);

void save_index(const Index& ix, const std::filesystem::path& path);
Index load_index(const std::filesystem::path& path);

IndexManifest make_manifest(const Index& ix, const EngineConfig& cfg);
std::filesystem::path manifest_path_for(const std::filesystem::path& index_path);
void save_manifest(const IndexManifest& m, const std::filesystem::path& path);
IndexManifest load_manifest(const std::filesystem::path& path);

/// Library version string.
std::string_view engine_version();

}  // namespace vmnet

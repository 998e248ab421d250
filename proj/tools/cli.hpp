#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vmnet/config.hpp"
#include "vmnet/index_store.hpp"

namespace vmnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the binary and the tests. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One image of a build manifest. Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::filesystem::path last;
  std::filesystem::path middle;
  std::filesystem::path saliency;
};

/// Parses the JSON array of {id, last, middle, saliency} objects.
std::vector<ManifestEntry> load_build_manifest(const std::filesystem::path& path);

/// Loads every entry's tensors and extracts its feature set, `threads` at a
/// time. Results are in manifest order whatever the thread count; the first
/// failing entry (in manifest order) is rethrown with its id and path.
std::vector<FeatureSet> extract_all(const std::vector<ManifestEntry>& entries,
                                    const EngineConfig& cfg, std::size_t threads);

Index build_from_manifest(const std::filesystem::path& manifest, const EngineConfig& cfg,
                          std::size_t threads);

}  // namespace vmnet::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace vmnet::io {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Writes to a sibling temp file then renames, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace vmnet::io

#include <atomic>
#include <exception>
#include <fstream>
#include <thread>

#include "cli.hpp"
#include "json.hpp"
#include "vmnet/descriptors.hpp"
#include "vmnet/errors.hpp"
#include "vmnet/fmap_io.hpp"

namespace vmnet::cli {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

FeatureSet extract_one(const ManifestEntry& e, const EngineConfig& cfg) {
  auto load = [&](const std::filesystem::path& p, const char* role) {
    if (!std::filesystem::exists(p)) {
      throw IoError("image " + e.id + ": missing " + role + " file " + p.string());
    }
    try {
      return load_tensor(p);
    } catch (const Error& err) {
      throw FormatError("image " + e.id + ": " + role + " file: " + err.what());
    }
  };
  const auto last = load(e.last, "last");
  const auto middle = load(e.middle, "middle");
  const auto sal = load(e.saliency, "saliency");
  if (sal.channels() != 1) {
    throw FormatError("image " + e.id + ": saliency file " + e.saliency.string() +
                      " has C=" + std::to_string(sal.channels()) + ", expected 1");
  }
  return extract_feature_set(e.id, last, middle, Plane::from_tensor(sal), cfg);
}

}  // namespace

std::vector<ManifestEntry> load_build_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const auto base = path.parent_path();
  std::vector<ManifestEntry> entries;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!j.is_array()) throw FormatError(path.string() + ": manifest must be a JSON array");
    for (const auto& item : j) {
      ManifestEntry e;
      e.id = item.at("id").get<std::string>();
      if (e.id.empty()) throw FormatError(path.string() + ": empty image id");
      e.last = resolve(base, item.at("last").get<std::string>());
      e.middle = resolve(base, item.at("middle").get<std::string>());
      e.saliency = resolve(base, item.at("saliency").get<std::string>());
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
  if (entries.empty()) throw BuildError(path.string() + ": manifest lists no images");
  return entries;
}

std::vector<FeatureSet> extract_all(const std::vector<ManifestEntry>& entries,
                                    const EngineConfig& cfg, std::size_t threads) {
  std::vector<FeatureSet> out(entries.size());
  std::vector<std::exception_ptr> errors(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        out[i] = extract_one(entries[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, entries.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Index build_from_manifest(const std::filesystem::path& manifest, const EngineConfig& cfg,
                          std::size_t threads) {
  return build_index(extract_all(load_build_manifest(manifest), cfg, threads));
}

}  // namespace vmnet::cli

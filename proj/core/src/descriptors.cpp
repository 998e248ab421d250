#include "vmnet/descriptors.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "vmnet/errors.hpp"
#include "vmnet/regions.hpp"

namespace vmnet {

namespace {

void require_mask_dims(const FeatureTensor& t, const BinaryMask& m, const char* which) {
  if (m.height() != t.height() || m.width() != t.width()) {
    throw ArgumentError(std::string(which) + " " + std::to_string(m.height()) + "x" +
                        std::to_string(m.width()) + " does not match tensor " +
                        std::to_string(t.height()) + "x" + std::to_string(t.width()));
  }
}

double coverage(const BinaryMask& m, const Region& r) {
  std::size_t on = 0;
  for (std::size_t i = r.row0; i < r.row0 + r.side; ++i) {
    for (std::size_t j = r.col0; j < r.col0 + r.side; ++j) on += m.at(i, j);
  }
  return static_cast<double>(on) / static_cast<double>(r.area());
}

}  // namespace

Descriptor mac(const FeatureTensor& t) {
  std::vector<double> raw(t.channels());
  for (std::size_t c = 0; c < t.channels(); ++c) {
    const auto ch = t.channel(c);
    raw[c] = *std::max_element(ch.begin(), ch.end());
  }
  return l2_normalize(std::span<const double>(raw));
}

Descriptor vamac(const FeatureTensor& t, const BinaryMask& vmask, const BinaryMask& smask) {
  require_mask_dims(t, vmask, "variable mask");
  require_mask_dims(t, smask, "saliency mask");
  return mac(apply_mask(t, combine(vmask, smask)));
}

PoolMode pool_mode_for_scale(int scale_index, PoolingAssignment assignment) {
  switch (scale_index) {
    case 1: return assignment == PoolingAssignment::kProse ? PoolMode::kAvg : PoolMode::kMax;
    case 2: return PoolMode::kLp;
    case 3: return assignment == PoolingAssignment::kProse ? PoolMode::kMax : PoolMode::kAvg;
    default: throw ArgumentError("scale index must be in 1..3");
  }
}

std::vector<double> grmaac_raw(const FeatureTensor& t, const BinaryMask& vmask,
                               const BinaryMask& smask, const PoolingWeights& w) {
  require_mask_dims(t, vmask, "variable mask");
  require_mask_dims(t, smask, "saliency mask");

  // Avg windows see both masks; lp and max windows see only the variable mask.
  const FeatureTensor both = apply_mask(t, combine(vmask, smask));
  const FeatureTensor variable_only = apply_mask(t, vmask);

  std::vector<double> acc(t.channels(), 0.0);
  for (const Region& r : rmac_regions(t.height(), t.width())) {
    const double q = w.weight(r.scale_index);
    if (q == 0.0) continue;
    const double cov = coverage(vmask, r);
    if (cov == 0.0) continue;
    const PoolMode mode = pool_mode_for_scale(r.scale_index, w.assignment);
    const FeatureTensor& src = mode == PoolMode::kAvg ? both : variable_only;
    const auto pooled = pool_region(src, r, mode, w.p_pool);
    const double scale = q * cov;
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += scale * pooled[c];
  }
  return acc;
}

Descriptor grmaac(const FeatureTensor& t, const BinaryMask& vmask, const BinaryMask& smask,
                  const PoolingWeights& w) {
  const auto raw = grmaac_raw(t, vmask, smask, w);
  return l2_normalize(std::span<const double>(raw));
}

Descriptor middle_descriptor(const FeatureTensor& mid, const Plane& raw_saliency,
                             const MaskConfig& cfg) {
  const BinaryMask vmask = variable_mask(mid, cfg.p);
  const BinaryMask smask =
      binarize_saliency(raw_saliency, mid.height(), mid.width(), cfg.saliency_threshold);
  return vamac(mid, vmask, smask);
}

FeatureSet extract_feature_set(std::string image_id, const FeatureTensor& last,
                               const FeatureTensor& mid, const Plane& raw_saliency,
                               const EngineConfig& cfg) {
  if (image_id.empty()) throw ArgumentError("image id must be non-empty");
  const BinaryMask vmask = variable_mask(last, cfg.mask.p);
  const BinaryMask smask =
      binarize_saliency(raw_saliency, last.height(), last.width(), cfg.mask.saliency_threshold);
  FeatureSet fs;
  fs.image_id = std::move(image_id);
  fs.vamac = vamac(last, vmask, smask);
  fs.grmaac = grmaac(last, vmask, smask, cfg.pooling);
  fs.middle = middle_descriptor(mid, raw_saliency, cfg.mask);
  return fs;
}

}  // namespace vmnet

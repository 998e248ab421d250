#pragma once

#include <string>

#include "vmnet/config.hpp"
#include "vmnet/masks.hpp"
#include "vmnet/pooling.hpp"
#include "vmnet/tensor.hpp"

namespace vmnet {

/// Per-channel spatial max, L2-normalized.
Descriptor mac(const FeatureTensor& t);

/// MAC after filtering with combine(vmask, smask).
Descriptor vamac(const FeatureTensor& t, const BinaryMask& vmask, const BinaryMask& smask);

/// Pooling operator applied at a given scale under an assignment.
PoolMode pool_mode_for_scale(int scale_index, PoolingAssignment assignment);

/// Unnormalized regional sum: for every window R at scale t,
///   q_t * (sum of vmask over R / |R|) * pool_t(filtered t, R)
/// where avg windows see the tensor filtered by vmask AND smask and lp/max
/// windows see it filtered by vmask alone.
std::vector<double> grmaac_raw(const FeatureTensor& t, const BinaryMask& vmask,
                               const BinaryMask& smask, const PoolingWeights& w);

Descriptor grmaac(const FeatureTensor& t, const BinaryMask& vmask, const BinaryMask& smask,
                  const PoolingWeights& w);

/// VAMAC on a middle-layer tensor, with its own variable mask and the
/// saliency map resampled to the middle-layer grid.
Descriptor middle_descriptor(const FeatureTensor& mid, const Plane& raw_saliency,
                             const MaskConfig& cfg);

struct FeatureSet {
  std::string image_id;
  Descriptor vamac;
  Descriptor grmaac;
  Descriptor middle;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

FeatureSet extract_feature_set(std::string image_id, const FeatureTensor& last,
                               const FeatureTensor& mid, const Plane& raw_saliency,
                               const EngineConfig& cfg);

}  // namespace vmnet

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vmnet/config.hpp"
#include "vmnet/descriptors.hpp"
#include "vmnet/index_store.hpp"

namespace vmnet {

struct Hit {
  std::string image_id;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const Hit&, const Hit&) = default;
};

/// p_s1 * <vamac> + p_s2 * <grmaac> + p_s3 * <middle>. Descriptors are already
/// unit length so plain dot products are cosines. Throws ArgumentError on dim mismatch.
double similarity(const FeatureSet& q, const FeatureSet& d, const FusionWeights& w);

/// Result order: score descending, then image id ascending.
bool hit_before(double score_a, const std::string& id_a, double score_b, const std::string& id_b);

/// Exhaustive scan returning min(k, |ix|) hits. `threads` > 1 scores in
/// contiguous chunks; output is identical for every thread count.
std::vector<Hit> rank_topk(const FeatureSet& q, const Index& ix, std::size_t k,
                           const FusionWeights& w, std::size_t threads = 1);

/// `rank<TAB>image_id<TAB>score` with six decimals, one line per hit.
void write_hits(std::ostream& os, const std::vector<Hit>& hits);

}  // namespace vmnet

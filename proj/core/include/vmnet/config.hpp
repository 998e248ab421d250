#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace vmnet {

struct MaskConfig {
  double p = 1.0;                   // variable-mask generalized-mean exponent, > 0
  double saliency_threshold = 0.5;  // applied after resampling, in [0, 1]

  void validate() const;
};

/// Which pooling operator each window scale uses. Scale 1 is the largest.
enum class PoolingAssignment {
  kProse,     // avg -> largest, lp -> medium, max -> smallest
  kEquation,  // max -> largest, lp -> medium, avg -> smallest
};

std::string_view to_string(PoolingAssignment a);
PoolingAssignment parse_pooling_assignment(std::string_view s);

struct PoolingWeights {
  double q1 = 0.5;
  double q2 = 0.5;
  double q3 = 1.0;
  double p_pool = 3.0;
  PoolingAssignment assignment = PoolingAssignment::kProse;

  double weight(int scale_index) const;
  void validate() const;
};

struct FusionWeights {
  double p_s1 = 1.0;  // VAMAC
  double p_s2 = 1.7;  // GRMAAC
  double p_s3 = 1.0;  // middle

  double sum() const { return p_s1 + p_s2 + p_s3; }
  void validate() const;
};

struct EngineConfig {
  MaskConfig mask;
  PoolingWeights pooling;
  FusionWeights fusion;
  std::size_t k = 7;

  void validate() const;
};

}  // namespace vmnet

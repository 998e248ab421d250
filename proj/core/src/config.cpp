#include "vmnet/config.hpp"

#include <cmath>

#include "vmnet/errors.hpp"

namespace vmnet {

namespace {

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void MaskConfig::validate() const {
  if (!(std::isfinite(p) && p > 0.0)) throw ArgumentError("p must be positive");
  if (!(saliency_threshold >= 0.0 && saliency_threshold <= 1.0)) {
    throw ArgumentError("saliency threshold must be in [0, 1]");
  }
}

std::string_view to_string(PoolingAssignment a) {
  return a == PoolingAssignment::kProse ? "prose" : "equation";
}

PoolingAssignment parse_pooling_assignment(std::string_view s) {
  if (s == "prose") return PoolingAssignment::kProse;
  if (s == "equation") return PoolingAssignment::kEquation;
  throw ArgumentError("pooling assignment must be 'prose' or 'equation', got '" +
                      std::string(s) + "'");
}

double PoolingWeights::weight(int scale_index) const {
  switch (scale_index) {
    case 1: return q1;
    case 2: return q2;
    case 3: return q3;
    default: throw ArgumentError("scale index must be in 1..3");
  }
}

void PoolingWeights::validate() const {
  if (!non_negative(q1) || !non_negative(q2) || !non_negative(q3)) {
    throw ArgumentError("pooling weights q1..q3 must be non-negative");
  }
  if (q1 + q2 + q3 <= 0.0) throw ArgumentError("at least one pooling weight must be positive");
  if (!(std::isfinite(p_pool) && p_pool >= 1.0)) throw ArgumentError("p_pool must be >= 1");
}

void FusionWeights::validate() const {
  if (!non_negative(p_s1) || !non_negative(p_s2) || !non_negative(p_s3)) {
    throw ArgumentError("fusion weights must be non-negative");
  }
  if (sum() <= 0.0) throw ArgumentError("at least one fusion weight must be positive");
}

void EngineConfig::validate() const {
  mask.validate();
  pooling.validate();
  fusion.validate();
  if (k == 0) throw ArgumentError("k must be positive");
}

}  // namespace vmnet

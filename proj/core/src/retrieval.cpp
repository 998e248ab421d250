#include "vmnet/retrieval.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <thread>

#include "vmnet/errors.hpp"

namespace vmnet {

namespace {

struct Scored {
  double score;
  const FeatureSet* entry;
};

bool scored_before(const Scored& a, const Scored& b) {
  return hit_before(a.score, a.entry->image_id, b.score, b.entry->image_id);
}

// Scores entries[begin, end) and keeps the k best in result order.
std::vector<Scored> top_of_chunk(const FeatureSet& q, const std::vector<FeatureSet>& entries,
                                 std::size_t begin, std::size_t end, std::size_t k,
                                 const FusionWeights& w) {
  std::vector<Scored> scored;
  scored.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) scored.push_back({similarity(q, entries[i], w), &entries[i]});
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), scored_before);
  scored.resize(keep);
  return scored;
}

}  // namespace

double similarity(const FeatureSet& q, const FeatureSet& d, const FusionWeights& w) {
  return w.p_s1 * dot(q.vamac, d.vamac) + w.p_s2 * dot(q.grmaac, d.grmaac) +
         w.p_s3 * dot(q.middle, d.middle);
}

bool hit_before(double score_a, const std::string& id_a, double score_b, const std::string& id_b) {
  if (score_a != score_b) return score_a > score_b;
  return id_a < id_b;
}

std::vector<Hit> rank_topk(const FeatureSet& q, const Index& ix, std::size_t k,
                           const FusionWeights& w, std::size_t threads) {
  if (k == 0) throw ArgumentError("k must be positive");
  if (ix.empty()) return {};
  if (q.vamac.dim() != ix.last_dim() || q.grmaac.dim() != ix.last_dim() ||
      q.middle.dim() != ix.middle_dim()) {
    throw ArgumentError("query dims (" + std::to_string(q.vamac.dim()) + ", " +
                        std::to_string(q.middle.dim()) + ") do not match index dims (" +
                        std::to_string(ix.last_dim()) + ", " + std::to_string(ix.middle_dim()) +
                        ")");
  }

  const auto& entries = ix.entries();
  const std::size_t n = entries.size();
  threads = std::clamp<std::size_t>(threads, 1, n);

  std::vector<Scored> merged;
  if (threads == 1) {
    merged = top_of_chunk(q, entries, 0, n, k, w);
  } else {
    std::vector<std::vector<Scored>> partial(threads);
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = n * t / threads;
        const std::size_t end = n * (t + 1) / threads;
        pool.emplace_back([&, t, begin, end] { partial[t] = top_of_chunk(q, entries, begin, end, k, w); });
      }
    }
    for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
    const std::size_t keep = std::min(k, merged.size());
    std::partial_sort(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(keep),
                      merged.end(), scored_before);
    merged.resize(keep);
  }

  std::vector<Hit> hits;
  hits.reserve(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    hits.push_back({merged[i].entry->image_id, merged[i].score, i + 1});
  }
  return hits;
}

void write_hits(std::ostream& os, const std::vector<Hit>& hits) {
  char buf[64];
  for (const auto& h : hits) {
    std::snprintf(buf, sizeof buf, "%.6f", h.score);
    os << h.rank << '\t' << h.image_id << '\t' << buf << '\n';
  }
}

}  // namespace vmnet

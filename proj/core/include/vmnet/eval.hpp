#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace vmnet {

using Qrels = std::map<std::string, std::set<std::string>>;
using Run = std::map<std::string, std::vector<std::string>>;

inline constexpr std::size_t kMapCutoff = 7;

struct ApOptions {
  /// Divide by min(R, n) instead of R.
  bool clamp_denominator = false;
};

/// AP(n) = sum_{i<=n} rel(i) * (relevant in top i) / i, divided by |relevant|.
/// Throws ArgumentError on n == 0 or an empty relevant set.
double ap_at_n(std::span<const std::string> retrieved, const std::set<std::string>& relevant,
               std::size_t n, ApOptions opts = {});

struct QueryScore {
  std::string query_id;
  std::vector<double> ap;  // ap[n-1] = AP(n), n = 1..7
  double mean_ap = 0.0;    // mean over n
};

struct MapReport {
  double map_at_7 = 0.0;
  std::vector<double> map_n;         // MAP(n), n = 1..7
  std::vector<QueryScore> per_query;  // in qrels order
};

/// MAP(n) averages AP(n) over every qrels query (missing run entries score 0);
/// MAP@7 averages MAP(1..7). Throws ValidationError when the run names a query
/// absent from qrels, repeats an id within a query, or qrels holds an empty set.
MapReport evaluate_run(const Run& run, const Qrels& qrels, ApOptions opts = {});

double map_at_7(const Run& run, const Qrels& qrels, ApOptions opts = {});

/// `query_id<TAB>relevant_image_id` per line. Blank lines ignored.
Qrels parse_qrels(std::istream& in, const std::string& source = "qrels");
/// `query_id<TAB>rank<TAB>image_id` per line; lists are ordered by rank.
Run parse_run(std::istream& in, const std::string& source = "run");

Qrels load_qrels(const std::filesystem::path& path);
Run load_run(const std::filesystem::path& path);

/// `MAP@7 = x.xxxxxx`, then a TSV header and one row per query.
void write_report(std::ostream& os, const MapReport& report);

}  // namespace vmnet

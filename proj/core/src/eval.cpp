#include "vmnet/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "vmnet/errors.hpp"

namespace vmnet {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

double ap_at_n(std::span<const std::string> retrieved, const std::set<std::string>& relevant,
               std::size_t n, ApOptions opts) {
  if (n == 0) throw ArgumentError("AP cutoff n must be positive");
  if (relevant.empty()) throw ArgumentError("relevant set must be non-empty");
  const std::size_t limit = std::min(n, retrieved.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    if (relevant.contains(retrieved[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  const std::size_t denom = opts.clamp_denominator ? std::min(relevant.size(), n) : relevant.size();
  return sum / static_cast<double>(denom);
}

MapReport evaluate_run(const Run& run, const Qrels& qrels, ApOptions opts) {
  for (const auto& [qid, ids] : run) {
    if (!qrels.contains(qid)) throw ValidationError("run query not in qrels: " + qid);
    std::unordered_set<std::string_view> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        throw ValidationError("duplicate image id " + id + " in run for query " + qid);
      }
    }
  }
  if (qrels.empty()) throw ValidationError("qrels has no queries");

  MapReport report;
  report.map_n.assign(kMapCutoff, 0.0);
  static const std::vector<std::string> kNone;
  for (const auto& [qid, relevant] : qrels) {
    if (relevant.empty()) throw ValidationError("empty relevance set for query " + qid);
    const auto it = run.find(qid);
    const auto& ids = it == run.end() ? kNone : it->second;
    QueryScore qs;
    qs.query_id = qid;
    qs.ap.resize(kMapCutoff);
    double total = 0.0;
    for (std::size_t n = 1; n <= kMapCutoff; ++n) {
      qs.ap[n - 1] = ap_at_n(ids, relevant, n, opts);
      report.map_n[n - 1] += qs.ap[n - 1];
      total += qs.ap[n - 1];
    }
    qs.mean_ap = total / static_cast<double>(kMapCutoff);
    report.per_query.push_back(std::move(qs));
  }
  double total = 0.0;
  for (auto& m : report.map_n) {
    m /= static_cast<double>(qrels.size());
    total += m;
  }
  report.map_at_7 = total / static_cast<double>(kMapCutoff);
  return report;
}

double map_at_7(const Run& run, const Qrels& qrels, ApOptions opts) {
  return evaluate_run(run, qrels, opts).map_at_7;
}

Qrels parse_qrels(std::istream& in, const std::string& source) {
  Qrels qrels;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_cr(raw);
    if (blank(line)) continue;
    const auto f = split_tabs(line);
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError(source, line_no, "expected query_id<TAB>relevant_image_id");
    }
    qrels[std::string(f[0])].insert(std::string(f[1]));
  }
  return qrels;
}

Run parse_run(std::istream& in, const std::string& source) {
  std::map<std::string, std::vector<std::pair<std::size_t, std::string>>> ranked;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_cr(raw);
    if (blank(line)) continue;
    const auto f = split_tabs(line);
    if (f.size() != 3 || f[0].empty() || f[2].empty()) {
      throw ParseError(source, line_no, "expected query_id<TAB>rank<TAB>image_id");
    }
    std::size_t rank = 0;
    const auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), rank);
    if (ec != std::errc{} || ptr != f[1].data() + f[1].size() || rank == 0) {
      throw ParseError(source, line_no, "rank must be a positive integer, got '" +
                                            std::string(f[1]) + "'");
    }
    auto& list = ranked[std::string(f[0])];
    for (const auto& [r, _] : list) {
      if (r == rank) throw ParseError(source, line_no, "duplicate rank " + std::to_string(rank));
    }
    list.emplace_back(rank, std::string(f[2]));
  }

  Run run;
  for (auto& [qid, list] : ranked) {
    std::sort(list.begin(), list.end());
    auto& ids = run[qid];
    for (auto& [_, id] : list) ids.push_back(std::move(id));
  }
  return run;
}

Qrels load_qrels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_qrels(in, path.string());
}

Run load_run(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_run(in, path.string());
}

void write_report(std::ostream& os, const MapReport& report) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", report.map_at_7);
  os << "MAP@7 = " << buf << '\n';
  os << "query_id";
  for (std::size_t n = 1; n <= kMapCutoff; ++n) os << "\tAP@" << n;
  os << "\tmean\n";
  for (const auto& q : report.per_query) {
    os << q.query_id;
    for (double ap : q.ap) {
      std::snprintf(buf, sizeof buf, "%.6f", ap);
      os << '\t' << buf;
    }
    std::snprintf(buf, sizeof buf, "%.6f", q.mean_ap);
    os << '\t' << buf << '\n';
  }
}

}  // namespace vmnet

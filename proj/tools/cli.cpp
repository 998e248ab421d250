#include "cli.hpp"

#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "vmnet/descriptors.hpp"
#include "vmnet/errors.hpp"
#include "vmnet/eval.hpp"
#include "vmnet/fmap_io.hpp"
#include "vmnet/masks.hpp"
#include "vmnet/retrieval.hpp"

namespace vmnet::cli {

namespace {

std::size_t default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void add_config_flags(CLI::App& cmd, EngineConfig& cfg, std::string& pooling) {
  cmd.add_option("--p", cfg.mask.p, "variable-mask exponent")->envname("VMNET_P")->capture_default_str();
  cmd.add_option("--saliency-threshold", cfg.mask.saliency_threshold, "saliency binarization threshold")
      ->envname("VMNET_SALIENCY_THRESHOLD")->capture_default_str();
  cmd.add_option("--q1", cfg.pooling.q1, "weight of the largest windows")->envname("VMNET_Q1")->capture_default_str();
  cmd.add_option("--q2", cfg.pooling.q2, "weight of the medium windows")->envname("VMNET_Q2")->capture_default_str();
  cmd.add_option("--q3", cfg.pooling.q3, "weight of the smallest windows")->envname("VMNET_Q3")->capture_default_str();
  cmd.add_option("--p-pool", cfg.pooling.p_pool, "Lp-pooling exponent")->envname("VMNET_P_POOL")->capture_default_str();
  cmd.add_option("--pooling", pooling, "window pooling assignment: prose|equation")
      ->envname("VMNET_POOLING")->check(CLI::IsMember({"prose", "equation"}))->capture_default_str();
  cmd.add_option("--ps1", cfg.fusion.p_s1, "VAMAC similarity weight")->envname("VMNET_PS1")->capture_default_str();
  cmd.add_option("--ps2", cfg.fusion.p_s2, "GRMAAC similarity weight")->envname("VMNET_PS2")->capture_default_str();
  cmd.add_option("--ps3", cfg.fusion.p_s3, "middle similarity weight")->envname("VMNET_PS3")->capture_default_str();
}

bool same_extraction(const EngineConfig& a, const EngineConfig& b) {
  return a.mask.p == b.mask.p && a.mask.saliency_threshold == b.mask.saliency_threshold &&
         a.pooling.q1 == b.pooling.q1 && a.pooling.q2 == b.pooling.q2 &&
         a.pooling.q3 == b.pooling.q3 && a.pooling.p_pool == b.pooling.p_pool &&
         a.pooling.assignment == b.pooling.assignment;
}

int cmd_build_index(const std::string& manifest, const std::string& out_path,
                    const EngineConfig& cfg, std::size_t threads, std::ostream& out) {
  const Index ix = build_from_manifest(manifest, cfg, threads);
  save_index(ix, out_path);
  save_manifest(make_manifest(ix, cfg), manifest_path_for(out_path));
  out << "indexed " << ix.size() << " images into " << out_path << '\n';
  return kExitOk;
}

int cmd_query(const std::string& index_path, const std::string& last_path,
              const std::string& middle_path, const std::string& saliency_path,
              const EngineConfig& cfg, std::size_t threads, std::ostream& out,
              std::ostream& err) {
  const Index ix = load_index(index_path);
  const auto sidecar = manifest_path_for(index_path);
  if (std::filesystem::exists(sidecar)) {
    try {
      if (!same_extraction(load_manifest(sidecar).config, cfg)) {
        err << "warning: extraction flags differ from those recorded in " << sidecar.string()
            << '\n';
      }
    } catch (const Error& e) {
      err << "warning: ignoring unreadable manifest: " << e.what() << '\n';
    }
  }

  const auto last = load_tensor(last_path);
  const auto middle = load_tensor(middle_path);
  const auto saliency = load_plane(saliency_path);
  if (last.channels() != ix.last_dim() || middle.channels() != ix.middle_dim()) {
    err << "error: query dims (last C=" << last.channels() << ", middle C=" << middle.channels()
        << ") do not match index dims (last C=" << ix.last_dim()
        << ", middle C=" << ix.middle_dim() << ")\n";
    return kExitFailure;
  }
  const FeatureSet q = extract_feature_set("query", last, middle, saliency, cfg);
  write_hits(out, rank_topk(q, ix, cfg.k, cfg.fusion, threads));
  return kExitOk;
}

int cmd_evaluate(const std::string& run_path, const std::string& qrels_path, bool clamp,
                 std::ostream& out) {
  const Run run = load_run(run_path);
  const Qrels qrels = load_qrels(qrels_path);
  write_report(out, evaluate_run(run, qrels, {.clamp_denominator = clamp}));
  return kExitOk;
}

int cmd_mask_dump(const std::string& input, double p, const std::string& out_path,
                  std::ostream& out) {
  const auto t = load_tensor(input);
  const BinaryMask m = variable_mask(t, p);
  save_plane(m.to_plane(), out_path);
  out << "mask " << m.height() << "x" << m.width() << ", " << m.count() << " cells set\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vmnet: attention-masked descriptor retrieval over pre-extracted feature maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(engine_version()));

  EngineConfig cfg;
  std::string pooling = "prose";
  std::size_t threads = default_threads();

  std::string manifest, index_out;
  auto* build = app.add_subcommand("build-index", "extract database feature sets and write an index");
  build->add_option("--manifest", manifest, "JSON list of {id, last, middle, saliency}")->required();
  build->add_option("--out", index_out, "output index path")->required();
  build->add_option("--threads", threads, "extraction threads")->envname("VMNET_THREADS");
  add_config_flags(*build, cfg, pooling);

  std::string index_path, last_path, middle_path, saliency_path;
  auto* query = app.add_subcommand("query", "rank index entries against one query image");
  query->add_option("--index", index_path, "index file")->required();
  query->add_option("--last", last_path, "last-layer FMAP")->required();
  query->add_option("--middle", middle_path, "middle-layer FMAP")->required();
  query->add_option("--saliency", saliency_path, "saliency FMAP (C=1)")->required();
  query->add_option("--k", cfg.k, "number of results")->envname("VMNET_K")->capture_default_str();
  query->add_option("--threads", threads, "scoring threads")->envname("VMNET_THREADS");
  add_config_flags(*query, cfg, pooling);

  std::string run_path, qrels_path;
  bool clamp = false;
  auto* evaluate = app.add_subcommand("evaluate", "score a run against qrels with MAP@7");
  evaluate->add_option("--run", run_path, "run TSV: query_id, rank, image_id")->required();
  evaluate->add_option("--qrels", qrels_path, "qrels TSV: query_id, relevant_image_id")->required();
  evaluate->add_flag("--clamp-ap", clamp, "divide AP(n) by min(R, n) instead of R")->envname("VMNET_CLAMP_AP");

  std::string mask_in, mask_out;
  double mask_p = 1.0;
  auto* dump = app.add_subcommand("mask-dump", "write the variable mask of a tensor as a C=1 FMAP");
  dump->add_option("--input", mask_in, "input FMAP")->required();
  dump->add_option("--p", mask_p, "variable-mask exponent")->envname("VMNET_P")->capture_default_str();
  dump->add_option("--out", mask_out, "output FMAP")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.pooling.assignment = parse_pooling_assignment(pooling);
    if (threads == 0) throw ArgumentError("--threads must be positive");
    if (*build) {
      cfg.validate();
      return cmd_build_index(manifest, index_out, cfg, threads, out);
    }
    if (*query) {
      cfg.validate();
      return cmd_query(index_path, last_path, middle_path, saliency_path, cfg, threads, out, err);
    }
    if (*evaluate) return cmd_evaluate(run_path, qrels_path, clamp, out);
    if (*dump) return cmd_mask_dump(mask_in, mask_p, mask_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("vmnet");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vmnet::cli

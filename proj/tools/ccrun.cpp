// ccrun: generate / train / eval / ablate entry point.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cc/clustering.hpp"
#include "cc/config.hpp"
#include "cc/datagen.hpp"
#include "cc/eval.hpp"
#include "cc/kernels.hpp"
#include "cc/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTrainAbort = 3;

constexpr const char* kVersion = "ccrun 1.0.0";

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw cc::ParseError(path + ": " + e.what());
  }
}

void prepare_run_dir(const std::string& dir, bool force) {
  if (fs::exists(dir)) {
    if (!force) {
      throw std::runtime_error("run directory " + dir +
                               " already exists (use --force to overwrite)");
    }
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

struct TrainOutcome {
  cc::TrainResult result;
  cc::TrainConfig cfg;
};

TrainOutcome run_training(const cc::Dataset& dataset, const cc::TrainConfig& cfg,
                          const std::string& run_dir) {
  const auto started = std::chrono::steady_clock::now();

  cc::TrainHooks hooks;
  // purity is diagnostic only; labels stay outside the trainer
  hooks.mean_purity = [&dataset](const cc::PseudoLabeling& labeling) {
    return cc::mean_cluster_purity(labeling, dataset);
  };

  cc::TrainResult result = cc::train(cc::training_view(dataset), cfg, hooks);

  std::string jsonl;
  for (const auto& r : result.reports) {
    jsonl += cc::epoch_report_json_line(r) + "\n";
  }
  write_text(run_dir + "/epochs.jsonl", jsonl);

  cc::Checkpoint ckpt{cfg, result.encoder, result.rng_state, result.reports};
  cc::save_checkpoint(ckpt, run_dir + "/checkpoint.json");

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = cc::train_config_to_json(cfg);
  manifest["dataset"] = {{"n", dataset.size()}, {"d_in", dataset.d_in}};
  manifest["train_seconds"] = seconds;
  write_text(run_dir + "/manifest.json", manifest.dump(2) + "\n");

  return {std::move(result), cfg};
}

int cmd_generate(const std::string& params_path, const std::string& out_path) {
  cc::GenParams params = cc::gen_params_from_json(read_json_file(params_path));
  cc::Dataset dataset = cc::generate(params);
  dataset.metadata.generator_params = cc::gen_params_to_json(params).dump();
  cc::save_dataset(dataset, out_path);
  std::cout << "wrote " << out_path << ": N=" << dataset.size()
            << " ids=" << params.n_ids << " cameras=" << params.n_cameras
            << " d_in=" << params.d_in << "\n";
  return kExitOk;
}

int cmd_train(const std::string& data_path, const std::string& config_path,
              const std::string& out_dir, bool force) {
  cc::TrainConfig cfg = cc::train_config_from_json(
      config_path.empty() ? json::object() : read_json_file(config_path));
  const cc::Dataset dataset = cc::load_dataset(data_path);
  prepare_run_dir(out_dir, force);
  const auto outcome = run_training(dataset, cfg, out_dir);
  std::cout << "trained " << outcome.result.reports.size() << " epochs -> "
            << out_dir << "\n";
  return kExitOk;
}

void write_ranking_csv(const cc::Encoder& enc, const cc::Dataset& dataset,
                       const cc::RetrievalSplit& split, bool junk_rule,
                       const std::string& path) {
  std::vector<const cc::Vec*> q_raws, g_raws;
  for (int id : split.query) q_raws.push_back(&dataset.instances[id].raw);
  for (int id : split.gallery) g_raws.push_back(&dataset.instances[id].raw);
  const auto qf = cc::kernels::extract_features(enc, q_raws);
  const auto gf = cc::kernels::extract_features(enc, g_raws);
  const auto sims = cc::kernels::similarity_rows(qf, gf);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "query_id,rank,gallery_id,similarity,correct\n";
  for (std::size_t qi = 0; qi < split.query.size(); ++qi) {
    const auto& q = dataset.instances[split.query[qi]];
    std::vector<int> order;
    for (std::size_t g = 0; g < split.gallery.size(); ++g) {
      const auto& truth = dataset.instances[split.gallery[g]].truth;
      if (junk_rule && truth.identity == q.truth.identity &&
          truth.camera == q.truth.camera) {
        continue;
      }
      order.push_back(static_cast<int>(g));
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (sims[qi][a] != sims[qi][b]) return sims[qi][a] > sims[qi][b];
      return split.gallery[a] < split.gallery[b];
    });
    const int topk = std::min<int>(10, static_cast<int>(order.size()));
    for (int r = 0; r < topk; ++r) {
      const int gid = split.gallery[order[r]];
      out << q.id << "," << (r + 1) << "," << gid << "," << sims[qi][order[r]]
          << ","
          << (dataset.instances[gid].truth.identity == q.truth.identity ? 1 : 0)
          << "\n";
    }
  }
}

int cmd_eval(const std::string& data_path, const std::string& ckpt_path,
             const std::string& split_path, double query_fraction,
             std::uint64_t split_seed, bool no_junk_rule,
             const std::string& out_dir, bool rank_csv, bool force) {
  const cc::Dataset dataset = cc::load_dataset(data_path);
  const cc::Checkpoint ckpt = cc::load_checkpoint(ckpt_path);

  cc::RetrievalSplit split;
  if (!split_path.empty()) {
    split = cc::split_from_json(read_json_file(split_path));
  } else {
    cc::Rng rng(split_seed);
    split = cc::make_split(dataset, query_fraction, rng, !no_junk_rule);
  }

  cc::EvalOptions opts;
  opts.junk_rule = !no_junk_rule;
  const cc::EvalReport report = cc::evaluate(ckpt.encoder, dataset, split, opts);

  prepare_run_dir(out_dir, force);
  write_text(out_dir + "/eval.json",
             cc::eval_report_to_json(report).dump(2) + "\n");
  write_text(out_dir + "/split.json", cc::split_to_json(split).dump() + "\n");
  if (rank_csv) {
    write_ranking_csv(ckpt.encoder, dataset, split, opts.junk_rule,
                      out_dir + "/ranking.csv");
  }
  std::cout << "mAP=" << report.map << " top1=" << report.cmc_at(1)
            << " top5=" << report.cmc_at(5) << " top10=" << report.cmc_at(10)
            << " -> " << out_dir << "/eval.json\n";
  return kExitOk;
}

struct AblateSetting {
  std::string name;
  cc::TrainConfig cfg;
};

std::vector<AblateSetting> suite_settings(const std::string& suite,
                                          const cc::TrainConfig& base) {
  std::vector<AblateSetting> settings;
  if (suite == "momentum") {
    for (double m : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      cc::TrainConfig cfg = base;
      cfg.momentum = m;
      settings.push_back({"m=" + std::to_string(m).substr(0, 4), cfg});
    }
  } else if (suite == "batch-size") {
    for (int batch : {16, 32, 64, 128}) {
      cc::TrainConfig cfg = base;
      cfg.sampler.z = std::min(base.sampler.z, batch);
      cfg.sampler.p = std::max(1, batch / cfg.sampler.z);
      settings.push_back({"batch=" + std::to_string(batch), cfg});
    }
  } else if (suite == "cluster-cap") {
    for (int cap : {0, 8, 4}) {
      cc::TrainConfig cfg = base;
      cfg.variant = cc::Variant::instance_baseline;
      if (cap > 0) cfg.sampler.cluster_cap = cap;
      settings.push_back(
          {cap > 0 ? "cap=" + std::to_string(cap) : "cap=none", cfg});
    }
  } else if (suite == "variant") {
    cc::TrainConfig baseline = base;
    baseline.variant = cc::Variant::instance_baseline;
    settings.push_back({"baseline", baseline});
    cc::TrainConfig cluster = base;
    cluster.variant = cc::Variant::cluster_contrast;
    cluster.momentum = 0.0;
    settings.push_back({"cluster_memory", cluster});
    cc::TrainConfig momentum = base;
    momentum.variant = cc::Variant::cluster_contrast;
    settings.push_back({"cluster_memory_momentum", momentum});
  } else {
    throw cc::ParseError("unknown ablation suite \"" + suite + "\"");
  }
  return settings;
}

int cmd_ablate(const std::string& suite, const std::string& data_path,
               const std::string& config_path, const std::string& out_dir,
               bool force) {
  const cc::TrainConfig base = cc::train_config_from_json(
      config_path.empty() ? json::object() : read_json_file(config_path));
  const cc::Dataset dataset = cc::load_dataset(data_path);
  const auto settings = suite_settings(suite, base);

  prepare_run_dir(out_dir, force);
  cc::Rng split_rng(base.seed ^ 0x9e3779b97f4a7c15ULL);
  const cc::RetrievalSplit split = cc::make_split(dataset, 0.3, split_rng);

  std::string csv = "setting,mAP,top1\n";
  for (const auto& setting : settings) {
    const std::string run_dir = out_dir + "/" + setting.name;
    fs::create_directories(run_dir);
    const auto outcome = run_training(dataset, setting.cfg, run_dir);
    const cc::EvalReport report =
        cc::evaluate(outcome.result.encoder, dataset, split);
    csv += setting.name + "," + std::to_string(report.map) + "," +
           std::to_string(report.cmc_at(1)) + "\n";
    std::cout << suite << " " << setting.name << ": mAP=" << report.map
              << " top1=" << report.cmc_at(1) << "\n";
  }
  write_text(out_dir + "/" + suite + ".csv", csv);
  std::cout << "wrote " << out_dir << "/" << suite << ".csv\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-contrast training pipeline on synthetic identity data"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset TSV");
  std::string gen_params, gen_out;
  gen->add_option("--params", gen_params, "Generator params JSON file")
      ->required();
  gen->add_option("--out", gen_out, "Output dataset TSV path")->required();

  auto* train = app.add_subcommand("train", "Train on a dataset TSV");
  std::string train_data, train_config, train_out;
  bool train_force = false;
  train->add_option("--data", train_data, "Dataset TSV")->required();
  train->add_option("--config", train_config,
                    "Train config JSON (defaults apply when omitted)");
  train->add_option("--out", train_out, "Run directory")->required();
  train->add_flag("--force", train_force, "Overwrite an existing run directory");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint (mAP / CMC)");
  std::string eval_data, eval_ckpt, eval_split, eval_out;
  double eval_qf = 0.3;
  std::uint64_t eval_split_seed = 7;
  bool eval_no_junk = false, eval_rank_csv = false, eval_force = false;
  eval->add_option("--data", eval_data, "Dataset TSV")->required();
  eval->add_option("--checkpoint", eval_ckpt, "Checkpoint JSON")->required();
  eval->add_option("--split", eval_split,
                   "Split JSON file; generated from --query-fraction if absent");
  eval->add_option("--query-fraction", eval_qf,
                   "Query fraction for a generated split");
  eval->add_option("--split-seed", eval_split_seed,
                   "Seed for a generated split");
  eval->add_flag("--no-junk-rule", eval_no_junk,
                 "Keep same-identity same-camera gallery items");
  eval->add_flag("--rank-csv", eval_rank_csv,
                 "Also write per-query top-10 ranking.csv");
  eval->add_option("--out", eval_out, "Output directory")->required();
  eval->add_flag("--force", eval_force, "Overwrite an existing directory");

  auto* ablate = app.add_subcommand("ablate", "Run an ablation sweep");
  std::string ab_suite, ab_data, ab_config, ab_out;
  bool ab_force = false;
  ablate
      ->add_option("--suite", ab_suite,
                   "One of: momentum, batch-size, cluster-cap, variant")
      ->required()
      ->check(CLI::IsMember({"momentum", "batch-size", "cluster-cap",
                             "variant"}));
  ablate->add_option("--data", ab_data, "Dataset TSV")->required();
  ablate->add_option("--config", ab_config, "Base train config JSON");
  ablate->add_option("--out", ab_out, "Sweep output directory")->required();
  ablate->add_flag("--force", ab_force, "Overwrite an existing directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_generate(gen_params, gen_out);
    if (*train) return cmd_train(train_data, train_config, train_out,
                                 train_force);
    if (*eval) {
      return cmd_eval(eval_data, eval_ckpt, eval_split, eval_qf,
                      eval_split_seed, eval_no_junk, eval_out, eval_rank_csv,
                      eval_force);
    }
    if (*ablate) return cmd_ablate(ab_suite, ab_data, ab_config, ab_out,
                                   ab_force);
  } catch (const cc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cc::TooFewClusters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTrainAbort;
  } catch (const cc::NoClusters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTrainAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}

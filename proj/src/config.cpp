#include "cc/config.hpp"

#include <fstream>

namespace cc {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  if (!j.is_object()) {
    throw ParseError("config: " + where + " must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ParseError("config: unknown key \"" + key + "\" in " + where);
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError("config: bad value for \"" + std::string(key) + "\"");
  }
}

}  // namespace

TrainConfig train_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"tau", "momentum", "dbscan", "sampler", "schedule",
                       "epochs", "seed", "variant", "weight_decay", "d_embed"},
                      "train config");
  TrainConfig cfg;
  cfg.loss.tau = get_or(j, "tau", cfg.loss.tau);
  cfg.momentum = get_or(j, "momentum", cfg.momentum);
  if (j.contains("dbscan")) {
    const auto& d = j.at("dbscan");
    reject_unknown_keys(d, {"eps", "min_pts"}, "dbscan");
    cfg.dbscan.eps = get_or(d, "eps", cfg.dbscan.eps);
    cfg.dbscan.min_pts = get_or(d, "min_pts", cfg.dbscan.min_pts);
  }
  if (j.contains("sampler")) {
    const auto& s = j.at("sampler");
    reject_unknown_keys(s, {"p", "z", "cluster_cap", "iterations_per_epoch"},
                        "sampler");
    cfg.sampler.p = get_or(s, "p", cfg.sampler.p);
    cfg.sampler.z = get_or(s, "z", cfg.sampler.z);
    if (s.contains("cluster_cap") && !s.at("cluster_cap").is_null()) {
      cfg.sampler.cluster_cap = s.at("cluster_cap").get<int>();
    }
    cfg.sampler.iterations_per_epoch =
        get_or(s, "iterations_per_epoch", cfg.sampler.iterations_per_epoch);
  }
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    reject_unknown_keys(
        s, {"base_lr", "warmup_epochs", "decay_every", "decay_factor"},
        "schedule");
    cfg.schedule.base_lr = get_or(s, "base_lr", cfg.schedule.base_lr);
    cfg.schedule.warmup_epochs =
        get_or(s, "warmup_epochs", cfg.schedule.warmup_epochs);
    cfg.schedule.decay_every =
        get_or(s, "decay_every", cfg.schedule.decay_every);
    cfg.schedule.decay_factor =
        get_or(s, "decay_factor", cfg.schedule.decay_factor);
  }
  cfg.epochs = get_or(j, "epochs", cfg.epochs);
  cfg.schedule.total_epochs = cfg.epochs;
  cfg.seed = get_or(j, "seed", cfg.seed);
  if (j.contains("variant")) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "cluster_contrast") {
      cfg.variant = Variant::cluster_contrast;
    } else if (v == "instance_baseline") {
      cfg.variant = Variant::instance_baseline;
    } else {
      throw ParseError("config: unknown variant \"" + v + "\"");
    }
  }
  cfg.weight_decay = get_or(j, "weight_decay", cfg.weight_decay);
  cfg.d_embed = get_or(j, "d_embed", cfg.d_embed);

  if (cfg.loss.tau <= 0) throw ParseError("config: tau must be > 0");
  if (cfg.momentum < 0 || cfg.momentum > 1) {
    throw ParseError("config: momentum must be in [0,1]");
  }
  if (cfg.dbscan.eps <= 0) throw ParseError("config: dbscan.eps must be > 0");
  if (cfg.dbscan.min_pts < 1) {
    throw ParseError("config: dbscan.min_pts must be >= 1");
  }
  if (cfg.sampler.p < 1 || cfg.sampler.z < 1) {
    throw ParseError("config: sampler.p and sampler.z must be >= 1");
  }
  if (cfg.epochs < 0) throw ParseError("config: epochs must be >= 0");
  if (cfg.d_embed < 1) throw ParseError("config: d_embed must be >= 1");
  return cfg;
}

json train_config_to_json(const TrainConfig& cfg) {
  json j;
  j["tau"] = cfg.loss.tau;
  j["momentum"] = cfg.momentum;
  j["dbscan"] = {{"eps", cfg.dbscan.eps}, {"min_pts", cfg.dbscan.min_pts}};
  j["sampler"] = {
      {"p", cfg.sampler.p},
      {"z", cfg.sampler.z},
      {"cluster_cap", cfg.sampler.cluster_cap
                          ? json(*cfg.sampler.cluster_cap)
                          : json(nullptr)},
      {"iterations_per_epoch", cfg.sampler.iterations_per_epoch}};
  j["schedule"] = {{"base_lr", cfg.schedule.base_lr},
                   {"warmup_epochs", cfg.schedule.warmup_epochs},
                   {"decay_every", cfg.schedule.decay_every},
                   {"decay_factor", cfg.schedule.decay_factor}};
  j["epochs"] = cfg.epochs;
  j["seed"] = cfg.seed;
  j["variant"] = cfg.variant == Variant::cluster_contrast ? "cluster_contrast"
                                                          : "instance_baseline";
  j["weight_decay"] = cfg.weight_decay;
  j["d_embed"] = cfg.d_embed;
  return j;
}

GenParams gen_params_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"n_ids", "per_id", "d_in", "noise_sigma", "n_cameras",
                       "camera_shift_sigma", "seed"},
                      "generator params");
  GenParams p;
  p.n_ids = get_or(j, "n_ids", p.n_ids);
  p.per_id = get_or(j, "per_id", p.per_id);
  p.d_in = get_or(j, "d_in", p.d_in);
  p.noise_sigma = get_or(j, "noise_sigma", p.noise_sigma);
  p.n_cameras = get_or(j, "n_cameras", p.n_cameras);
  p.camera_shift_sigma = get_or(j, "camera_shift_sigma", p.camera_shift_sigma);
  p.seed = get_or(j, "seed", p.seed);
  return p;
}

json gen_params_to_json(const GenParams& p) {
  return {{"n_ids", p.n_ids},
          {"per_id", p.per_id},
          {"d_in", p.d_in},
          {"noise_sigma", p.noise_sigma},
          {"n_cameras", p.n_cameras},
          {"camera_shift_sigma", p.camera_shift_sigma},
          {"seed", p.seed}};
}

static json report_to_json(const EpochReport& r) {
  return {{"epoch", r.epoch},       {"k", r.k},
          {"outliers", r.outlier_count}, {"mean_loss", r.mean_loss},
          {"lr", r.lr},             {"mean_purity", r.mean_purity}};
}

static EpochReport report_from_json(const json& j) {
  EpochReport r;
  r.epoch = j.at("epoch").get<int>();
  r.k = j.at("k").get<int>();
  r.outlier_count = j.at("outliers").get<int>();
  r.mean_loss = j.at("mean_loss").get<double>();
  r.lr = j.at("lr").get<double>();
  r.mean_purity = j.at("mean_purity").get<double>();
  return r;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  json j;
  j["version"] = 1;
  j["config"] = train_config_to_json(ckpt.config);
  j["encoder"] = {{"d_out", ckpt.encoder.d_out},
                  {"d_in", ckpt.encoder.d_in},
                  {"weights", ckpt.encoder.weights},
                  {"bias", ckpt.encoder.bias}};
  j["rng_state"] = ckpt.rng_state;
  json reports = json::array();
  for (const auto& r : ckpt.reports) reports.push_back(report_to_json(r));
  j["reports"] = reports;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("save_checkpoint: write failed " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("load_checkpoint: " + std::string(e.what()));
  }
  if (j.value("version", 0) != 1) {
    throw ParseError("load_checkpoint: unsupported version");
  }
  Checkpoint ckpt;
  ckpt.config = train_config_from_json(j.at("config"));
  const auto& e = j.at("encoder");
  ckpt.encoder.d_out = e.at("d_out").get<int>();
  ckpt.encoder.d_in = e.at("d_in").get<int>();
  ckpt.encoder.weights = e.at("weights").get<Vec>();
  ckpt.encoder.bias = e.at("bias").get<Vec>();
  if (ckpt.encoder.weights.size() !=
          static_cast<std::size_t>(ckpt.encoder.d_out) * ckpt.encoder.d_in ||
      ckpt.encoder.bias.size() != static_cast<std::size_t>(ckpt.encoder.d_out)) {
    throw ParseError("load_checkpoint: encoder shape mismatch");
  }
  ckpt.rng_state = j.at("rng_state").get<std::string>();
  for (const auto& r : j.at("reports")) {
    ckpt.reports.push_back(report_from_json(r));
  }
  return ckpt;
}

std::string epoch_report_json_line(const EpochReport& r) {
  return report_to_json(r).dump();
}

json eval_report_to_json(const EvalReport& r) {
  json j;
  j["mAP"] = r.map;
  j["top1"] = r.cmc_at(1);
  j["top5"] = r.cmc_at(5);
  j["top10"] = r.cmc_at(10);
  j["cmc"] = r.cmc;
  j["skipped_queries"] = r.skipped_queries;
  j["intra_mean"] = r.intra_mean;
  j["inter_mean"] = r.inter_mean;
  return j;
}

RetrievalSplit split_from_json(const json& j) {
  reject_unknown_keys(j, {"query", "gallery"}, "split");
  RetrievalSplit s;
  s.query = j.at("query").get<std::vector<int>>();
  s.gallery = j.at("gallery").get<std::vector<int>>();
  return s;
}

json split_to_json(const RetrievalSplit& s) {
  return {{"query", s.query}, {"gallery", s.gallery}};
}

}  // namespace cc

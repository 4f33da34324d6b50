#include "cc/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cc {

namespace {

Vec random_unit(int d, Rng& rng) {
  Vec v(d);
  for (auto& x : v) x = rng.normal();
  return l2_normalize(v).values;
}

}  // namespace

Dataset generate(const GenParams& p) {
  if (p.n_ids < 1 || p.per_id < 1 || p.d_in < 1 || p.n_cameras < 1) {
    throw std::invalid_argument("generate: all counts must be >= 1");
  }
  if (p.noise_sigma < 0 || p.camera_shift_sigma < 0) {
    throw std::invalid_argument("generate: sigmas must be >= 0");
  }
  Rng rng(p.seed);

  // reject prototype pairs that are nearly collinear
  std::vector<Vec> prototypes;
  while (static_cast<int>(prototypes.size()) < p.n_ids) {
    Vec cand = random_unit(p.d_in, rng);
    bool ok = true;
    for (const auto& proto : prototypes) {
      if (dot(cand, proto) > 0.95) {
        ok = false;
        break;
      }
    }
    if (ok) prototypes.push_back(std::move(cand));
  }

  std::vector<Vec> camera_offsets(p.n_cameras, Vec(p.d_in, 0.0));
  for (auto& offset : camera_offsets) {
    for (auto& x : offset) x = p.camera_shift_sigma * rng.normal();
  }

  Dataset d;
  d.d_in = p.d_in;
  d.metadata.seed = p.seed;
  int next_id = 0;
  for (int id = 0; id < p.n_ids; ++id) {
    for (int j = 0; j < p.per_id; ++j) {
      Instance inst;
      inst.id = next_id++;
      inst.truth.identity = id;
      inst.truth.camera = j % p.n_cameras;
      inst.raw.resize(p.d_in);
      for (int k = 0; k < p.d_in; ++k) {
        inst.raw[k] = prototypes[id][k] + camera_offsets[inst.truth.camera][k] +
                      p.noise_sigma * rng.normal();
      }
      d.instances.push_back(std::move(inst));
    }
  }
  return d;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  validate_dataset(dataset);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
  out << "id\tidentity\tcamera";
  for (int k = 0; k < dataset.d_in; ++k) out << "\tf" << k;
  out << "\n";
  char buf[40];
  for (const auto& inst : dataset.instances) {
    out << inst.id << "\t" << inst.truth.identity << "\t" << inst.truth.camera;
    for (double x : inst.raw) {
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out << "\t" << buf;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("save_dataset: write failed for " + path);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw EmptyInput("load_dataset: " + path + " is empty");
  }

  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, '\t')) header.push_back(tok);
  }
  if (header.size() < 4 || header[0] != "id" || header[1] != "identity" ||
      header[2] != "camera") {
    throw ParseError("load_dataset: malformed header at line 1");
  }
  const int d_in = static_cast<int>(header.size()) - 3;
  for (int k = 0; k < d_in; ++k) {
    if (header[3 + k] != "f" + std::to_string(k)) {
      throw ParseError("load_dataset: malformed header at line 1");
    }
  }

  Dataset d;
  d.d_in = d_in;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ls, tok, '\t')) cols.push_back(tok);
    if (static_cast<int>(cols.size()) != 3 + d_in) {
      throw ParseError("load_dataset: line " + std::to_string(line_no) +
                       ": expected " + std::to_string(3 + d_in) +
                       " columns, got " + std::to_string(cols.size()));
    }
    Instance inst;
    try {
      inst.id = std::stoi(cols[0]);
      inst.truth.identity = std::stoi(cols[1]);
      inst.truth.camera = std::stoi(cols[2]);
      inst.raw.resize(d_in);
      for (int k = 0; k < d_in; ++k) {
        std::size_t pos = 0;
        inst.raw[k] = std::stod(cols[3 + k], &pos);
        if (pos != cols[3 + k].size()) throw std::invalid_argument(cols[3 + k]);
      }
    } catch (const std::exception&) {
      throw ParseError("load_dataset: line " + std::to_string(line_no) +
                       ": malformed value");
    }
    d.instances.push_back(std::move(inst));
  }
  if (d.instances.empty()) throw EmptyInput("load_dataset: no data rows");
  validate_dataset(d);
  return d;
}

RetrievalSplit make_split(const Dataset& dataset, double query_fraction,
                          Rng& rng, bool junk_rule) {
  validate_dataset(dataset);
  if (query_fraction <= 0.0 || query_fraction >= 1.0) {
    throw std::invalid_argument("make_split: query_fraction must be in (0,1)");
  }
  std::map<int, std::vector<int>> by_identity;
  for (const auto& inst : dataset.instances) {
    by_identity[inst.truth.identity].push_back(inst.id);
  }

  RetrievalSplit split;
  for (auto& [identity, ids] : by_identity) {
    const int nq = static_cast<int>(
        std::ceil(query_fraction * static_cast<double>(ids.size())));
    if (nq >= static_cast<int>(ids.size())) {
      throw std::invalid_argument(
          "make_split: query_fraction leaves identity " +
          std::to_string(identity) + " without gallery items");
    }
    rng.shuffle(ids);
    for (int i = 0; i < nq; ++i) split.query.push_back(ids[i]);
    for (std::size_t i = nq; i < ids.size(); ++i) {
      split.gallery.push_back(ids[i]);
    }
    if (junk_rule) {
      // each query needs a same-identity gallery item under another camera
      for (int i = 0; i < nq; ++i) {
        const int qcam = dataset.instances[ids[i]].truth.camera;
        bool found = false;
        for (std::size_t g = nq; g < ids.size(); ++g) {
          if (dataset.instances[ids[g]].truth.camera != qcam) {
            found = true;
            break;
          }
        }
        if (!found) {
          throw NoCrossCameraRelevants(
              "make_split: identity " + std::to_string(identity) +
              " has a query with no cross-camera gallery item");
        }
      }
    }
  }
  std::sort(split.query.begin(), split.query.end());
  std::sort(split.gallery.begin(), split.gallery.end());
  return split;
}

}  // namespace cc

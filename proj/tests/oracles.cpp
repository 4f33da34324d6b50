#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace oracle {

DbscanResult dbscan(const std::vector<cc::FeatureVector>& features, double eps,
                    int min_pts) {
  const int n = static_cast<int>(features.size());
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < features[i].values.size(); ++d) {
        s += features[i].values[d] * features[j].values[d];
      }
      dist[i][j] = 1.0 - s;
    }
  }
  auto region = [&](int i) {
    std::vector<int> nb;
    for (int j = 0; j < n; ++j) {
      if (dist[i][j] <= eps) nb.push_back(j);
    }
    return nb;
  };

  const int kUnvisited = -3, kNoise = -2;
  std::vector<int> labels(n, kUnvisited);
  int cid = 0;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != kUnvisited) continue;
    auto nb = region(i);
    if (static_cast<int>(nb.size()) < min_pts) {
      labels[i] = kNoise;
      continue;
    }
    labels[i] = cid;
    std::deque<int> seeds(nb.begin(), nb.end());
    while (!seeds.empty()) {
      const int j = seeds.front();
      seeds.pop_front();
      if (labels[j] == kNoise) labels[j] = cid;
      if (labels[j] != kUnvisited) continue;
      labels[j] = cid;
      auto nb_j = region(j);
      if (static_cast<int>(nb_j.size()) >= min_pts) {
        seeds.insert(seeds.end(), nb_j.begin(), nb_j.end());
      }
    }
    ++cid;
  }

  // canonical ids: ascending smallest member
  std::vector<int> first(cid, -1);
  for (int i = 0; i < n; ++i) {
    if (labels[i] >= 0 && first[labels[i]] < 0) first[labels[i]] = i;
  }
  std::vector<int> order(cid);
  for (int c = 0; c < cid; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return first[a] < first[b]; });
  std::vector<int> remap(cid);
  for (int r = 0; r < cid; ++r) remap[order[r]] = r;

  DbscanResult res;
  res.k = cid;
  res.labels.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (labels[i] >= 0) res.labels[i] = remap[labels[i]];
  }
  return res;
}

RetrievalResult retrieval(const std::vector<cc::FeatureVector>& query_feats,
                          const std::vector<int>& query_ids,
                          const std::vector<int>& query_identities,
                          const std::vector<int>& query_cameras,
                          const std::vector<cc::FeatureVector>& gallery_feats,
                          const std::vector<int>& gallery_ids,
                          const std::vector<int>& gallery_identities,
                          const std::vector<int>& gallery_cameras,
                          bool junk_rule, int max_rank) {
  RetrievalResult res;
  res.cmc.assign(max_rank, 0.0);
  int counted = 0;
  for (std::size_t qi = 0; qi < query_feats.size(); ++qi) {
    struct Entry {
      double sim;
      int gallery_id;
      bool relevant;
    };
    std::vector<Entry> entries;
    for (std::size_t g = 0; g < gallery_feats.size(); ++g) {
      const bool same_id = gallery_identities[g] == query_identities[qi];
      if (junk_rule && same_id && gallery_cameras[g] == query_cameras[qi]) {
        continue;
      }
      double s = 0.0;
      for (std::size_t d = 0; d < query_feats[qi].values.size(); ++d) {
        s += query_feats[qi].values[d] * gallery_feats[g].values[d];
      }
      entries.push_back({s, gallery_ids[g], same_id});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.sim != b.sim) return a.sim > b.sim;
      return a.gallery_id < b.gallery_id;
    });
    int hits = 0;
    double prec_sum = 0.0;
    int first_hit = -1;
    for (std::size_t r = 0; r < entries.size(); ++r) {
      if (!entries[r].relevant) continue;
      ++hits;
      prec_sum += static_cast<double>(hits) / static_cast<double>(r + 1);
      if (first_hit < 0) first_hit = static_cast<int>(r + 1);
    }
    if (hits == 0) {
      ++res.skipped;
      continue;
    }
    ++counted;
    res.map += prec_sum / hits;
    for (int r = first_hit; r <= max_rank; ++r) res.cmc[r - 1] += 1.0;
  }
  if (counted > 0) {
    res.map /= counted;
    for (auto& c : res.cmc) c /= counted;
  }
  return res;
}

std::vector<double> finite_difference(std::vector<double>& xs,
                                      const std::function<double()>& f,
                                      double h) {
  std::vector<double> grad(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double orig = xs[i];
    xs[i] = orig + h;
    const double fp = f();
    xs[i] = orig - h;
    const double fm = f();
    xs[i] = orig;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double max_relative_error(const std::vector<double>& got,
                          const std::vector<double>& want,
                          double denom_floor) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double denom = std::max(std::abs(want[i]), denom_floor);
    worst = std::max(worst, std::abs(got[i] - want[i]) / denom);
  }
  return worst;
}

}  // namespace oracle

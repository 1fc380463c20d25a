// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stylo/kernels.hpp"
#include "stylo/rng.hpp"
#include "stylo/util.hpp"

namespace stylo {

namespace {

struct DenseData {
  std::vector<std::string> subjects;
  std::vector<FeatureId> features;
  std::vector<double> rows;  // n x dim, row-major
  size_t n = 0, dim = 0;

  const double* row(size_t i) const { return rows.data() + i * dim; }
  double* row(size_t i) { return rows.data() + i * dim; }
};

DenseData project_dense(const std::vector<FeatureVector>& vectors, bool l2) {
  DenseData d;
  std::vector<size_t> order(vectors.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return vectors[a].subject < vectors[b].subject;
  });

  std::set<FeatureId> active;
  for (const auto& v : vectors) {
    for (const auto& [id, _] : v.counts) active.insert(id);
  }
  d.features.assign(active.begin(), active.end());
  std::map<FeatureId, size_t> col;
  for (size_t j = 0; j < d.features.size(); ++j) col[d.features[j]] = j;

  d.n = vectors.size();
  d.dim = d.features.size();
  d.rows.assign(d.n * d.dim, 0.0);
  for (size_t oi = 0; oi < order.size(); ++oi) {
    const auto& v = vectors[order[oi]];
    d.subjects.push_back(v.subject);
    double* r = d.row(oi);
    for (const auto& [id, cnt] : v.counts) r[col[id]] = static_cast<double>(cnt);
    if (l2) {
      double sq = kernels::nrm2sq(r, d.dim);
      if (sq > 0.0) kernels::scal(1.0 / std::sqrt(sq), r, d.dim);
    }
  }
  return d;
}

// Farthest point from its nearest centroid (ties -> lowest index).
size_t farthest_point(const DenseData& d, const std::vector<double>& min_dist) {
  size_t best = 0;
  for (size_t i = 1; i < d.n; ++i) {
    if (min_dist[i] > min_dist[best]) best = i;
  }
  return best;
}

}  // namespace

ClusteringResult kmeans(const std::vector<FeatureVector>& vectors, const KmeansConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (vectors.empty() || static_cast<size_t>(cfg.k) > vectors.size()) {
    throw std::invalid_argument("kmeans: k exceeds the number of subjects");
  }
  {
    std::set<std::string> ids;
    for (const auto& v : vectors) {
      if (!ids.insert(v.subject).second) {
        throw std::invalid_argument("kmeans: duplicate subject id: " + v.subject);
      }
    }
  }
  DenseData d = project_dense(vectors, cfg.l2_normalize);
  size_t k = static_cast<size_t>(cfg.k);

  ClusteringResult res;
  res.k = cfg.k;
  res.subjects = d.subjects;
  res.active_features = d.features;

  // Seeded farthest-point init: first centroid drawn by the rng, each next
  // one at the point farthest from the chosen set.
  Rng rng(cfg.seed);
  std::vector<std::vector<double>> centroids;
  std::vector<double> min_dist(d.n, 0.0);
  size_t first = static_cast<size_t>(rng.below(d.n));
  centroids.emplace_back(d.row(first), d.row(first) + d.dim);
  for (size_t i = 0; i < d.n; ++i) {
    min_dist[i] = kernels::sqdist(d.row(i), centroids[0].data(), d.dim);
  }
  while (centroids.size() < k) {
    size_t far = farthest_point(d, min_dist);
    centroids.emplace_back(d.row(far), d.row(far) + d.dim);
    for (size_t i = 0; i < d.n; ++i) {
      min_dist[i] =
          std::min(min_dist[i], kernels::sqdist(d.row(i), centroids.back().data(), d.dim));
    }
  }

  std::vector<int> assignment(d.n, -1);
  std::vector<size_t> sizes(k, 0);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    // Assignment step (ties -> lowest cluster id).
    bool changed = false;
    double inertia = 0.0;
    std::vector<double> dist_row(k);
    for (size_t i = 0; i < d.n; ++i) {
      size_t best = 0;
      double best_d = kernels::sqdist(d.row(i), centroids[0].data(), d.dim);
      for (size_t c = 1; c < k; ++c) {
        double dist = kernels::sqdist(d.row(i), centroids[c].data(), d.dim);
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      inertia += best_d;
      if (assignment[i] != static_cast<int>(best)) {
        assignment[i] = static_cast<int>(best);
        changed = true;
      }
    }
    res.inertia_history.push_back(inertia);
    res.inertia = inertia;
    if (!changed && iter > 0) break;

    // Update step: mean of members; empty cluster re-seeds at the farthest
    // point from its assigned centroid.
    for (auto& c : centroids) std::fill(c.begin(), c.end(), 0.0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (size_t i = 0; i < d.n; ++i) {
      size_t c = static_cast<size_t>(assignment[i]);
      kernels::axpy(1.0, d.row(i), centroids[c].data(), d.dim);
      sizes[c]++;
    }
    std::vector<size_t> empties;
    for (size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) {
        kernels::scal(1.0 / static_cast<double>(sizes[c]), centroids[c].data(), d.dim);
      } else {
        empties.push_back(c);
      }
    }
    if (!empties.empty()) {
      std::vector<double> cur_dist(d.n);
      for (size_t i = 0; i < d.n; ++i) {
        cur_dist[i] = kernels::sqdist(
            d.row(i), centroids[static_cast<size_t>(assignment[i])].data(), d.dim);
      }
      for (size_t c : empties) {
        size_t far = farthest_point(d, cur_dist);
        centroids[c].assign(d.row(far), d.row(far) + d.dim);
        cur_dist[far] = 0.0;  // do not pick the same point twice
      }
    }
  }
  res.centroids = std::move(centroids);
  res.assignment = std::move(assignment);
  return res;
}

ClusterReport evaluate_clusters(const ClusteringResult& res,
                                const std::map<std::string, std::string>& truth,
                                double theta_correct, double theta_wrong) {
  for (const auto& s : res.subjects) {
    if (!truth.count(s)) {
      throw std::invalid_argument("evaluate_clusters: truth missing subject: " + s);
    }
  }
  ClusterReport rep;
  rep.total_clusters = res.k;
  size_t correct = 0, wrong = 0;
  for (int c = 0; c < res.k; ++c) {
    std::map<std::string, size_t> tally;
    size_t size = 0;
    for (size_t i = 0; i < res.subjects.size(); ++i) {
      if (res.assignment[i] == c) {
        tally[truth.at(res.subjects[i])]++;
        ++size;
      }
    }
    ClusterVerdict v;
    v.cluster = c;
    v.size = size;
    if (size > 0) {
      // Majority label; ties resolved toward the lexicographically smallest
      // (map iteration order) for determinism.
      size_t best = 0;
      for (const auto& [label, n] : tally) {
        if (n > best) {
          best = n;
          v.majority_label = label;
        }
      }
      v.purity = static_cast<double>(best) / static_cast<double>(size);
      if (v.purity >= theta_correct) {
        v.kind = ClusterVerdict::Kind::Correct;
        ++correct;
      } else if (v.purity < theta_wrong) {
        v.kind = ClusterVerdict::Kind::Wrong;
        ++wrong;
      }
    }
    rep.clusters.push_back(std::move(v));
  }
  if (rep.total_clusters > 0) {
    rep.correct_pct = 100.0 * static_cast<double>(correct) / rep.total_clusters;
    rep.wrong_pct = 100.0 * static_cast<double>(wrong) / rep.total_clusters;
  }
  return rep;
}

std::vector<std::pair<int, double>> kmeans_inertia_sweep(
    const std::vector<FeatureVector>& vectors, int k_lo, int k_hi,
    const KmeansConfig& cfg) {
  std::vector<std::pair<int, double>> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    KmeansConfig c = cfg;
    c.k = k;
    out.emplace_back(k, kmeans(vectors, c).inertia);
  }
  return out;
}

std::string render_assignment(const ClusteringResult& res) {
  std::string out;
  for (size_t i = 0; i < res.subjects.size(); ++i) {
    out += res.subjects[i] + "\t" + std::to_string(res.assignment[i]) + "\n";
  }
  return out;
}

std::string render_cluster_report(const ClusterReport& rep) {
  std::string out = "# TC\tCC\tWC\n";
  out += std::to_string(rep.total_clusters) + "\t" + fmt_double(rep.correct_pct, 2) + "\t" +
         fmt_double(rep.wrong_pct, 2) + "\n";
  out += "# cluster\tsize\tmajority\tpurity\tverdict\n";
  for (const auto& c : rep.clusters) {
    const char* kind = c.kind == ClusterVerdict::Kind::Correct ? "correct"
                       : c.kind == ClusterVerdict::Kind::Wrong ? "wrong"
                                                               : "uncounted";
    out += std::to_string(c.cluster) + "\t" + std::to_string(c.size) + "\t" +
           (c.majority_label.empty() ? "-" : c.majority_label) + "\t" +
           fmt_double(c.purity, 4) + "\t" + kind + "\n";
  }
  return out;
}

}  // namespace stylo

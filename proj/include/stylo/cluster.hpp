// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Function clustering: Lloyd k-means with seeded farthest-point
// initialization over the dense projection of the active feature space,
// plus cluster-vs-truth evaluation. A cluster whose majority label covers
// at least theta_correct of its members counts correct; below theta_wrong
// it counts wrong; in between it is left out of both tallies (the same
// three-way bookkeeping as the malware-family study this reproduces).

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylo/features.hpp"

namespace stylo {

struct KmeansConfig {
  int k = 2;
  uint64_t seed = 1;
  int max_iter = 100;
  bool l2_normalize = true;
  int threads = 0;
};

struct ClusteringResult {
  int k = 0;
  std::vector<std::string> subjects;          // canonicalized (sorted) order
  std::vector<int> assignment;                // per subject, in [0, k)
  std::vector<FeatureId> active_features;     // dense projection columns
  std::vector<std::vector<double>> centroids; // k x dim
  double inertia = 0.0;
  std::vector<double> inertia_history;        // after each assignment step
};

// Input order is canonicalized by subject id before seeding, so the result
// is invariant under reordering of `vectors`. Throws std::invalid_argument
// when k exceeds the subject count or k < 1.
ClusteringResult kmeans(const std::vector<FeatureVector>& vectors, const KmeansConfig& cfg);

struct ClusterVerdict {
  int cluster = 0;
  size_t size = 0;
  std::string majority_label;
  double purity = 0.0;  // majority coverage
  enum class Kind { Correct, Wrong, Uncounted } kind = Kind::Uncounted;
};

struct ClusterReport {
  int total_clusters = 0;     // TC
  double correct_pct = 0.0;   // CC, percent of TC
  double wrong_pct = 0.0;     // WC, percent of TC
  std::vector<ClusterVerdict> clusters;
};

// truth must cover every subject in the result.
ClusterReport evaluate_clusters(const ClusteringResult& res,
                                const std::map<std::string, std::string>& truth,
                                double theta_correct = 0.75, double theta_wrong = 0.5);

// Inertia for each k in [k_lo, k_hi]: the elbow helper for choosing k.
std::vector<std::pair<int, double>> kmeans_inertia_sweep(
    const std::vector<FeatureVector>& vectors, int k_lo, int k_hi, const KmeansConfig& cfg);

// Dump formats: assignment lines "<subject-id>\t<cluster-id>"; report header
// "TC\tCC\tWC" plus per-cluster lines.
std::string render_assignment(const ClusteringResult& res);
std::string render_cluster_report(const ClusterReport& rep);

}  // namespace stylo

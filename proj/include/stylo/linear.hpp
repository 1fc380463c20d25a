// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// One-vs-rest linear max-margin classifier over a selected feature set.
// Each binary problem is an L2-regularized L1-loss SVM solved by dual
// coordinate descent with a seeded permutation order, so training is
// deterministic given the seed. Prediction is argmax over per-author
// decision values, ties broken by lexicographically smallest author label.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylo/dataset.hpp"

namespace stylo {

using SparseRow = std::vector<std::pair<int, double>>;

struct TrainConfig {
  double c = 1.0;        // per-sample loss weight
  int max_iter = 60;     // outer epochs per binary problem
  double eps = 0.05;     // projected-gradient stopping gap
  uint64_t seed = 1;
  bool l2_normalize = true;  // rows fed as raw counts, L2-normalized
  int threads = 0;

  bool operator==(const TrainConfig&) const = default;
};

struct AttributionModel {
  std::vector<std::string> authors;   // sorted
  std::vector<FeatureId> features;    // model columns
  // weights[a] has features.size()+1 entries; the last one is the bias.
  std::vector<std::vector<double>> weights;
  TrainConfig config;

  // Projects a raw feature vector onto the model columns (L2-normalized per
  // config). Row indices are model-column indices.
  SparseRow project(const FeatureVector& v) const;

  std::vector<double> decision_values(const SparseRow& row) const;
  int predict_index(const SparseRow& row) const;
  std::string predict(const FeatureVector& v) const;

  std::string serialize() const;
  static AttributionModel parse(std::string_view text);  // throws std::runtime_error
  void save_file(const std::string& path) const;
  static AttributionModel load_file(const std::string& path);
};

// Public trainer. Throws std::invalid_argument when an author has fewer
// than 2 subjects, the feature set is empty, or no selected feature occurs
// in the data.
AttributionModel train(const LabeledDataset& ds, const std::vector<FeatureId>& features,
                       const TrainConfig& cfg);

// Cross-validation path: same solver without the >=2-subjects precondition
// (folds can starve an author).
AttributionModel train_unchecked(const LabeledDataset& ds,
                                 const std::vector<FeatureId>& features,
                                 const TrainConfig& cfg);

}  // namespace stylo

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// F0.5 scoring and the evaluation protocol: stratified k-fold
// cross-validation repeated R times, with feature ranking and top-k
// selection recomputed on the training folds of every split (the held-out
// fold never reaches the ranking), plus the author-count scalability sweep.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylo/linear.hpp"
#include "stylo/ranking.hpp"

namespace stylo {

// F0.5 = 1.25*P*R / (0.25*P + R); precision-weighted. Defined as 0 when
// P = R = 0.
double f_measure(double precision, double recall);

struct EvalReport {
  int repeat = 0;
  int fold = 0;
  std::vector<std::string> authors;    // author universe (confusion axes)
  std::vector<int64_t> test_count;     // per author
  std::vector<double> precision;       // per author (0 when undefined)
  std::vector<double> recall;
  double macro_p = 0.0;
  double macro_r = 0.0;
  double f05 = 0.0;
  double accuracy = 0.0;
  std::vector<std::vector<int64_t>> confusion;  // [true][predicted]
  std::vector<std::string> warnings;
};

// Builds per-author P/R, macro averages, F0.5, accuracy and the confusion
// matrix from parallel label vectors. Authors absent from the test slice
// are excluded from the macro averages.
EvalReport evaluate_predictions(const std::vector<std::string>& authors,
                                const std::vector<int>& truth,
                                const std::vector<int>& predicted, bool micro = false);

struct CvConfig {
  int folds = 10;
  int repeats = 15;
  uint64_t seed = 1;
  RankMethod method = RankMethod::MutualInformation;
  size_t top_k = kTopKCaliskan;
  TrainConfig train;
  bool micro = false;  // macro-averaged P/R feed F0.5 by default
  int threads = 0;
};

struct CvSummary {
  double mean_f05 = 0.0;
  double stddev_f05 = 0.0;
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;
  std::vector<EvalReport> reports;  // ordered by (repeat, fold)
};

// Throws std::invalid_argument when the dataset is smaller than the fold
// count. Deterministic given cfg.seed, independent of thread count.
CvSummary cross_validate(const LabeledDataset& ds, const CvConfig& cfg);

struct SweepPoint {
  int authors = 0;
  double mean_f05 = 0.0;
  double stddev_f05 = 0.0;
};

// For each count c: sample c authors (seeded), cross-validate the
// restriction, record mean F0.5. Counts must be non-decreasing and within
// the author universe.
std::vector<SweepPoint> scalability_sweep(const LabeledDataset& ds,
                                          const std::vector<int>& author_counts,
                                          const CvConfig& cfg, uint64_t sample_seed);

// Line records: repeat\tfold\tauthors\tP\tR\tF0.5 (+ summary comments).
std::string render_eval_report(const CvSummary& s, size_t num_authors);
// Curve records: authors\tmeanF0.5\tstddev.
std::string render_curve(const std::vector<SweepPoint>& curve);

}  // namespace stylo

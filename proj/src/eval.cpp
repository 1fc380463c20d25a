// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stylo/rng.hpp"
#include "stylo/util.hpp"

namespace stylo {

double f_measure(double precision, double recall) {
  if (precision <= 0.0 && recall <= 0.0) return 0.0;
  return 1.25 * precision * recall / (0.25 * precision + recall);
}

EvalReport evaluate_predictions(const std::vector<std::string>& authors,
                                const std::vector<int>& truth,
                                const std::vector<int>& predicted, bool micro) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("evaluate_predictions: size mismatch");
  }
  size_t n_authors = authors.size();
  EvalReport r;
  r.authors = authors;
  r.confusion.assign(n_authors, std::vector<int64_t>(n_authors, 0));
  r.test_count.assign(n_authors, 0);
  r.precision.assign(n_authors, 0.0);
  r.recall.assign(n_authors, 0.0);

  int64_t correct = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    size_t t = static_cast<size_t>(truth[i]);
    size_t p = static_cast<size_t>(predicted[i]);
    r.confusion[t][p]++;
    r.test_count[t]++;
    if (t == p) ++correct;
  }
  r.accuracy = truth.empty() ? 0.0 : static_cast<double>(correct) /
                                         static_cast<double>(truth.size());

  double sum_p = 0.0, sum_r = 0.0;
  size_t present = 0;
  for (size_t a = 0; a < n_authors; ++a) {
    int64_t tp = r.confusion[a][a];
    int64_t fp = 0;
    for (size_t t = 0; t < n_authors; ++t) {
      if (t != a) fp += r.confusion[t][a];
    }
    r.precision[a] = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                                 : 0.0;
    r.recall[a] = r.test_count[a] > 0
                      ? static_cast<double>(tp) / static_cast<double>(r.test_count[a])
                      : 0.0;
    if (r.test_count[a] > 0) {
      sum_p += r.precision[a];
      sum_r += r.recall[a];
      ++present;
    }
  }
  r.macro_p = present ? sum_p / static_cast<double>(present) : 0.0;
  r.macro_r = present ? sum_r / static_cast<double>(present) : 0.0;
  // Micro-averaged P and R both equal accuracy for single-label prediction.
  r.f05 = micro ? f_measure(r.accuracy, r.accuracy) : f_measure(r.macro_p, r.macro_r);
  return r;
}

namespace {

// Stratified fold assignment: per-author shuffle, dealt round-robin with a
// rolling counter so fold sizes stay balanced across authors.
std::vector<int> assign_folds(const LabeledDataset& ds, int folds, Rng rng) {
  std::vector<int> fold_of(ds.size(), 0);
  size_t counter = 0;
  for (size_t a = 0; a < ds.num_authors(); ++a) {
    auto idx = ds.subjects_of_author(static_cast<int>(a));
    rng.shuffle(idx);
    for (size_t i : idx) {
      fold_of[i] = static_cast<int>(counter % static_cast<size_t>(folds));
      ++counter;
    }
  }
  return fold_of;
}

struct MeanStd {
  double mean = 0.0, stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return m;
}

}  // namespace

CvSummary cross_validate(const LabeledDataset& ds, const CvConfig& cfg) {
  if (cfg.folds < 2) throw std::invalid_argument("cross_validate: folds must be >= 2");
  if (ds.size() < static_cast<size_t>(cfg.folds)) {
    throw std::invalid_argument("cross_validate: fewer subjects than folds");
  }
  std::vector<std::string> warnings;
  std::vector<int64_t> per_author(ds.num_authors(), 0);
  for (int l : ds.labels) per_author[static_cast<size_t>(l)]++;
  for (size_t a = 0; a < per_author.size(); ++a) {
    if (per_author[a] < cfg.folds) {
      warnings.push_back("stratification: author " + ds.authors[a] + " has " +
                         std::to_string(per_author[a]) + " subjects for " +
                         std::to_string(cfg.folds) + " folds");
    }
  }

  Rng root(cfg.seed);
  size_t tasks = static_cast<size_t>(cfg.repeats) * static_cast<size_t>(cfg.folds);
  std::vector<EvalReport> reports(tasks);
  std::vector<char> have(tasks, 0);

  // Fold assignments are fixed per repeat up front; fold evaluations then
  // run as independent tasks.
  std::vector<std::vector<int>> fold_of(static_cast<size_t>(cfg.repeats));
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    fold_of[static_cast<size_t>(rep)] =
        assign_folds(ds, cfg.folds, root.split(static_cast<uint64_t>(rep)));
  }

  parallel_for(tasks, cfg.threads, [&](size_t task) {
    int rep = static_cast<int>(task) / cfg.folds;
    int fold = static_cast<int>(task) % cfg.folds;
    const auto& assignment = fold_of[static_cast<size_t>(rep)];
    std::vector<size_t> train_idx, test_idx;
    for (size_t i = 0; i < ds.size(); ++i) {
      (assignment[i] == fold ? test_idx : train_idx).push_back(i);
    }
    if (test_idx.empty() || train_idx.empty()) return;

    // Ranking and selection see the training folds only.
    auto ranked = rank_features_subset(ds, train_idx, cfg.method);
    auto selected = select_top_k(ranked, cfg.top_k);

    TrainConfig tc = cfg.train;
    tc.threads = 1;  // parallelism lives at the fold level here
    tc.seed = splitmix64(cfg.seed ^ splitmix64(task + 1));
    AttributionModel model = train_unchecked(ds.subset(train_idx), selected, tc);

    std::vector<int> truth, predicted;
    for (size_t i : test_idx) {
      FeatureVector v;
      v.subject = ds.subjects[i];
      for (const auto& [col, cnt] : ds.rows[i]) {
        v.counts.emplace(ds.dict[static_cast<size_t>(col)], cnt);
      }
      truth.push_back(ds.labels[i]);
      predicted.push_back(model.predict_index(model.project(v)));
    }
    EvalReport r = evaluate_predictions(ds.authors, truth, predicted, cfg.micro);
    r.repeat = rep;
    r.fold = fold;
    r.warnings = warnings;
    reports[task] = std::move(r);
    have[task] = 1;
  });

  CvSummary s;
  std::vector<double> f05s, accs;
  for (size_t t = 0; t < tasks; ++t) {
    if (!have[t]) continue;
    f05s.push_back(reports[t].f05);
    accs.push_back(reports[t].accuracy);
    s.reports.push_back(std::move(reports[t]));
  }
  auto f = mean_std(f05s);
  auto a = mean_std(accs);
  s.mean_f05 = f.mean;
  s.stddev_f05 = f.stddev;
  s.mean_accuracy = a.mean;
  s.stddev_accuracy = a.stddev;
  return s;
}

std::vector<SweepPoint> scalability_sweep(const LabeledDataset& ds,
                                          const std::vector<int>& author_counts,
                                          const CvConfig& cfg, uint64_t sample_seed) {
  for (size_t i = 1; i < author_counts.size(); ++i) {
    if (author_counts[i] < author_counts[i - 1]) {
      throw std::invalid_argument("scalability_sweep: counts must be non-decreasing");
    }
  }
  std::vector<SweepPoint> curve;
  Rng root(sample_seed);
  for (int count : author_counts) {
    if (count < 2 || static_cast<size_t>(count) > ds.num_authors()) {
      throw std::invalid_argument("scalability_sweep: author count out of range: " +
                                  std::to_string(count));
    }
    std::vector<std::string> pool = ds.authors;
    Rng r = root.split(static_cast<uint64_t>(count));
    r.shuffle(pool);
    pool.resize(static_cast<size_t>(count));
    auto restricted = ds.restrict_authors(pool);
    auto summary = cross_validate(restricted, cfg);
    curve.push_back({count, summary.mean_f05, summary.stddev_f05});
  }
  return curve;
}

std::string render_eval_report(const CvSummary& s, size_t num_authors) {
  std::string out = "# repeat\tfold\tauthors\tP\tR\tF0.5\n";
  for (const auto& r : s.reports) {
    out += std::to_string(r.repeat) + "\t" + std::to_string(r.fold) + "\t" +
           std::to_string(num_authors) + "\t" + fmt_double(r.macro_p, 6) + "\t" +
           fmt_double(r.macro_r, 6) + "\t" + fmt_double(r.f05, 6) + "\n";
  }
  out += "# summary mean_f05=" + fmt_double(s.mean_f05, 6) +
         " stddev_f05=" + fmt_double(s.stddev_f05, 6) +
         " mean_accuracy=" + fmt_double(s.mean_accuracy, 6) +
         " stddev_accuracy=" + fmt_double(s.stddev_accuracy, 6) + "\n";
  for (const auto& r : s.reports) {
    for (const auto& w : r.warnings) {
      out += "# warning " + w + "\n";
    }
    break;  // warnings are identical across reports; emit once
  }
  return out;
}

std::string render_curve(const std::vector<SweepPoint>& curve) {
  std::string out = "# authors\tmeanF0.5\tstddev\n";
  for (const auto& p : curve) {
    out += std::to_string(p.authors) + "\t" + fmt_double(p.mean_f05, 6) + "\t" +
           fmt_double(p.stddev_f05, 6) + "\n";
  }
  return out;
}

}  // namespace stylo

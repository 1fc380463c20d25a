// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stylo/rng.hpp"
#include "stylo/util.hpp"

namespace stylo {

namespace {

void l2_normalize(SparseRow& row) {
  double sq = 0.0;
  for (const auto& [_, v] : row) sq += v * v;
  if (sq <= 0.0) return;
  double inv = 1.0 / std::sqrt(sq);
  for (auto& [_, v] : row) v *= inv;
}

// Dual coordinate descent for min_w 0.5*w'w + C * sum max(0, 1 - y_i w'x_i),
// bias folded in as a constant feature of value 1.
void solve_binary(const std::vector<SparseRow>& rows, const std::vector<double>& qii,
                  const std::vector<int>& y, double c, int max_iter, double eps, Rng rng,
                  std::vector<double>& w) {
  size_t n = rows.size();
  std::vector<double> alpha(n, 0.0);
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;

  for (int iter = 0; iter < max_iter; ++iter) {
    rng.shuffle(order);
    double max_pg = 0.0;
    for (size_t oi = 0; oi < n; ++oi) {
      size_t i = order[oi];
      double yi = y[i];
      double score = w.back();  // bias coordinate (value 1)
      for (const auto& [col, v] : rows[i]) score += w[static_cast<size_t>(col)] * v;
      double g = yi * score - 1.0;

      double pg = g;
      if (alpha[i] <= 0.0) pg = std::min(g, 0.0);
      else if (alpha[i] >= c) pg = std::max(g, 0.0);
      max_pg = std::max(max_pg, std::fabs(pg));
      if (std::fabs(pg) < 1e-12) continue;

      double a_new = std::clamp(alpha[i] - g / qii[i], 0.0, c);
      double delta = (a_new - alpha[i]) * yi;
      if (delta == 0.0) continue;
      alpha[i] = a_new;
      for (const auto& [col, v] : rows[i]) w[static_cast<size_t>(col)] += delta * v;
      w.back() += delta;
    }
    if (max_pg < eps) break;
  }
}

std::vector<SparseRow> project_rows(const LabeledDataset& ds,
                                    const std::vector<FeatureId>& features,
                                    bool l2_normalize_rows, size_t& nnz_out) {
  std::map<int, int> col_map;  // dataset column -> model column
  for (size_t j = 0; j < features.size(); ++j) {
    auto it = ds.index.find(features[j]);
    if (it != ds.index.end()) col_map[it->second] = static_cast<int>(j);
  }
  std::vector<SparseRow> rows(ds.size());
  nnz_out = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    SparseRow row;
    for (const auto& [col, cnt] : ds.rows[i]) {
      auto it = col_map.find(col);
      if (it != col_map.end()) {
        row.emplace_back(it->second, static_cast<double>(cnt));
      }
    }
    std::sort(row.begin(), row.end());
    if (l2_normalize_rows) l2_normalize(row);
    nnz_out += row.size();
    rows[i] = std::move(row);
  }
  return rows;
}

}  // namespace

SparseRow AttributionModel::project(const FeatureVector& v) const {
  std::map<FeatureId, int> fidx;
  for (size_t j = 0; j < features.size(); ++j) fidx[features[j]] = static_cast<int>(j);
  SparseRow row;
  for (const auto& [id, cnt] : v.counts) {
    auto it = fidx.find(id);
    if (it != fidx.end()) row.emplace_back(it->second, static_cast<double>(cnt));
  }
  if (config.l2_normalize) l2_normalize(row);
  return row;
}

std::vector<double> AttributionModel::decision_values(const SparseRow& row) const {
  std::vector<double> scores(authors.size(), 0.0);
  for (size_t a = 0; a < authors.size(); ++a) {
    const auto& w = weights[a];
    double s = w.back();
    for (const auto& [col, v] : row) s += w[static_cast<size_t>(col)] * v;
    scores[a] = s;
  }
  return scores;
}

int AttributionModel::predict_index(const SparseRow& row) const {
  auto scores = decision_values(row);
  size_t best = 0;
  for (size_t a = 1; a < scores.size(); ++a) {
    if (scores[a] > scores[best]) best = a;  // strict: ties keep the lex-smallest
  }
  return static_cast<int>(best);
}

std::string AttributionModel::predict(const FeatureVector& v) const {
  return authors.at(static_cast<size_t>(predict_index(project(v))));
}

AttributionModel train_unchecked(const LabeledDataset& ds,
                                 const std::vector<FeatureId>& features,
                                 const TrainConfig& cfg) {
  if (features.empty()) throw std::invalid_argument("train: empty feature set");
  AttributionModel m;
  m.authors = ds.authors;
  m.features = features;
  m.config = cfg;

  size_t nnz = 0;
  auto rows = project_rows(ds, features, cfg.l2_normalize, nnz);
  if (nnz == 0) {
    throw std::invalid_argument("train: no selected feature occurs in the dataset");
  }
  std::vector<double> qii(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    double sq = 1.0;  // bias coordinate
    for (const auto& [_, v] : rows[i]) sq += v * v;
    qii[i] = sq;
  }

  size_t dim = features.size() + 1;
  m.weights.assign(ds.num_authors(), {});
  Rng root(cfg.seed);
  // Binary problems are independent; run them in parallel, each with a
  // stream split off the root seed so thread count never affects results.
  parallel_for(ds.num_authors(), cfg.threads, [&](size_t a) {
    std::vector<int> y(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      y[i] = ds.labels[i] == static_cast<int>(a) ? 1 : -1;
    }
    std::vector<double> w(dim, 0.0);
    solve_binary(rows, qii, y, cfg.c, cfg.max_iter, cfg.eps, root.split(a), w);
    m.weights[a] = std::move(w);
  });
  return m;
}

AttributionModel train(const LabeledDataset& ds, const std::vector<FeatureId>& features,
                       const TrainConfig& cfg) {
  std::vector<size_t> per_author(ds.num_authors(), 0);
  for (int l : ds.labels) per_author[static_cast<size_t>(l)]++;
  for (size_t a = 0; a < per_author.size(); ++a) {
    if (per_author[a] < 2) {
      throw std::invalid_argument("train: author has fewer than 2 subjects: " +
                                  ds.authors[a]);
    }
  }
  return train_unchecked(ds, features, cfg);
}

std::string AttributionModel::serialize() const {
  std::string out = "# stylo-model v1\n";
  out += "authors " + std::to_string(authors.size()) + "\n";
  out += "features " + std::to_string(features.size()) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "config %.17g %d %.17g %llu %d\n", config.c,
                config.max_iter, config.eps,
                static_cast<unsigned long long>(config.seed), config.l2_normalize ? 1 : 0);
  out += buf;
  for (const auto& a : authors) out += "A " + a + "\n";
  for (const auto& f : features) {
    out += "F " + std::string(family_name(f.family)) + " " + percent_escape(f.descriptor) +
           "\n";
  }
  for (size_t a = 0; a < weights.size(); ++a) {
    out += "W " + std::to_string(a);
    for (double w : weights[a]) {
      std::snprintf(buf, sizeof(buf), " %.17g", w);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

AttributionModel AttributionModel::parse(std::string_view text) {
  AttributionModel m;
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != "# stylo-model v1") {
    throw std::runtime_error("model: bad or missing version header");
  }
  size_t n_authors = 0, n_features = 0;
  for (size_t li = 1; li < lines.size(); ++li) {
    std::string_view line = trim(lines[li]);
    if (line.empty() || line.starts_with("#")) continue;
    auto toks = split_ws(line);
    if (toks[0] == "authors" && toks.size() == 2) {
      n_authors = static_cast<size_t>(*parse_int(toks[1]));
    } else if (toks[0] == "features" && toks.size() == 2) {
      n_features = static_cast<size_t>(*parse_int(toks[1]));
    } else if (toks[0] == "config" && toks.size() == 6) {
      m.config.c = std::stod(std::string(toks[1]));
      m.config.max_iter = static_cast<int>(*parse_int(toks[2]));
      m.config.eps = std::stod(std::string(toks[3]));
      m.config.seed = static_cast<uint64_t>(*parse_int(toks[4]));
      m.config.l2_normalize = toks[5] == "1";
    } else if (toks[0] == "A" && toks.size() == 2) {
      m.authors.emplace_back(toks[1]);
    } else if (toks[0] == "F" && toks.size() == 3) {
      FeatureFamily fam;
      if (!family_from_name(toks[1], fam)) throw std::runtime_error("model: bad family");
      m.features.push_back({fam, percent_unescape(toks[2])});
    } else if (toks[0] == "W" && toks.size() >= 2) {
      std::vector<double> w;
      for (size_t i = 2; i < toks.size(); ++i) w.push_back(std::stod(std::string(toks[i])));
      m.weights.push_back(std::move(w));
    } else {
      throw std::runtime_error("model: unrecognized line: " + std::string(line));
    }
  }
  if (m.authors.size() != n_authors || m.features.size() != n_features ||
      m.weights.size() != n_authors) {
    throw std::runtime_error("model: header/body count mismatch");
  }
  for (const auto& w : m.weights) {
    if (w.size() != n_features + 1) throw std::runtime_error("model: bad weight row size");
  }
  return m;
}

void AttributionModel::save_file(const std::string& path) const {
  write_file(path, serialize());
}

AttributionModel AttributionModel::load_file(const std::string& path) {
  return parse(read_file(path));
}

}  // namespace stylo

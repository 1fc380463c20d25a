// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "stylo/util.hpp"

namespace stylo {

const char* rank_method_name(RankMethod m) {
  return m == RankMethod::MutualInformation ? "mutual-information" : "information-gain";
}

bool rank_method_from_name(std::string_view name, RankMethod& out) {
  if (name == "mi" || name == "mutual-information") {
    out = RankMethod::MutualInformation;
    return true;
  }
  if (name == "ig" || name == "information-gain") {
    out = RankMethod::InformationGain;
    return true;
  }
  return false;
}

double mi_bits_from_table(const std::vector<std::vector<double>>& joint) {
  size_t rows = joint.size();
  if (rows == 0) return 0.0;
  size_t cols = joint[0].size();
  double total = 0.0;
  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      row_sum[r] += joint[r][c];
      col_sum[c] += joint[r][c];
      total += joint[r][c];
    }
  }
  if (total <= 0.0) return 0.0;
  double mi = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      double n = joint[r][c];
      if (n <= 0.0) continue;
      mi += (n / total) * std::log2(n * total / (row_sum[r] * col_sum[c]));
    }
  }
  return mi;
}

namespace {

struct PresenceStats {
  // Counts over a subject subset.
  int64_t n = 0;                       // subjects
  std::vector<int64_t> per_author;     // subjects per author
  std::vector<int64_t> present;        // subjects with the feature, per author
  int64_t present_total = 0;

  double mi() const {
    if (n == 0) return 0.0;
    double dn = static_cast<double>(n);
    int64_t absent_total = n - present_total;
    double mi = 0.0;
    for (size_t a = 0; a < per_author.size(); ++a) {
      int64_t na = per_author[a];
      if (na == 0) continue;
      int64_t n1a = present[a];
      int64_t n0a = na - n1a;
      if (n1a > 0) {
        mi += (n1a / dn) * std::log2(static_cast<double>(n1a) * dn /
                                     (static_cast<double>(present_total) * na));
      }
      if (n0a > 0) {
        mi += (n0a / dn) * std::log2(static_cast<double>(n0a) * dn /
                                     (static_cast<double>(absent_total) * na));
      }
    }
    return mi;
  }

  // H(A) - H(A|F), computed from entropies rather than the joint sum.
  double ig() const {
    if (n == 0) return 0.0;
    double dn = static_cast<double>(n);
    double ha = 0.0;
    for (int64_t na : per_author) {
      if (na > 0) ha -= (na / dn) * std::log2(na / dn);
    }
    auto cond_entropy = [&](bool present_side) {
      int64_t side_total = present_side ? present_total : n - present_total;
      if (side_total == 0) return 0.0;
      double h = 0.0;
      for (size_t a = 0; a < per_author.size(); ++a) {
        int64_t c = present_side ? present[a] : per_author[a] - present[a];
        if (c > 0) {
          double p = static_cast<double>(c) / static_cast<double>(side_total);
          h -= p * std::log2(p);
        }
      }
      return h * (static_cast<double>(side_total) / dn);
    };
    return ha - cond_entropy(true) - cond_entropy(false);
  }
};

std::vector<size_t> all_indices(size_t n) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

PresenceStats presence_for_feature(const LabeledDataset& ds, int col,
                                   const std::vector<size_t>& subject_indices) {
  PresenceStats st;
  st.per_author.assign(ds.num_authors(), 0);
  st.present.assign(ds.num_authors(), 0);
  st.n = static_cast<int64_t>(subject_indices.size());
  for (size_t i : subject_indices) {
    size_t a = static_cast<size_t>(ds.labels[i]);
    st.per_author[a]++;
    const auto& row = ds.rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, INT64_MIN));
    if (it != row.end() && it->first == col) {
      st.present[a]++;
      st.present_total++;
    }
  }
  return st;
}

int require_column(const LabeledDataset& ds, const FeatureId& f) {
  auto it = ds.index.find(f);
  return it == ds.index.end() ? -1 : it->second;
}

}  // namespace

double mutual_information(const LabeledDataset& ds, const FeatureId& f) {
  int col = require_column(ds, f);
  if (col < 0) return 0.0;  // absent everywhere
  return presence_for_feature(ds, col, all_indices(ds.size())).mi();
}

double information_gain(const LabeledDataset& ds, const FeatureId& f) {
  int col = require_column(ds, f);
  if (col < 0) return 0.0;
  return presence_for_feature(ds, col, all_indices(ds.size())).ig();
}

double label_entropy(const LabeledDataset& ds) {
  std::vector<int64_t> per_author(ds.num_authors(), 0);
  for (int l : ds.labels) per_author[static_cast<size_t>(l)]++;
  double dn = static_cast<double>(ds.size());
  double h = 0.0;
  for (int64_t na : per_author) {
    if (na > 0) h -= (na / dn) * std::log2(na / dn);
  }
  return h;
}

double feature_entropy(const LabeledDataset& ds, const FeatureId& f) {
  int col = require_column(ds, f);
  if (col < 0) return 0.0;
  auto st = presence_for_feature(ds, col, all_indices(ds.size()));
  double dn = static_cast<double>(st.n);
  double h = 0.0;
  for (int64_t c : {st.present_total, st.n - st.present_total}) {
    if (c > 0) h -= (c / dn) * std::log2(c / dn);
  }
  return h;
}

namespace {

RankedFeatureList rank_impl(const LabeledDataset& ds,
                            const std::vector<size_t>& subject_indices, RankMethod method,
                            bool score_all) {
  // Flatten (column, author) presence pairs, sort, and sweep column groups.
  // This keeps per-ranking cost at O(nnz log nnz) even inside CV loops.
  std::vector<int64_t> per_author(ds.num_authors(), 0);
  size_t nnz = 0;
  for (size_t i : subject_indices) {
    per_author[static_cast<size_t>(ds.labels[i])]++;
    nnz += ds.rows[i].size();
  }
  std::vector<std::pair<int, int>> occ;  // (column, author)
  occ.reserve(nnz);
  for (size_t i : subject_indices) {
    int a = ds.labels[i];
    for (const auto& [col, cnt] : ds.rows[i]) {
      (void)cnt;
      occ.emplace_back(col, a);
    }
  }
  std::sort(occ.begin(), occ.end());

  RankedFeatureList rl;
  rl.method = method;
  PresenceStats st;
  st.n = static_cast<int64_t>(subject_indices.size());
  st.per_author = per_author;
  st.present.assign(ds.num_authors(), 0);

  std::vector<char> scored(score_all ? ds.dict.size() : 0, 0);
  size_t i = 0;
  while (i < occ.size()) {
    int col = occ[i].first;
    st.present_total = 0;
    std::vector<int> touched;
    for (; i < occ.size() && occ[i].first == col; ++i) {
      size_t a = static_cast<size_t>(occ[i].second);
      if (st.present[a] == 0) touched.push_back(occ[i].second);
      st.present[a]++;
      st.present_total++;
    }
    double bits = method == RankMethod::MutualInformation ? st.mi() : st.ig();
    rl.entries.push_back({ds.dict[static_cast<size_t>(col)], bits});
    for (int a : touched) st.present[static_cast<size_t>(a)] = 0;
    if (score_all) scored[static_cast<size_t>(col)] = 1;
  }
  if (score_all) {
    for (size_t col = 0; col < ds.dict.size(); ++col) {
      if (!scored[col]) rl.entries.push_back({ds.dict[col], 0.0});
    }
  }

  std::stable_sort(rl.entries.begin(), rl.entries.end(),
                   [](const RankedFeature& a, const RankedFeature& b) {
                     if (a.bits != b.bits) return a.bits > b.bits;
                     if (a.id.descriptor != b.id.descriptor) {
                       return a.id.descriptor < b.id.descriptor;
                     }
                     return a.id.family < b.id.family;
                   });
  return rl;
}

}  // namespace

RankedFeatureList rank_features(const LabeledDataset& ds, RankMethod method) {
  if (ds.size() == 0) throw std::invalid_argument("rank_features: empty dataset");
  return rank_impl(ds, all_indices(ds.size()), method, /*score_all=*/true);
}

RankedFeatureList rank_features_subset(const LabeledDataset& ds,
                                       const std::vector<size_t>& subject_indices,
                                       RankMethod method) {
  return rank_impl(ds, subject_indices, method, /*score_all=*/false);
}

std::vector<FeatureId> select_top_k(const RankedFeatureList& rl, size_t k) {
  size_t n = std::min(k, rl.entries.size());
  std::vector<FeatureId> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(rl.entries[i].id);
  return out;
}

std::vector<AuditEntry> audit_misleading(const RankedFeatureList& rl,
                                         const std::set<FeatureId>& unknown_origin,
                                         size_t top_k) {
  std::vector<AuditEntry> out;
  size_t n = std::min(top_k, rl.entries.size());
  for (size_t i = 0; i < n; ++i) {
    AuditEntry e;
    e.rank = i + 1;
    e.id = rl.entries[i].id;
    e.bits = rl.entries[i].bits;
    e.unknown_origin = unknown_origin.count(e.id) > 0;
    out.push_back(std::move(e));
  }
  return out;
}

std::string render_ranked_list(const RankedFeatureList& rl) {
  std::string out = "# method=" + std::string(rank_method_name(rl.method)) + "\n";
  for (size_t i = 0; i < rl.entries.size(); ++i) {
    const auto& e = rl.entries[i];
    out += std::to_string(i + 1) + "\t" + fmt_double(e.bits, 9) + "\t" +
           family_name(e.id.family) + "\t" + percent_escape(e.id.descriptor) + "\n";
  }
  return out;
}

}  // namespace stylo

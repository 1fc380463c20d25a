// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Feature-author association scoring. Features are binarized to
// presence/absence per subject; scores are in bits (log base 2). For binary
// presence features information gain and mutual information coincide; both
// are implemented, along independent routes, and cross-checked in tests.

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "stylo/dataset.hpp"

namespace stylo {

enum class RankMethod { MutualInformation, InformationGain };

const char* rank_method_name(RankMethod m);
bool rank_method_from_name(std::string_view name, RankMethod& out);

struct RankedFeature {
  FeatureId id;
  double bits = 0.0;
};

// Non-increasing by score; ties broken by descriptor, then family.
struct RankedFeatureList {
  std::vector<RankedFeature> entries;
  RankMethod method = RankMethod::MutualInformation;
};

// Feature-count presets used by the systems the evaluation compares.
inline constexpr size_t kTopKCaliskan = 4500;
inline constexpr size_t kTopKOba2 = 6500;
inline constexpr size_t kTopKRosenblum = 10000;

// MI over an arbitrary contingency table of non-negative counts (rows x
// cols), in bits. Zero cells contribute zero.
double mi_bits_from_table(const std::vector<std::vector<double>>& joint);

double mutual_information(const LabeledDataset& ds, const FeatureId& f);
double information_gain(const LabeledDataset& ds, const FeatureId& f);

// Entropy helpers (presence-based for features).
double label_entropy(const LabeledDataset& ds);
double feature_entropy(const LabeledDataset& ds, const FeatureId& f);

// Scores every dictionary feature.
RankedFeatureList rank_features(const LabeledDataset& ds, RankMethod method);

// Scores only features present in the given subject subset; this is the
// cross-validation path, and it never sees held-out rows.
RankedFeatureList rank_features_subset(const LabeledDataset& ds,
                                       const std::vector<size_t>& subject_indices,
                                       RankMethod method);

std::vector<FeatureId> select_top_k(const RankedFeatureList& rl, size_t k);

// Misleading-feature audit: flags top-k features that also occur in
// unknown-provenance (generated-name) functions.
struct AuditEntry {
  size_t rank = 0;  // 1-based
  FeatureId id;
  double bits = 0.0;
  bool unknown_origin = false;
};

std::vector<AuditEntry> audit_misleading(const RankedFeatureList& rl,
                                         const std::set<FeatureId>& unknown_origin,
                                         size_t top_k);

// Dump format: <rank>\t<score-bits>\t<family>\t<descriptor>.
std::string render_ranked_list(const RankedFeatureList& rl);

}  // namespace stylo

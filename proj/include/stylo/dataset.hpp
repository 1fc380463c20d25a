// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Labeled dataset: sparse feature rows interned against a shared feature
// dictionary, with author labels. The interning order is canonical (sorted
// FeatureId), so two builds over the same vectors produce identical column
// numbering.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylo/features.hpp"

namespace stylo {

struct LabeledDataset {
  std::vector<std::string> subjects;              // unique ids
  std::vector<int> labels;                        // index into authors
  std::vector<std::string> authors;               // sorted unique labels
  std::vector<FeatureId> dict;                    // column -> feature
  std::map<FeatureId, int> index;                 // feature -> column
  std::vector<std::vector<std::pair<int, int64_t>>> rows;  // sorted by column

  size_t size() const { return subjects.size(); }
  size_t num_features() const { return dict.size(); }
  size_t num_authors() const { return authors.size(); }

  // Throws std::invalid_argument on duplicate subject ids or empty input;
  // every author in `labels` must appear at least once by construction.
  static LabeledDataset build(const std::vector<FeatureVector>& vectors,
                              const std::vector<std::string>& labels);

  // Subset view over the same dictionary/author universe (labels keep their
  // indices even when an author loses all subjects).
  LabeledDataset subset(const std::vector<size_t>& subject_indices) const;

  // Subjects whose author is in `keep` (authors renumbered to the subset,
  // sorted); used by the scalability sweep.
  LabeledDataset restrict_authors(const std::vector<std::string>& keep) const;

  std::vector<size_t> subjects_of_author(int author) const;
};

}  // namespace stylo

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/dataset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stylo {

LabeledDataset LabeledDataset::build(const std::vector<FeatureVector>& vectors,
                                     const std::vector<std::string>& labels) {
  if (vectors.empty()) throw std::invalid_argument("dataset: no subjects");
  if (vectors.size() != labels.size()) {
    throw std::invalid_argument("dataset: vectors/labels size mismatch");
  }
  LabeledDataset ds;

  std::set<std::string> subject_set;
  for (const auto& v : vectors) {
    if (!subject_set.insert(v.subject).second) {
      throw std::invalid_argument("dataset: duplicate subject id: " + v.subject);
    }
  }

  std::set<std::string> author_set(labels.begin(), labels.end());
  ds.authors.assign(author_set.begin(), author_set.end());
  std::map<std::string, int> author_index;
  for (size_t i = 0; i < ds.authors.size(); ++i) {
    author_index[ds.authors[i]] = static_cast<int>(i);
  }

  std::set<FeatureId> feature_set;
  for (const auto& v : vectors) {
    for (const auto& [id, n] : v.counts) feature_set.insert(id);
  }
  ds.dict.assign(feature_set.begin(), feature_set.end());
  for (size_t i = 0; i < ds.dict.size(); ++i) ds.index[ds.dict[i]] = static_cast<int>(i);

  ds.subjects.reserve(vectors.size());
  ds.rows.reserve(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i) {
    ds.subjects.push_back(vectors[i].subject);
    ds.labels.push_back(author_index[labels[i]]);
    std::vector<std::pair<int, int64_t>> row;
    row.reserve(vectors[i].counts.size());
    for (const auto& [id, n] : vectors[i].counts) {
      row.emplace_back(ds.index.at(id), n);  // map order == sorted ids == sorted columns
    }
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

LabeledDataset LabeledDataset::subset(const std::vector<size_t>& subject_indices) const {
  LabeledDataset out;
  out.authors = authors;
  out.dict = dict;
  out.index = index;
  for (size_t i : subject_indices) {
    out.subjects.push_back(subjects.at(i));
    out.labels.push_back(labels.at(i));
    out.rows.push_back(rows.at(i));
  }
  return out;
}

LabeledDataset LabeledDataset::restrict_authors(const std::vector<std::string>& keep) const {
  std::set<std::string> keep_set(keep.begin(), keep.end());
  LabeledDataset out;
  out.authors.assign(keep_set.begin(), keep_set.end());
  std::map<std::string, int> new_index;
  for (size_t i = 0; i < out.authors.size(); ++i) {
    new_index[out.authors[i]] = static_cast<int>(i);
  }
  out.dict = dict;
  out.index = index;
  for (size_t i = 0; i < subjects.size(); ++i) {
    auto it = new_index.find(authors[static_cast<size_t>(labels[i])]);
    if (it == new_index.end()) continue;
    out.subjects.push_back(subjects[i]);
    out.labels.push_back(it->second);
    out.rows.push_back(rows[i]);
  }
  return out;
}

std::vector<size_t> LabeledDataset::subjects_of_author(int author) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == author) out.push_back(i);
  }
  return out;
}

}  // namespace stylo

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// File-backed feature store: a version header, a subject index, and
// append-only feature dump records. Reloading a store reproduces every
// vector exactly. Corrupt records are skipped with line-level recovery and
// reported, never fatal; a wrong version header is fatal.
//
//   # stylo-feature-store v1
//   !subject\t<id>\t<kind>\t<author|->\t<provenance|->
//   <subject>\t<family>\t<descriptor>\t<count>

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stylo/features.hpp"

namespace stylo {

class StoreError : public std::runtime_error {
 public:
  explicit StoreError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SubjectInfo {
  std::string id;
  std::string kind;        // "program" or "function"
  std::string author;      // empty = unlabeled
  std::string provenance;  // functions only; empty otherwise
};

struct LoadStats {
  size_t skipped_records = 0;
  std::vector<std::string> issues;
};

struct FeatureStore {
  static constexpr const char* kVersionLine = "# stylo-feature-store v1";

  std::vector<SubjectInfo> subjects;
  std::vector<FeatureVector> vectors;  // aligned with subjects

  int subject_index(std::string_view id) const;
  void add(SubjectInfo info, FeatureVector vec);  // throws on duplicate id

  std::string serialize() const;
  void save_file(const std::string& path) const;

  // Throws StoreError on a missing/mismatched version header. Unparseable
  // records are skipped and counted in stats. Records for subjects missing
  // from the index get an implicit program-kind subject, so bare feature
  // dumps load too.
  static FeatureStore parse(std::string_view text, LoadStats* stats = nullptr);
  static FeatureStore load_file(const std::string& path, LoadStats* stats = nullptr);

  std::map<std::string, std::string> author_by_subject() const;
};

}  // namespace stylo

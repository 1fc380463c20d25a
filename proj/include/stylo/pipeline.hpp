// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// End-to-end orchestration: ingest -> filter -> extract -> store -> rank ->
// cross-validate (-> cluster, -> audit), with every artifact persisted under
// an output directory. Stages are isolated: ranking and evaluation consume
// the written feature store, never the raw programs. Given identical inputs,
// configuration and seeds, every output byte is reproducible.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylo/cluster.hpp"
#include "stylo/eval.hpp"
#include "stylo/features.hpp"
#include "stylo/ranking.hpp"

namespace stylo {

struct PipelineConfig {
  std::vector<std::string> listing_paths;  // interchange-format documents
  std::string signatures_path;             // empty -> builtin signatures
  std::string manifest_path;               // optional author-label override

  FeatureConfig features;
  bool filtration = true;     // user functions only
  bool per_function = false;  // store function-level vectors as well

  RankMethod method = RankMethod::MutualInformation;
  size_t top_k = kTopKCaliskan;
  CvConfig cv;

  bool run_cluster = false;
  KmeansConfig kmeans;
  double theta_correct = 0.75;
  double theta_wrong = 0.5;

  bool run_audit = false;
  size_t audit_top_k = 50;

  std::string out_dir;
  int threads = 0;
};

// Artifact file names under out_dir.
inline constexpr const char* kStoreFile = "features.tsv";
inline constexpr const char* kRankingFile = "ranking.tsv";
inline constexpr const char* kEvalFile = "eval.tsv";
inline constexpr const char* kClustersFile = "clusters.tsv";
inline constexpr const char* kClusterReportFile = "cluster_report.tsv";
inline constexpr const char* kAuditFile = "audit.tsv";

struct PipelineResult {
  int exit_code = 0;  // 0 ok, 2 data error, 3 internal error
  std::string failed_stage;
  std::string error;
  std::vector<std::string> artifacts;  // paths written, in stage order
  CvSummary cv_summary;                // populated on success
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace stylo

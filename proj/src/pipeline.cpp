// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/pipeline.hpp"

#include <filesystem>
#include <set>
#include <stdexcept>

#include "stylo/dataset.hpp"
#include "stylo/forge.hpp"
#include "stylo/listing.hpp"
#include "stylo/signatures.hpp"
#include "stylo/store.hpp"
#include "stylo/util.hpp"

namespace stylo {

namespace {

struct StageError : std::runtime_error {
  StageError(std::string stage_, int code_, const std::string& msg)
      : std::runtime_error(msg), stage(std::move(stage_)), code(code_) {}
  std::string stage;
  int code;
};

std::string out_path(const PipelineConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult result;
  try {
    // ---- config ----------------------------------------------------------
    if (cfg.out_dir.empty()) throw StageError("config", 2, "no output directory");
    if (cfg.listing_paths.empty()) throw StageError("config", 2, "no input listings");
    for (const auto& p : cfg.listing_paths) {
      if (!file_exists(p)) throw StageError("config", 2, "missing input: " + p);
    }
    if (!cfg.signatures_path.empty() && !file_exists(cfg.signatures_path)) {
      throw StageError("config", 2, "missing signature file: " + cfg.signatures_path);
    }
    if (!cfg.manifest_path.empty() && !file_exists(cfg.manifest_path)) {
      throw StageError("config", 2, "missing manifest: " + cfg.manifest_path);
    }
    std::filesystem::create_directories(cfg.out_dir);

    // ---- ingest ----------------------------------------------------------
    SignatureSet sigs = cfg.signatures_path.empty()
                            ? builtin_signatures()
                            : SignatureSet::load_file(cfg.signatures_path);
    std::map<std::string, std::string> label_override;
    if (!cfg.manifest_path.empty()) {
      auto manifest = CorpusManifest::parse(read_file(cfg.manifest_path));
      for (const auto& e : manifest.entries) label_override[e.program_id] = e.author;
    }
    std::vector<Program> programs;
    std::set<std::string> ids;
    for (const auto& path : cfg.listing_paths) {
      Program p;
      try {
        p = load_listing_file(path);
      } catch (const ParseError& e) {
        throw StageError("ingest", 2, path + ": " + e.what());
      }
      auto it = label_override.find(p.id);
      if (it != label_override.end()) p.author = it->second;
      if (p.author.empty()) {
        throw StageError("ingest", 2, path + ": program " + p.id + " has no author label");
      }
      if (!ids.insert(p.id).second) {
        throw StageError("ingest", 2, "duplicate program id across inputs: " + p.id);
      }
      programs.push_back(classify_provenance(std::move(p), sigs));
    }

    // ---- extract ---------------------------------------------------------
    FeatureStore store;
    std::set<FeatureId> unknown_origin;
    bool keep_functions = cfg.per_function || cfg.run_cluster || cfg.run_audit;
    for (const auto& p : programs) {
      ProgramFeatures pf = extract_all(p, cfg.features, cfg.filtration);
      store.add(SubjectInfo{p.id, "program", p.author, ""}, std::move(pf.merged));
      if (keep_functions) {
        for (auto& ff : pf.functions) {
          store.add(SubjectInfo{p.id + "/" + ff.function_name, "function", p.author,
                                provenance_name(ff.provenance)},
                    std::move(ff.vec));
        }
      }
      // The audit needs to know which features occur in unknown-provenance
      // functions, whether or not those made it into the store.
      for (const auto& f : p.functions) {
        if (f.provenance != Provenance::Unknown) continue;
        for (const auto& [id, n] : extract_function(f, cfg.features).counts) {
          (void)n;
          unknown_origin.insert(id);
        }
      }
    }
    std::string store_path = out_path(cfg, kStoreFile);
    store.save_file(store_path);
    result.artifacts.push_back(store_path);

    // ---- rank (consumes the store, not the programs) ----------------------
    FeatureStore reloaded = FeatureStore::load_file(store_path);
    std::vector<FeatureVector> program_vectors;
    std::vector<std::string> labels;
    for (size_t i = 0; i < reloaded.subjects.size(); ++i) {
      if (reloaded.subjects[i].kind != "program") continue;
      program_vectors.push_back(reloaded.vectors[i]);
      labels.push_back(reloaded.subjects[i].author);
    }
    LabeledDataset ds = LabeledDataset::build(program_vectors, labels);
    RankedFeatureList ranked = rank_features(ds, cfg.method);
    std::string ranking_path = out_path(cfg, kRankingFile);
    write_file(ranking_path, render_ranked_list(ranked));
    result.artifacts.push_back(ranking_path);

    // ---- eval --------------------------------------------------------------
    CvConfig cv = cfg.cv;
    cv.method = cfg.method;
    cv.top_k = cfg.top_k;
    if (cv.threads == 0) cv.threads = cfg.threads;
    result.cv_summary = cross_validate(ds, cv);
    std::string eval_path = out_path(cfg, kEvalFile);
    write_file(eval_path, render_eval_report(result.cv_summary, ds.num_authors()));
    result.artifacts.push_back(eval_path);

    // ---- cluster (optional) ------------------------------------------------
    if (cfg.run_cluster) {
      std::vector<FeatureVector> fn_vectors;
      std::map<std::string, std::string> truth;
      for (size_t i = 0; i < reloaded.subjects.size(); ++i) {
        if (reloaded.subjects[i].kind != "function") continue;
        fn_vectors.push_back(reloaded.vectors[i]);
        truth[reloaded.subjects[i].id] = reloaded.subjects[i].author;
      }
      if (fn_vectors.empty()) {
        throw StageError("cluster", 2, "no function-level vectors in the store");
      }
      KmeansConfig km = cfg.kmeans;
      if (km.threads == 0) km.threads = cfg.threads;
      ClusteringResult clusters = kmeans(fn_vectors, km);
      std::string clusters_path = out_path(cfg, kClustersFile);
      write_file(clusters_path, render_assignment(clusters));
      result.artifacts.push_back(clusters_path);

      ClusterReport report =
          evaluate_clusters(clusters, truth, cfg.theta_correct, cfg.theta_wrong);
      std::string report_path = out_path(cfg, kClusterReportFile);
      write_file(report_path, render_cluster_report(report));
      result.artifacts.push_back(report_path);
    }

    // ---- audit (optional) ---------------------------------------------------
    if (cfg.run_audit) {
      auto entries = audit_misleading(ranked, unknown_origin, cfg.audit_top_k);
      std::string out = "# rank\tbits\tfamily\tdescriptor\tunknown_origin\n";
      size_t flagged = 0;
      for (const auto& e : entries) {
        out += std::to_string(e.rank) + "\t" + fmt_double(e.bits, 9) + "\t" +
               family_name(e.id.family) + "\t" + percent_escape(e.id.descriptor) + "\t" +
               (e.unknown_origin ? "yes" : "no") + "\n";
        flagged += e.unknown_origin;
      }
      out += "# flagged " + std::to_string(flagged) + " of " +
             std::to_string(entries.size()) + "\n";
      std::string audit_path = out_path(cfg, kAuditFile);
      write_file(audit_path, out);
      result.artifacts.push_back(audit_path);
    }
  } catch (const StageError& e) {
    result.exit_code = e.code;
    result.failed_stage = e.stage;
    result.error = e.what();
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.failed_stage = result.failed_stage.empty() ? "pipeline" : result.failed_stage;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.failed_stage = "internal";
    result.error = e.what();
  }
  return result;
}

}  // namespace stylo

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// The seven binary feature families, extracted from the program model into
// sparse integral vectors:
//
//   ngram    - windows of n consecutive mnemonics inside a basic block
//   opcode   - single-mnemonic occurrence counts
//   idiom    - 3-instruction templates, concrete and operands-wildcarded
//   graphlet - connected induced k-subgraphs of the CFG, up to isomorphism
//   rfg      - register flow graphs anchored at compare instructions
//   strconst - referenced strings and immediate constants
//   call     - call-target symbols (indirect calls pooled)
//
// Extractors are pure functions of immutable inputs; vectors merge by
// commutative addition, so extraction parallelizes across functions.
// Descriptors are canonical: equal features are byte-identical everywhere.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/prog_model.hpp"

namespace stylo {

enum class FeatureFamily : uint8_t { Ngram, Opcode, Idiom, Graphlet, Rfg, StrConst, Call };

const char* family_name(FeatureFamily f);
// Returns false on unknown name.
bool family_from_name(std::string_view name, FeatureFamily& out);

struct FeatureId {
  FeatureFamily family = FeatureFamily::Ngram;
  std::string descriptor;

  auto operator<=>(const FeatureId&) const = default;
};

// Sparse feature counts for one subject. Zero-count entries are never
// stored; iteration order is canonical (family, then descriptor).
struct FeatureVector {
  std::string subject;
  std::map<FeatureId, int64_t> counts;

  void add(FeatureId id, int64_t n = 1);
  int64_t count(const FeatureId& id) const;
  FeatureVector& operator+=(const FeatureVector& other);
  int64_t total() const;
  bool operator==(const FeatureVector&) const = default;
};

enum class IdiomPolicy { None, OperandsWild };

struct FeatureConfig {
  bool ngrams = true;
  bool opcodes = true;
  bool idioms = true;
  bool graphlets = true;
  bool rfg = true;
  bool strconst = true;
  bool calls = true;

  int ngram_n = 4;      // 1..8
  IdiomPolicy idiom_policy = IdiomPolicy::OperandsWild;
  int graphlet_k = 3;   // 2..5
  int rfg_window = 4;   // instructions each side of the compare
  std::vector<std::string> compare_mnemonics = {"cmp", "test"};

  bool is_compare(std::string_view m) const;
};

FeatureVector extract_opcode_ngrams(const Function& fn, int n);
FeatureVector extract_opcode_counts(const Function& fn);
FeatureVector extract_idioms(const Function& fn, IdiomPolicy policy);
FeatureVector extract_graphlets(const Function& fn, int k);
FeatureVector extract_rfg_features(const Function& fn, int window,
                                   const std::vector<std::string>& compare_mnemonics);
FeatureVector extract_strings_constants(const Function& fn);
FeatureVector extract_call_features(const Function& fn);

// All families enabled in cfg, merged into one vector for the function.
FeatureVector extract_function(const Function& fn, const FeatureConfig& cfg);

struct FunctionFeatures {
  std::string function_name;
  Provenance provenance = Provenance::Unknown;
  FeatureVector vec;  // subject = "<program-id>/<function-name>"
};

struct ProgramFeatures {
  FeatureVector merged;  // subject = program id; entrywise sum over included functions
  std::vector<FunctionFeatures> functions;
};

// filtered=true includes user functions only (provenance must already be
// classified); filtered=false includes every function.
ProgramFeatures extract_all(const Program& p, const FeatureConfig& cfg, bool filtered = true);

// One dump record: <subject>\t<family>\t<descriptor>\t<count>, descriptor
// percent-escaped.
std::string feature_line(std::string_view subject, const FeatureId& id, int64_t count);
std::string dump_vector(const FeatureVector& v);

}  // namespace stylo

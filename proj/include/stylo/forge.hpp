// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Corpus forge: seeded generation of author-styled programs in the
// interchange format. An author's style lives in a StyleProfile (mnemonic
// preferences, favored idiom triples, branching habits, vocabulary,
// register preferences, prologue variant). style_strength interpolates
// between a shared base style and the author-specific one: at 0 every
// author generates from the identical base process (chance-level
// attribution), at 1 the profiles are maximally separated.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stylo/prog_model.hpp"
#include "stylo/rng.hpp"

namespace stylo {

// Vocabulary with an author-owned slice: pick() returns an own entry with
// probability own_bias, otherwise a shared one.
template <typename T>
struct Lexicon {
  std::vector<T> shared;
  std::vector<T> own;
  double own_bias = 0.0;

  const T& pick(Rng& rng) const {
    if (!own.empty() && rng.chance(own_bias)) return own[rng.below(own.size())];
    return shared[rng.below(shared.size())];
  }
};

struct StyleProfile {
  std::string author;
  std::vector<std::pair<std::string, double>> mnemonic_dist;  // sums to 1
  std::vector<double> register_weights;  // over the body register pool
  std::vector<std::array<Instruction, 3>> idiom_habits;       // favored triples
  double habit_prob = 0.0;        // per-block habit insertion probability
  double cond_branch_prob = 0.5;  // conditional vs unconditional terminator
  double loop_prob = 0.15;        // back-edge probability for conditionals
  Lexicon<std::string> strings;
  Lexicon<long long> constants;
  Lexicon<std::string> calls;
  std::vector<Instruction> prologue;  // chosen variant
  double prologue_bias = 0.0;         // chance of using the own variant

  void validate() const;  // throws std::invalid_argument on degenerate profiles
};

// Derives one profile per author from the shared base style. Deterministic
// in (count, strength, seed).
std::vector<StyleProfile> make_profiles(int authors, double style_strength, uint64_t seed);

struct SizeParams {
  int functions_min = 3, functions_max = 6;
  int blocks_min = 3, blocks_max = 6;
  int instrs_min = 4, instrs_max = 8;  // body instructions per block
  double call_prob = 0.6;              // per block
  double stripped_fraction = 0.0;      // fraction of functions named sub_<hex>
  bool stripped_marker = false;        // stripped functions carry a style marker
};

struct CorpusManifest {
  uint64_t seed = 0;
  std::string params;
  struct Entry {
    std::string program_id;
    std::string author;
    std::string transforms;  // comma-joined, "-" when none
  };
  std::vector<Entry> entries;

  std::string serialize() const;
  static CorpusManifest parse(std::string_view text);  // throws std::runtime_error
};

struct Corpus {
  std::vector<Program> programs;
  CorpusManifest manifest;
};

// programs_per_author applies to every profile; the counts overload allows
// uneven corpora. Throws std::invalid_argument on fewer than 2 profiles,
// fewer than 2 programs per author, or a degenerate profile.
Corpus generate_corpus(const std::vector<StyleProfile>& profiles, int programs_per_author,
                       const SizeParams& size, uint64_t seed);
Corpus generate_corpus(const std::vector<StyleProfile>& profiles,
                       const std::vector<int>& programs_per_author, const SizeParams& size,
                       uint64_t seed);

// One-call convenience used by the CLI and tests.
struct ForgeOptions {
  int authors = 2;
  int programs_per_author = 8;
  double style_strength = 0.8;
  SizeParams size;
  uint64_t seed = 1;
  std::vector<int> per_author_counts;  // optional, overrides programs_per_author
};

Corpus forge_corpus(const ForgeOptions& opt);

// Corpus shaped like the paper-scale dataset: 179 authors, 736 programs,
// about 46k functions.
ForgeOptions paper_scale_preset(uint64_t seed);

// Simulated compiler variation: injected helper functions carrying known
// compiler signatures, a prologue rewrite, and peephole substitutions.
struct CompilerProfile {
  std::string tag;
  std::vector<Function> helpers;
  std::vector<Instruction> prologue;          // replaces the canonical prologue
  std::vector<std::string> peephole_rules;    // names from the IR rule table
  double peephole_intensity = 0.5;
};

// tags: profile-A, profile-B, profile-C. Throws on unknown tag.
CompilerProfile builtin_compiler_profile(std::string_view tag);

Program apply_compiler_profile(Program p, const CompilerProfile& cp, uint64_t seed);

}  // namespace stylo

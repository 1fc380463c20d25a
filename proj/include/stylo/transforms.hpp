// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Evading transforms over the program model. Source-level refactorings are
// mapped to binary-level analogs:
//
//   RR  register renaming: per-function register bijection
//   IR  instruction replacement: peephole rewrites from the equivalence table
//   DCI dead code insertion: no-effect instructions at random block positions
//   FCF control-flow flattening: dispatcher block + uniform back-edges
//   NM  new method: an instruction window extracted into a fresh function
//   MM  method move: function relocated/renamed, call sites re-pointed
//   RV  variable renaming: binary-level alias of RR
//
// Every transform is seed-deterministic, appends its tag to the program's
// transform history, never touches the author label, and produces a program
// that re-validates.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/prog_model.hpp"

namespace stylo {

enum class TransformKind { RR, IR, DCI, FCF, NM, MM, RV };

const char* transform_name(TransformKind k);
bool transform_from_name(std::string_view name, TransformKind& out);

struct TransformSpec {
  TransformKind kind = TransformKind::RR;
  double intensity = 1.0;  // in [0,1]; 0 is the identity

  // "RR:0.5" or bare "RR" (intensity 1). Throws std::invalid_argument.
  static TransformSpec parse(std::string_view text);
  std::string to_string() const;
};

struct TransformResult {
  Program program;
  size_t sites = 0;  // functions or positions rewritten
  std::vector<std::string> notes;
};

TransformResult apply_transform(const Program& p, const TransformSpec& spec, uint64_t seed);

// Convenience: apply a comma-separated chain ("RR:1,DCI:0.3") in order,
// splitting the seed per step.
TransformResult apply_transform_chain(const Program& p, std::string_view chain,
                                      uint64_t seed);

// Instruction-replacement rule: a 1- or 2-instruction pattern and its
// semantically equivalent rewrite. Rewrites preserve the multiset of
// referenced register names, the multiset of immediate values, and the CFG
// shape; each table entry carries a sample match for its unit test.
struct IrRule {
  std::string name;
  size_t window = 1;
  bool (*matches)(const Instruction* w, size_t n);
  std::vector<Instruction> (*rewrite)(const Instruction* w);
  std::vector<Instruction> sample;
};

const std::vector<IrRule>& ir_rule_table();

// Re-assigns sequential addresses across the function's blocks; transforms
// call this after structural edits.
void renumber_addresses(Function& f);

}  // namespace stylo

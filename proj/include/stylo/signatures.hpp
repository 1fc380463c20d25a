// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// FLIRT-style provenance signatures: prefix patterns over a function's
// leading mnemonic sequence. A pattern is 1-8 mnemonic tokens, '*' matching
// any single mnemonic. Rules are evaluated in file order; first match wins.
//
// Signature file, one rule per line:  (library|compiler) <tok1> <tok2> ...

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stylo/prog_model.hpp"

namespace stylo {

struct SignatureRule {
  Provenance cls = Provenance::Compiler;  // Library or Compiler
  std::vector<std::string> pattern;       // 1..8 tokens, '*' wildcard

  bool matches(const Function& f) const;
  bool operator==(const SignatureRule&) const = default;
};

struct SignatureSet {
  std::vector<SignatureRule> rules;

  // First matching rule's index, or -1.
  int match(const Function& f) const;

  static SignatureSet parse(std::string_view text);  // throws ParseError
  std::string serialize() const;
  static SignatureSet load_file(const std::string& path);
  void save_file(const std::string& path) const;
};

// Signatures matching the helper functions the built-in compiler profiles
// inject. Shipped in data/default.sigs as well.
SignatureSet builtin_signatures();

// Annotates every function: first matching signature's class, else user for
// a non-generated name, else unknown for IDA-style sub_<hex> names.
// Idempotent; never touches instructions.
Program classify_provenance(Program p, const SignatureSet& sigs);

// Functions with provenance == User, in original order.
std::vector<const Function*> user_functions(const Program& p);

struct ProvenanceCounts {
  size_t user = 0, library = 0, compiler = 0, unknown = 0;
  size_t total() const { return user + library + compiler + unknown; }
};
ProvenanceCounts count_provenance(const Program& p);

}  // namespace stylo

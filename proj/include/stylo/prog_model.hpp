// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Assembly-level program model: instructions with normalized operands,
// basic blocks with labeled CFG edges, functions with provenance, programs
// with metadata. Everything is a plain value type; nothing here mutates
// after construction, so parsing and feature extraction can run on distinct
// programs concurrently without shared state.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

enum class OperandKind : uint8_t { Register, Immediate, Memory, Label, StringRef };

struct MemRef {
  std::string base;   // empty when absent
  std::string index;  // empty when absent
  long long disp = 0;
  bool has_disp = false;
  bool operator==(const MemRef&) const = default;
};

struct Operand {
  OperandKind kind = OperandKind::Immediate;
  std::string reg;       // Register
  long long imm = 0;     // Immediate
  MemRef mem;            // Memory
  std::string sym;       // Label
  std::string text;      // StringRef

  static Operand make_reg(std::string_view name);
  static Operand make_imm(long long value);
  static Operand make_mem(std::string_view base, std::string_view index, long long disp,
                          bool has_disp);
  static Operand make_label(std::string_view sym);
  static Operand make_str(std::string_view text);

  bool is_reg(std::string_view name) const { return kind == OperandKind::Register && reg == name; }
  // Registers read through this operand: the register itself, or the
  // base/index of a memory reference.
  std::vector<std::string> registers() const;

  std::string to_string() const;  // canonical operand syntax (r:/i:/m:/l:/s:)
  bool operator==(const Operand&) const = default;
};

struct Instruction {
  uint64_t addr = 0;
  std::string mnemonic;  // lowercase, non-empty
  std::vector<Operand> operands;  // at most 4

  bool operator==(const Instruction&) const = default;
};

enum class EdgeLabel : uint8_t { True, False, Uncond };

const char* edge_label_name(EdgeLabel l);

struct Edge {
  std::string target;  // block id within the same function
  EdgeLabel label = EdgeLabel::Uncond;
  bool operator==(const Edge&) const = default;
};

struct BasicBlock {
  std::string id;
  std::vector<Instruction> instructions;  // non-empty
  std::vector<Edge> successors;           // at most one true, one false

  bool operator==(const BasicBlock&) const = default;
};

enum class Provenance : uint8_t { Unknown, User, Library, Compiler };

const char* provenance_name(Provenance p);

struct Function {
  std::string name;
  std::vector<BasicBlock> blocks;
  std::string entry;  // block id; defaults to the first declared block
  Provenance provenance = Provenance::Unknown;
  std::vector<std::string> string_table;  // distinct referenced strings, first-use order

  const BasicBlock* block(std::string_view id) const;
  int block_index(std::string_view id) const;  // -1 when absent
  size_t instruction_count() const;
  // First n mnemonics in block-declaration order (shorter if the function is).
  std::vector<std::string> leading_mnemonics(size_t n) const;
  void rebuild_string_table();

  bool operator==(const Function&) const = default;
};

struct ProgramMeta {
  std::string source;    // e.g. "forge"
  std::string compiler;  // compiler-profile tag
  std::vector<std::string> transforms;  // applied transforms, in order
  bool operator==(const ProgramMeta&) const = default;
};

struct Program {
  std::string id;
  std::string author;  // empty = unlabeled
  std::vector<Function> functions;  // non-empty; names unique
  ProgramMeta meta;

  const Function* function(std::string_view name) const;
  Function* function(std::string_view name);
  size_t instruction_count() const;

  bool operator==(const Program&) const = default;
};

// Mnemonic classification. The model is ISA-agnostic; only these sets are
// interpreted (edge semantics, call targets, jump-displacement exclusion).
bool is_jump_mnemonic(std::string_view m);   // jmp, j<cc>, loop*
bool is_call_mnemonic(std::string_view m);   // call
bool is_return_mnemonic(std::string_view m);
bool is_control_transfer(std::string_view m);

// IDA-style generated names: "sub_" followed by hex digits.
bool is_generated_name(std::string_view name);

struct ValidationIssue {
  std::string where;    // "function f / block b" style locator
  std::string message;
};

// Checks every structural invariant (non-empty blocks, strictly increasing
// addresses, operand arity, edge resolution, one-true/one-false, entry
// existence, reachability from entry, unique function names).
std::vector<ValidationIssue> validate(const Program& p);

}  // namespace stylo

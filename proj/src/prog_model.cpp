// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/prog_model.hpp"

#include <set>

#include "stylo/util.hpp"

namespace stylo {

Operand Operand::make_reg(std::string_view name) {
  Operand o;
  o.kind = OperandKind::Register;
  o.reg = lower(name);
  return o;
}

Operand Operand::make_imm(long long value) {
  Operand o;
  o.kind = OperandKind::Immediate;
  o.imm = value;
  return o;
}

Operand Operand::make_mem(std::string_view base, std::string_view index, long long disp,
                          bool has_disp) {
  Operand o;
  o.kind = OperandKind::Memory;
  o.mem.base = lower(base);
  o.mem.index = lower(index);
  o.mem.disp = disp;
  o.mem.has_disp = has_disp;
  return o;
}

Operand Operand::make_label(std::string_view sym) {
  Operand o;
  o.kind = OperandKind::Label;
  o.sym = sym;
  return o;
}

Operand Operand::make_str(std::string_view text) {
  Operand o;
  o.kind = OperandKind::StringRef;
  o.text = text;
  return o;
}

std::vector<std::string> Operand::registers() const {
  std::vector<std::string> out;
  if (kind == OperandKind::Register) {
    out.push_back(reg);
  } else if (kind == OperandKind::Memory) {
    if (!mem.base.empty()) out.push_back(mem.base);
    if (!mem.index.empty()) out.push_back(mem.index);
  }
  return out;
}

static std::string escape_string_ref(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Operand::to_string() const {
  switch (kind) {
    case OperandKind::Register:
      return "r:" + reg;
    case OperandKind::Immediate:
      return "i:" + std::to_string(imm);
    case OperandKind::Memory: {
      std::string out = "m:[";
      bool first = true;
      if (!mem.base.empty()) {
        out += mem.base;
        first = false;
      }
      if (!mem.index.empty()) {
        if (!first) out += "+";
        out += mem.index;
        first = false;
      }
      if (mem.has_disp) {
        if (!first) {
          out += mem.disp < 0 ? "-" : "+";
          out += std::to_string(mem.disp < 0 ? -mem.disp : mem.disp);
        } else {
          out += std::to_string(mem.disp);
        }
      }
      out += "]";
      return out;
    }
    case OperandKind::Label:
      return "l:" + sym;
    case OperandKind::StringRef:
      return "s:\"" + escape_string_ref(text) + "\"";
  }
  return "?";
}

const char* edge_label_name(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::True: return "true";
    case EdgeLabel::False: return "false";
    case EdgeLabel::Uncond: return "uncond";
  }
  return "?";
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Unknown: return "unknown";
    case Provenance::User: return "user";
    case Provenance::Library: return "library";
    case Provenance::Compiler: return "compiler";
  }
  return "?";
}

const BasicBlock* Function::block(std::string_view id) const {
  for (const auto& b : blocks) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

int Function::block_index(std::string_view id) const {
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

size_t Function::instruction_count() const {
  size_t n = 0;
  for (const auto& b : blocks) n += b.instructions.size();
  return n;
}

std::vector<std::string> Function::leading_mnemonics(size_t n) const {
  std::vector<std::string> out;
  for (const auto& b : blocks) {
    for (const auto& ins : b.instructions) {
      if (out.size() >= n) return out;
      out.push_back(ins.mnemonic);
    }
  }
  return out;
}

void Function::rebuild_string_table() {
  string_table.clear();
  std::set<std::string> seen;
  for (const auto& b : blocks) {
    for (const auto& ins : b.instructions) {
      for (const auto& op : ins.operands) {
        if (op.kind == OperandKind::StringRef && seen.insert(op.text).second) {
          string_table.push_back(op.text);
        }
      }
    }
  }
}

const Function* Program::function(std::string_view name) const {
  for (const auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

Function* Program::function(std::string_view name) {
  for (auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

size_t Program::instruction_count() const {
  size_t n = 0;
  for (const auto& f : functions) n += f.instruction_count();
  return n;
}

bool is_jump_mnemonic(std::string_view m) {
  if (m.empty()) return false;
  if (m[0] == 'j') return true;
  return m == "loop" || m == "loope" || m == "loopne";
}

bool is_call_mnemonic(std::string_view m) { return m == "call"; }

bool is_return_mnemonic(std::string_view m) { return m == "ret" || m == "retn" || m == "iret"; }

bool is_control_transfer(std::string_view m) {
  return is_jump_mnemonic(m) || is_call_mnemonic(m) || is_return_mnemonic(m);
}

bool is_generated_name(std::string_view name) {
  if (!name.starts_with("sub_") || name.size() == 4) return false;
  for (char c : name.substr(4)) {
    bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    if (!hex) return false;
  }
  return true;
}

static void validate_function(const Function& f, std::vector<ValidationIssue>& issues) {
  auto at = [&](const std::string& detail) {
    return ValidationIssue{"function " + f.name, detail};
  };
  if (f.blocks.empty()) {
    issues.push_back(at("empty function (no blocks)"));
    return;
  }
  std::set<std::string> block_ids;
  for (const auto& b : f.blocks) {
    std::string where = "function " + f.name + " / block " + b.id;
    if (!block_ids.insert(b.id).second) {
      issues.push_back({where, "duplicate block id"});
    }
    if (b.instructions.empty()) {
      issues.push_back({where, "empty block"});
    }
    bool first = true;
    uint64_t prev = 0;
    int trues = 0, falses = 0;
    for (const auto& ins : b.instructions) {
      if (ins.mnemonic.empty()) issues.push_back({where, "empty mnemonic"});
      if (ins.operands.size() > 4) {
        issues.push_back({where, "instruction with more than 4 operands"});
      }
      if (!first && ins.addr <= prev) {
        issues.push_back({where, "addresses not strictly increasing"});
      }
      prev = ins.addr;
      first = false;
    }
    for (const auto& e : b.successors) {
      if (e.label == EdgeLabel::True) ++trues;
      if (e.label == EdgeLabel::False) ++falses;
    }
    if (trues > 1) issues.push_back({where, "more than one true edge"});
    if (falses > 1) issues.push_back({where, "more than one false edge"});
  }
  // Edge resolution.
  for (const auto& b : f.blocks) {
    for (const auto& e : b.successors) {
      if (!block_ids.count(e.target)) {
        issues.push_back({"function " + f.name + " / block " + b.id,
                          "dangling edge target: " + e.target});
      }
    }
  }
  if (!f.block(f.entry)) {
    issues.push_back(at("entry block does not exist: " + f.entry));
    return;
  }
  // Reachability from entry over resolved edges.
  std::set<std::string> reached;
  std::vector<const BasicBlock*> stack{f.block(f.entry)};
  reached.insert(f.entry);
  while (!stack.empty()) {
    const BasicBlock* b = stack.back();
    stack.pop_back();
    for (const auto& e : b->successors) {
      const BasicBlock* t = f.block(e.target);
      if (t && reached.insert(t->id).second) stack.push_back(t);
    }
  }
  for (const auto& b : f.blocks) {
    if (!reached.count(b.id)) {
      issues.push_back({"function " + f.name + " / block " + b.id,
                        "block unreachable from entry"});
    }
  }
}

std::vector<ValidationIssue> validate(const Program& p) {
  std::vector<ValidationIssue> issues;
  if (p.id.empty()) issues.push_back({"program", "empty program id"});
  if (p.functions.empty()) issues.push_back({"program " + p.id, "program has no functions"});
  std::set<std::string> names;
  for (const auto& f : p.functions) {
    if (!names.insert(f.name).second) {
      issues.push_back({"program " + p.id, "duplicate function name: " + f.name});
    }
    validate_function(f, issues);
  }
  return issues;
}

}  // namespace stylo

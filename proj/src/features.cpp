// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/features.hpp"

#include <algorithm>
#include <set>

#include "stylo/graphlet.hpp"
#include "stylo/util.hpp"

namespace stylo {

const char* family_name(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::Ngram: return "ngram";
    case FeatureFamily::Opcode: return "opcode";
    case FeatureFamily::Idiom: return "idiom";
    case FeatureFamily::Graphlet: return "graphlet";
    case FeatureFamily::Rfg: return "rfg";
    case FeatureFamily::StrConst: return "strconst";
    case FeatureFamily::Call: return "call";
  }
  return "?";
}

bool family_from_name(std::string_view name, FeatureFamily& out) {
  static const std::pair<std::string_view, FeatureFamily> table[] = {
      {"ngram", FeatureFamily::Ngram},       {"opcode", FeatureFamily::Opcode},
      {"idiom", FeatureFamily::Idiom},       {"graphlet", FeatureFamily::Graphlet},
      {"rfg", FeatureFamily::Rfg},           {"strconst", FeatureFamily::StrConst},
      {"call", FeatureFamily::Call},
  };
  for (const auto& [n, f] : table) {
    if (n == name) {
      out = f;
      return true;
    }
  }
  return false;
}

void FeatureVector::add(FeatureId id, int64_t n) {
  if (n == 0) return;
  auto it = counts.find(id);
  if (it == counts.end()) {
    counts.emplace(std::move(id), n);
  } else {
    it->second += n;
    if (it->second == 0) counts.erase(it);
  }
}

int64_t FeatureVector::count(const FeatureId& id) const {
  auto it = counts.find(id);
  return it == counts.end() ? 0 : it->second;
}

FeatureVector& FeatureVector::operator+=(const FeatureVector& other) {
  for (const auto& [id, n] : other.counts) add(id, n);
  return *this;
}

int64_t FeatureVector::total() const {
  int64_t t = 0;
  for (const auto& [id, n] : counts) t += n;
  return t;
}

bool FeatureConfig::is_compare(std::string_view m) const {
  return std::find(compare_mnemonics.begin(), compare_mnemonics.end(), m) !=
         compare_mnemonics.end();
}

FeatureVector extract_opcode_ngrams(const Function& fn, int n) {
  FeatureVector v;
  if (n < 1) return v;
  for (const auto& b : fn.blocks) {
    if (static_cast<int>(b.instructions.size()) < n) continue;
    for (size_t i = 0; i + static_cast<size_t>(n) <= b.instructions.size(); ++i) {
      std::string d = b.instructions[i].mnemonic;
      for (int j = 1; j < n; ++j) {
        d += "|";
        d += b.instructions[i + static_cast<size_t>(j)].mnemonic;
      }
      v.add({FeatureFamily::Ngram, std::move(d)});
    }
  }
  return v;
}

FeatureVector extract_opcode_counts(const Function& fn) {
  FeatureVector v;
  for (const auto& b : fn.blocks) {
    for (const auto& ins : b.instructions) {
      v.add({FeatureFamily::Opcode, ins.mnemonic});
    }
  }
  return v;
}

namespace {

std::string idiom_instr(const Instruction& ins, bool wild) {
  std::string out = ins.mnemonic;
  for (size_t i = 0; i < ins.operands.size(); ++i) {
    out += i == 0 ? " " : ",";
    out += wild ? "*" : ins.operands[i].to_string();
  }
  return out;
}

std::string idiom_descriptor(const Instruction* w[3], bool wild) {
  return idiom_instr(*w[0], wild) + "|" + idiom_instr(*w[1], wild) + "|" +
         idiom_instr(*w[2], wild);
}

}  // namespace

FeatureVector extract_idioms(const Function& fn, IdiomPolicy policy) {
  FeatureVector v;
  for (const auto& b : fn.blocks) {
    if (b.instructions.size() < 3) continue;
    for (size_t i = 0; i + 3 <= b.instructions.size(); ++i) {
      const Instruction* w[3] = {&b.instructions[i], &b.instructions[i + 1],
                                 &b.instructions[i + 2]};
      v.add({FeatureFamily::Idiom, idiom_descriptor(w, false)});
      if (policy == IdiomPolicy::OperandsWild) {
        v.add({FeatureFamily::Idiom, idiom_descriptor(w, true)});
      }
    }
  }
  return v;
}

FeatureVector extract_graphlets(const Function& fn, int k) {
  FeatureVector v;
  if (k < 2 || k > 5) return v;
  Digraph g = cfg_digraph(fn);
  if (g.n < k) return v;
  for_each_connected_subset(g, k, [&](const int* nodes, int kk) {
    uint32_t code = canonical_code(pack_adjacency(g, nodes, kk), kk);
    v.add({FeatureFamily::Graphlet, graphlet_descriptor(code, kk)});
  });
  return v;
}

namespace {

// Destination register of an instruction, or "" when it does not write a
// register in our model (compares, pushes, control transfers, memory dests).
std::string dest_register(const Instruction& ins, const FeatureConfig& cfg) {
  if (ins.operands.empty()) return "";
  if (cfg.is_compare(ins.mnemonic) || is_control_transfer(ins.mnemonic)) return "";
  if (ins.mnemonic == "push" || ins.mnemonic == "nop") return "";
  const Operand& d = ins.operands[0];
  if (d.kind != OperandKind::Register) return "";
  return d.reg;
}

}  // namespace

FeatureVector extract_rfg_features(const Function& fn, int window,
                                   const std::vector<std::string>& compare_mnemonics) {
  FeatureVector v;
  if (window < 1) return v;
  FeatureConfig cfg;
  cfg.compare_mnemonics = compare_mnemonics;
  for (const auto& b : fn.blocks) {
    for (size_t ci = 0; ci < b.instructions.size(); ++ci) {
      const Instruction& cmp = b.instructions[ci];
      if (!cfg.is_compare(cmp.mnemonic)) continue;
      size_t lo = ci >= static_cast<size_t>(window) ? ci - static_cast<size_t>(window) : 0;
      size_t hi = std::min(b.instructions.size() - 1, ci + static_cast<size_t>(window));

      // Abstract register names by first occurrence inside the window so the
      // descriptor is invariant under consistent register renaming.
      std::map<std::string, int> role;
      auto role_of = [&](const std::string& r) {
        auto it = role.find(r);
        if (it == role.end()) it = role.emplace(r, static_cast<int>(role.size())).first;
        return it->second;
      };
      for (size_t i = lo; i <= hi; ++i) {
        for (const auto& op : b.instructions[i].operands) {
          for (const auto& r : op.registers()) role_of(r);
        }
      }

      std::set<std::string> edges;
      for (size_t i = lo; i <= hi; ++i) {
        const Instruction& ins = b.instructions[i];
        std::string dst = dest_register(ins, cfg);
        if (dst.empty()) continue;
        int dst_role = role_of(dst);
        for (size_t oi = 1; oi < ins.operands.size(); ++oi) {
          for (const auto& src : ins.operands[oi].registers()) {
            edges.insert("x" + std::to_string(role_of(src)) + ">x" +
                         std::to_string(dst_role));
          }
        }
      }
      std::set<int> anchor_roles;
      for (const auto& op : cmp.operands) {
        for (const auto& r : op.registers()) anchor_roles.insert(role_of(r));
      }
      if (edges.empty() && anchor_roles.empty()) continue;  // empty graph: no feature

      std::string d = "a:";
      bool first = true;
      for (int r : anchor_roles) {
        if (!first) d += ",";
        d += "x" + std::to_string(r);
        first = false;
      }
      d += "|";
      first = true;
      for (const auto& e : edges) {
        if (!first) d += ";";
        d += e;
        first = false;
      }
      v.add({FeatureFamily::Rfg, std::move(d)});
    }
  }
  return v;
}

FeatureVector extract_strings_constants(const Function& fn) {
  FeatureVector v;
  for (const auto& b : fn.blocks) {
    for (const auto& ins : b.instructions) {
      bool jump = is_jump_mnemonic(ins.mnemonic) || is_call_mnemonic(ins.mnemonic);
      for (const auto& op : ins.operands) {
        if (op.kind == OperandKind::StringRef) {
          v.add({FeatureFamily::StrConst, "s:" + op.text});
        } else if (op.kind == OperandKind::Immediate && !jump) {
          // Immediates on jumps/calls are displacements, not constants.
          v.add({FeatureFamily::StrConst, "i:" + std::to_string(op.imm)});
        }
      }
    }
  }
  return v;
}

FeatureVector extract_call_features(const Function& fn) {
  FeatureVector v;
  for (const auto& b : fn.blocks) {
    for (const auto& ins : b.instructions) {
      if (!is_call_mnemonic(ins.mnemonic)) continue;
      if (!ins.operands.empty() && ins.operands[0].kind == OperandKind::Label) {
        v.add({FeatureFamily::Call, ins.operands[0].sym});
      } else {
        v.add({FeatureFamily::Call, "indirect"});
      }
    }
  }
  return v;
}

FeatureVector extract_function(const Function& fn, const FeatureConfig& cfg) {
  FeatureVector v;
  if (cfg.ngrams) v += extract_opcode_ngrams(fn, cfg.ngram_n);
  if (cfg.opcodes) v += extract_opcode_counts(fn);
  if (cfg.idioms) v += extract_idioms(fn, cfg.idiom_policy);
  if (cfg.graphlets) v += extract_graphlets(fn, cfg.graphlet_k);
  if (cfg.rfg) v += extract_rfg_features(fn, cfg.rfg_window, cfg.compare_mnemonics);
  if (cfg.strconst) v += extract_strings_constants(fn);
  if (cfg.calls) v += extract_call_features(fn);
  return v;
}

ProgramFeatures extract_all(const Program& p, const FeatureConfig& cfg, bool filtered) {
  ProgramFeatures out;
  out.merged.subject = p.id;
  for (const auto& f : p.functions) {
    if (filtered && f.provenance != Provenance::User) continue;
    FunctionFeatures ff;
    ff.function_name = f.name;
    ff.provenance = f.provenance;
    ff.vec = extract_function(f, cfg);
    ff.vec.subject = p.id + "/" + f.name;
    out.merged += ff.vec;
    out.functions.push_back(std::move(ff));
  }
  return out;
}

std::string feature_line(std::string_view subject, const FeatureId& id, int64_t count) {
  std::string out(subject);
  out += "\t";
  out += family_name(id.family);
  out += "\t";
  out += percent_escape(id.descriptor);
  out += "\t";
  out += std::to_string(count);
  return out;
}

std::string dump_vector(const FeatureVector& v) {
  std::string out;
  for (const auto& [id, n] : v.counts) {
    out += feature_line(v.subject, id, n);
    out += "\n";
  }
  return out;
}

}  // namespace stylo

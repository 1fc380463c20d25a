// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "stylo/rng.hpp"
#include "stylo/util.hpp"

namespace stylo {

const char* transform_name(TransformKind k) {
  switch (k) {
    case TransformKind::RR: return "RR";
    case TransformKind::IR: return "IR";
    case TransformKind::DCI: return "DCI";
    case TransformKind::FCF: return "FCF";
    case TransformKind::NM: return "NM";
    case TransformKind::MM: return "MM";
    case TransformKind::RV: return "RV";
  }
  return "?";
}

bool transform_from_name(std::string_view name, TransformKind& out) {
  static const std::pair<std::string_view, TransformKind> table[] = {
      {"RR", TransformKind::RR}, {"IR", TransformKind::IR},   {"DCI", TransformKind::DCI},
      {"FCF", TransformKind::FCF}, {"NM", TransformKind::NM}, {"MM", TransformKind::MM},
      {"RV", TransformKind::RV},
  };
  for (const auto& [n, k] : table) {
    if (n == name) {
      out = k;
      return true;
    }
  }
  return false;
}

TransformSpec TransformSpec::parse(std::string_view text) {
  TransformSpec spec;
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  if (!transform_from_name(name, spec.kind)) {
    throw std::invalid_argument("unknown transform: " + std::string(name));
  }
  if (colon != std::string_view::npos) {
    try {
      spec.intensity = std::stod(std::string(text.substr(colon + 1)));
    } catch (...) {
      throw std::invalid_argument("bad transform intensity: " + std::string(text));
    }
    if (spec.intensity < 0.0 || spec.intensity > 1.0) {
      throw std::invalid_argument("transform intensity out of [0,1]: " + std::string(text));
    }
  }
  return spec;
}

std::string TransformSpec::to_string() const {
  return std::string(transform_name(kind)) + ":" + fmt_double(intensity, 2);
}

void renumber_addresses(Function& f) {
  uint64_t addr = 0;
  for (auto& b : f.blocks) {
    for (auto& ins : b.instructions) ins.addr = addr++;
  }
}

namespace {

Instruction instr(std::string mnemonic, std::vector<Operand> ops = {}) {
  Instruction i;
  i.mnemonic = std::move(mnemonic);
  i.operands = std::move(ops);
  return i;
}

std::vector<std::string> used_registers(const Function& f) {
  std::set<std::string> regs;
  for (const auto& b : f.blocks) {
    for (const auto& ins : b.instructions) {
      for (const auto& op : ins.operands) {
        for (const auto& r : op.registers()) regs.insert(r);
      }
    }
  }
  return {regs.begin(), regs.end()};
}

void rename_registers(Function& f, const std::map<std::string, std::string>& mapping) {
  auto rename = [&](std::string& r) {
    auto it = mapping.find(r);
    if (it != mapping.end()) r = it->second;
  };
  for (auto& b : f.blocks) {
    for (auto& ins : b.instructions) {
      for (auto& op : ins.operands) {
        if (op.kind == OperandKind::Register) rename(op.reg);
        if (op.kind == OperandKind::Memory) {
          rename(op.mem.base);
          rename(op.mem.index);
        }
      }
    }
  }
}

// Seeded choice of ceil(intensity * n) distinct indices.
std::vector<size_t> pick_fraction(size_t n, double intensity, Rng& rng) {
  if (n == 0 || intensity <= 0.0) return {};
  size_t k = static_cast<size_t>(std::ceil(intensity * static_cast<double>(n)));
  k = std::min(k, n);
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  rng.shuffle(idx);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string unique_name(const Program& p, std::string base) {
  std::string name = base;
  int suffix = 1;
  while (p.function(name)) name = base + "_" + std::to_string(suffix++);
  return name;
}

std::string unique_block_id(const Function& f, std::string base) {
  std::string id = base;
  int suffix = 1;
  while (f.block(id)) id = base + "_" + std::to_string(suffix++);
  return id;
}

// ---- RR ----------------------------------------------------------------

size_t transform_rr(Program& p, double intensity, Rng rng,
                    std::vector<std::string>& notes) {
  auto picked = pick_fraction(p.functions.size(), intensity, rng);
  size_t sites = 0;
  for (size_t fi : picked) {
    Function& f = p.functions[fi];
    auto regs = used_registers(f);
    if (regs.size() < 2) {
      notes.push_back("RR: function " + f.name + " uses <2 registers, unchanged");
      continue;
    }
    // Shuffle then rotate by one: a full cycle, so no register maps to
    // itself.
    std::vector<std::string> image = regs;
    rng.shuffle(image);
    std::map<std::string, std::string> mapping;
    for (size_t i = 0; i < image.size(); ++i) {
      mapping[image[i]] = image[(i + 1) % image.size()];
    }
    rename_registers(f, mapping);
    ++sites;
  }
  return sites;
}

// ---- IR ----------------------------------------------------------------

bool is_reg(const Operand& o) { return o.kind == OperandKind::Register; }
bool is_imm0(const Operand& o) { return o.kind == OperandKind::Immediate && o.imm == 0; }
bool same_reg2(const Instruction& i) {
  return i.operands.size() == 2 && is_reg(i.operands[0]) && is_reg(i.operands[1]) &&
         i.operands[0].reg == i.operands[1].reg;
}
bool reg_imm0(const Instruction& i) {
  return i.operands.size() == 2 && is_reg(i.operands[0]) && is_imm0(i.operands[1]);
}
bool reg_reg(const Instruction& i) {
  return i.operands.size() == 2 && is_reg(i.operands[0]) && is_reg(i.operands[1]);
}

template <const char* From, const char* To>
struct MnemonicSwap {
  static bool matches_imm0(const Instruction* w, size_t n) {
    return n >= 1 && w[0].mnemonic == From && reg_imm0(w[0]);
  }
  static bool matches_self(const Instruction* w, size_t n) {
    return n >= 1 && w[0].mnemonic == From && same_reg2(w[0]);
  }
  static std::vector<Instruction> rewrite(const Instruction* w) {
    Instruction out = w[0];
    out.mnemonic = To;
    return {out};
  }
};

// Storage for template non-type string parameters.
constexpr char kAdd[] = "add", kSub[] = "sub", kOr[] = "or", kXor[] = "xor",
               kTest[] = "test", kAnd[] = "and";

bool mov_rr_matches(const Instruction* w, size_t n) {
  return n >= 1 && w[0].mnemonic == "mov" && reg_reg(w[0]);
}

std::vector<Instruction> mov_to_push_pop(const Instruction* w) {
  return {instr("push", {w[0].operands[1]}), instr("pop", {w[0].operands[0]})};
}

bool push_pop_matches(const Instruction* w, size_t n) {
  return n >= 2 && w[0].mnemonic == "push" && w[1].mnemonic == "pop" &&
         w[0].operands.size() == 1 && is_reg(w[0].operands[0]) &&
         w[1].operands.size() == 1 && is_reg(w[1].operands[0]);
}

std::vector<Instruction> push_pop_to_mov(const Instruction* w) {
  return {instr("mov", {w[1].operands[0], w[0].operands[0]})};
}

std::vector<Instruction> mov_to_lea(const Instruction* w) {
  return {instr("lea", {w[0].operands[0],
                        Operand::make_mem(w[0].operands[1].reg, "", 0, false)})};
}

bool lea_plain_matches(const Instruction* w, size_t n) {
  return n >= 1 && w[0].mnemonic == "lea" && w[0].operands.size() == 2 &&
         is_reg(w[0].operands[0]) && w[0].operands[1].kind == OperandKind::Memory &&
         !w[0].operands[1].mem.base.empty() && w[0].operands[1].mem.index.empty() &&
         !w[0].operands[1].mem.has_disp;
}

std::vector<Instruction> lea_to_mov(const Instruction* w) {
  return {instr("mov", {w[0].operands[0], Operand::make_reg(w[0].operands[1].mem.base)})};
}

}  // namespace

const std::vector<IrRule>& ir_rule_table() {
  static const std::vector<IrRule> table = [] {
    auto sample1 = [](Instruction i) { return std::vector<Instruction>{std::move(i)}; };
    Operand eax = Operand::make_reg("eax");
    Operand ebx = Operand::make_reg("ebx");
    Operand zero = Operand::make_imm(0);

    std::vector<IrRule> t;
    t.push_back({"add-zero-to-sub", 1, MnemonicSwap<kAdd, kSub>::matches_imm0,
                 MnemonicSwap<kAdd, kSub>::rewrite, sample1(instr("add", {eax, zero}))});
    t.push_back({"sub-zero-to-add", 1, MnemonicSwap<kSub, kAdd>::matches_imm0,
                 MnemonicSwap<kSub, kAdd>::rewrite, sample1(instr("sub", {eax, zero}))});
    t.push_back({"or-zero-to-xor", 1, MnemonicSwap<kOr, kXor>::matches_imm0,
                 MnemonicSwap<kOr, kXor>::rewrite, sample1(instr("or", {eax, zero}))});
    t.push_back({"xor-zero-to-or", 1, MnemonicSwap<kXor, kOr>::matches_imm0,
                 MnemonicSwap<kXor, kOr>::rewrite, sample1(instr("xor", {eax, zero}))});
    t.push_back({"xor-self-to-sub", 1, MnemonicSwap<kXor, kSub>::matches_self,
                 MnemonicSwap<kXor, kSub>::rewrite, sample1(instr("xor", {eax, eax}))});
    t.push_back({"sub-self-to-xor", 1, MnemonicSwap<kSub, kXor>::matches_self,
                 MnemonicSwap<kSub, kXor>::rewrite, sample1(instr("sub", {eax, eax}))});
    t.push_back({"test-self-to-or", 1, MnemonicSwap<kTest, kOr>::matches_self,
                 MnemonicSwap<kTest, kOr>::rewrite, sample1(instr("test", {eax, eax}))});
    t.push_back({"or-self-to-and", 1, MnemonicSwap<kOr, kAnd>::matches_self,
                 MnemonicSwap<kOr, kAnd>::rewrite, sample1(instr("or", {eax, eax}))});
    t.push_back({"and-self-to-test", 1, MnemonicSwap<kAnd, kTest>::matches_self,
                 MnemonicSwap<kAnd, kTest>::rewrite, sample1(instr("and", {eax, eax}))});
    t.push_back({"mov-to-push-pop", 1, mov_rr_matches, mov_to_push_pop,
                 sample1(instr("mov", {eax, ebx}))});
    t.push_back({"push-pop-to-mov", 2, push_pop_matches, push_pop_to_mov,
                 {instr("push", {ebx}), instr("pop", {eax})}});
    t.push_back({"mov-to-lea", 1, mov_rr_matches, mov_to_lea,
                 sample1(instr("mov", {eax, ebx}))});
    t.push_back({"lea-to-mov", 1, lea_plain_matches, lea_to_mov,
                 sample1(instr("lea", {eax, Operand::make_mem("ebx", "", 0, false)}))});
    return t;
  }();
  return table;
}

namespace {

struct IrSite {
  size_t fn, block, pos, rule;
};

size_t transform_ir(Program& p, double intensity, Rng rng) {
  const auto& rules = ir_rule_table();
  std::vector<IrSite> sites;
  for (size_t fi = 0; fi < p.functions.size(); ++fi) {
    const Function& f = p.functions[fi];
    for (size_t bi = 0; bi < f.blocks.size(); ++bi) {
      const auto& ins = f.blocks[bi].instructions;
      for (size_t pos = 0; pos < ins.size(); ++pos) {
        for (size_t ri = 0; ri < rules.size(); ++ri) {
          size_t remaining = ins.size() - pos;
          if (rules[ri].window <= remaining &&
              rules[ri].matches(ins.data() + pos, remaining)) {
            sites.push_back({fi, bi, pos, ri});
          }
        }
      }
    }
  }
  if (sites.empty() || intensity <= 0.0) return 0;
  auto chosen_idx = pick_fraction(sites.size(), intensity, rng);
  std::vector<IrSite> chosen;
  for (size_t i : chosen_idx) chosen.push_back(sites[i]);
  // Apply bottom-up within each block so earlier positions stay valid;
  // overlapping selections are skipped.
  std::sort(chosen.begin(), chosen.end(), [](const IrSite& a, const IrSite& b) {
    if (a.fn != b.fn) return a.fn < b.fn;
    if (a.block != b.block) return a.block < b.block;
    return a.pos > b.pos;
  });
  size_t applied = 0;
  size_t last_fn = SIZE_MAX, last_block = SIZE_MAX;
  size_t low_watermark = SIZE_MAX;  // lowest position already rewritten in the block
  for (const auto& s : chosen) {
    if (s.fn != last_fn || s.block != last_block) {
      last_fn = s.fn;
      last_block = s.block;
      low_watermark = SIZE_MAX;
    }
    const IrRule& rule = rules[s.rule];
    if (low_watermark != SIZE_MAX && s.pos + rule.window > low_watermark) continue;
    auto& ins = p.functions[s.fn].blocks[s.block].instructions;
    auto replacement = rule.rewrite(ins.data() + s.pos);
    ins.erase(ins.begin() + static_cast<long>(s.pos),
              ins.begin() + static_cast<long>(s.pos + rule.window));
    ins.insert(ins.begin() + static_cast<long>(s.pos), replacement.begin(),
               replacement.end());
    low_watermark = s.pos;
    ++applied;
  }
  for (auto& f : p.functions) renumber_addresses(f);
  return applied;
}

// ---- DCI ---------------------------------------------------------------

size_t transform_dci(Program& p, double intensity, Rng rng) {
  if (intensity <= 0.0) return 0;
  size_t inserted = 0;
  for (auto& f : p.functions) {
    auto regs = used_registers(f);
    size_t count = static_cast<size_t>(
        std::ceil(intensity * static_cast<double>(f.instruction_count())));
    for (size_t i = 0; i < count; ++i) {
      size_t bi = rng.below(f.blocks.size());
      auto& ins = f.blocks[bi].instructions;
      size_t limit = ins.size();
      if (limit > 0 && is_control_transfer(ins.back().mnemonic)) --limit;
      size_t pos = rng.below(limit + 1);
      Operand r = Operand::make_reg(regs.empty() ? "eax" : regs[rng.below(regs.size())]);
      Instruction junk;
      switch (rng.below(4)) {
        case 0: junk = instr("nop"); break;
        case 1: junk = instr("mov", {r, r}); break;
        case 2: junk = instr("add", {r, Operand::make_imm(0)}); break;
        default: junk = instr("or", {r, Operand::make_imm(0)}); break;
      }
      ins.insert(ins.begin() + static_cast<long>(pos), std::move(junk));
      ++inserted;
    }
    renumber_addresses(f);
  }
  return inserted;
}

// ---- FCF ---------------------------------------------------------------

size_t transform_fcf(Program& p, double intensity, Rng rng,
                     std::vector<std::string>& notes) {
  auto picked = pick_fraction(p.functions.size(), intensity, rng);
  size_t sites = 0;
  for (size_t fi : picked) {
    Function& f = p.functions[fi];
    if (f.blocks.size() < 2) {
      notes.push_back("FCF: function " + f.name + " has a single block, no-op");
      continue;
    }
    BasicBlock dispatcher;
    dispatcher.id = unique_block_id(f, "fcf_dispatch");
    dispatcher.instructions.push_back(
        instr("cmp", {Operand::make_reg("eax"),
                      Operand::make_imm(static_cast<long long>(f.blocks.size()))}));
    dispatcher.instructions.push_back(
        instr("jmp", {Operand::make_label(f.blocks.front().id)}));
    // Uniform structure: every original block hands control back to the
    // dispatcher; the dispatcher fans out to every block.
    for (auto& b : f.blocks) {
      b.successors.clear();
      b.successors.push_back({dispatcher.id, EdgeLabel::Uncond});
      dispatcher.successors.push_back({b.id, EdgeLabel::Uncond});
    }
    f.blocks.insert(f.blocks.begin(), std::move(dispatcher));
    f.entry = f.blocks.front().id;
    renumber_addresses(f);
    ++sites;
  }
  return sites;
}

// ---- NM ----------------------------------------------------------------

size_t transform_nm(Program& p, double intensity, Rng rng,
                    std::vector<std::string>& notes) {
  auto picked = pick_fraction(p.functions.size(), intensity, rng);
  size_t sites = 0;
  int counter = 0;
  std::vector<Function> extracted;
  for (size_t fi : picked) {
    Function& f = p.functions[fi];
    // Blocks with enough body (terminator excluded) for a 2-3 window.
    std::vector<size_t> eligible;
    for (size_t bi = 0; bi < f.blocks.size(); ++bi) {
      const auto& ins = f.blocks[bi].instructions;
      size_t body = ins.size();
      if (body > 0 && is_control_transfer(ins.back().mnemonic)) --body;
      if (body >= 2) eligible.push_back(bi);
    }
    if (eligible.empty()) {
      notes.push_back("NM: function " + f.name + " has no extractable window, no-op");
      continue;
    }
    size_t bi = eligible[rng.below(eligible.size())];
    auto& ins = f.blocks[bi].instructions;
    size_t body = ins.size();
    if (is_control_transfer(ins.back().mnemonic)) --body;
    size_t wlen = std::min<size_t>(body, 2 + rng.below(2));  // 2 or 3
    size_t pos = rng.below(body - wlen + 1);

    Function fresh;
    fresh.name = unique_name(p, f.name + "_nm" + std::to_string(counter++));
    BasicBlock b0;
    b0.id = "b0";
    b0.instructions.assign(ins.begin() + static_cast<long>(pos),
                           ins.begin() + static_cast<long>(pos + wlen));
    b0.instructions.push_back(instr("ret"));
    fresh.blocks.push_back(std::move(b0));
    fresh.entry = "b0";
    renumber_addresses(fresh);
    fresh.rebuild_string_table();

    ins.erase(ins.begin() + static_cast<long>(pos),
              ins.begin() + static_cast<long>(pos + wlen));
    ins.insert(ins.begin() + static_cast<long>(pos),
               instr("call", {Operand::make_label(fresh.name)}));
    renumber_addresses(f);
    f.rebuild_string_table();
    extracted.push_back(std::move(fresh));
    ++sites;
  }
  for (auto& f : extracted) p.functions.push_back(std::move(f));
  return sites;
}

// ---- MM ----------------------------------------------------------------

size_t transform_mm(Program& p, double intensity, Rng rng) {
  auto picked = pick_fraction(p.functions.size(), intensity, rng);
  size_t sites = 0;
  // Names resolved up front: renames must not cascade into each other.
  std::map<std::string, std::string> renames;
  std::set<std::string> moved;
  for (size_t fi : picked) {
    Function& f = p.functions[fi];
    std::string fresh = unique_name(p, "mm_" + f.name);
    renames[f.name] = fresh;
    moved.insert(fresh);
    f.name = fresh;
    ++sites;
  }
  if (renames.empty()) return 0;
  for (auto& f : p.functions) {
    for (auto& b : f.blocks) {
      for (auto& ins : b.instructions) {
        if (!is_call_mnemonic(ins.mnemonic)) continue;
        for (auto& op : ins.operands) {
          if (op.kind == OperandKind::Label) {
            auto it = renames.find(op.sym);
            if (it != renames.end()) op.sym = it->second;
          }
        }
      }
    }
  }
  // Relocation: moved functions shift to the end of the module, keeping
  // their relative order.
  std::stable_partition(p.functions.begin(), p.functions.end(),
                        [&](const Function& f) { return !moved.count(f.name); });
  return sites;
}

}  // namespace

TransformResult apply_transform(const Program& p, const TransformSpec& spec, uint64_t seed) {
  TransformResult res;
  res.program = p;
  if (spec.intensity <= 0.0) {
    res.notes.push_back(std::string(transform_name(spec.kind)) +
                        ": intensity 0, identity");
    return res;
  }
  // RV is RR's alias: identical behavior (and rng stream), different tag.
  TransformKind effective =
      spec.kind == TransformKind::RV ? TransformKind::RR : spec.kind;
  Rng rng(splitmix64(seed ^ (0x517cc1b727220a95ull + static_cast<uint64_t>(effective))));
  switch (spec.kind) {
    case TransformKind::RR:
    case TransformKind::RV:
      res.sites = transform_rr(res.program, spec.intensity, rng, res.notes);
      break;
    case TransformKind::IR:
      res.sites = transform_ir(res.program, spec.intensity, rng);
      break;
    case TransformKind::DCI:
      res.sites = transform_dci(res.program, spec.intensity, rng);
      break;
    case TransformKind::FCF:
      res.sites = transform_fcf(res.program, spec.intensity, rng, res.notes);
      break;
    case TransformKind::NM:
      res.sites = transform_nm(res.program, spec.intensity, rng, res.notes);
      break;
    case TransformKind::MM:
      res.sites = transform_mm(res.program, spec.intensity, rng);
      break;
  }
  for (auto& f : res.program.functions) f.rebuild_string_table();
  res.program.meta.transforms.push_back(spec.to_string());
  auto issues = validate(res.program);
  if (!issues.empty()) {
    throw std::logic_error("transform produced an invalid program: " +
                           issues.front().where + ": " + issues.front().message);
  }
  return res;
}

TransformResult apply_transform_chain(const Program& p, std::string_view chain,
                                      uint64_t seed) {
  TransformResult res;
  res.program = p;
  size_t step = 0;
  for (auto part : split(chain, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    TransformSpec spec = TransformSpec::parse(part);
    TransformResult r = apply_transform(res.program, spec, splitmix64(seed + step));
    res.program = std::move(r.program);
    res.sites += r.sites;
    for (auto& n : r.notes) res.notes.push_back(std::move(n));
    ++step;
  }
  return res;
}

}  // namespace stylo

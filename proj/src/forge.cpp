// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/forge.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stylo/listing.hpp"
#include "stylo/transforms.hpp"
#include "stylo/util.hpp"

namespace stylo {

namespace {

Instruction instr(std::string mnemonic, std::vector<Operand> ops = {}) {
  Instruction i;
  i.mnemonic = std::move(mnemonic);
  i.operands = std::move(ops);
  return i;
}

// Body mnemonics with base weights. Reserved scaffolding mnemonics (pusha,
// cld, rep, xlat, lahf, sahf, endbr, hlt) never appear here, so compiler
// signatures cannot collide with forged user code.
const std::vector<std::pair<std::string, double>>& base_mnemonics() {
  static const std::vector<std::pair<std::string, double>> base = {
      {"mov", 0.20}, {"push", 0.10}, {"pop", 0.05},  {"add", 0.08},  {"sub", 0.07},
      {"xor", 0.06}, {"and", 0.04},  {"or", 0.04},   {"lea", 0.06},  {"inc", 0.04},
      {"dec", 0.03}, {"shl", 0.03},  {"shr", 0.03},  {"imul", 0.03}, {"not", 0.02},
      {"neg", 0.02}, {"adc", 0.02},  {"sbb", 0.02},  {"movzx", 0.03}, {"xchg", 0.02},
  };
  return base;
}

const std::vector<std::string>& body_registers() {
  static const std::vector<std::string> regs = {"eax", "ebx", "ecx", "edx", "esi", "edi"};
  return regs;
}

const std::vector<std::string>& shared_strings() {
  static const std::vector<std::string> v = {
      "error",  "warning", "done",  "init",   "config", "input",  "output", "buffer",
      "file",   "socket",  "retry", "usage",  "debug",  "cache",  "token",  "parse",
      "open",   "close",   "read",  "write",  "flush",  "state",  "queue",  "table",
  };
  return v;
}

const std::vector<std::string>& shared_calls() {
  static const std::vector<std::string> v = {
      "CreateFileA", "ReadFile", "WriteFile", "CloseHandle", "GetProcAddress",
      "LoadLibraryA", "VirtualAlloc", "send",  "recv",        "socket",
      "connect",      "malloc",   "free",     "memcpy",       "strlen",
      "printf",       "exit",     "memset",   "strcmp",       "fopen",
  };
  return v;
}

const std::vector<long long>& shared_constants() {
  static const std::vector<long long> v = {0, 1, 2, 4, 8, 16, 32, 64, 128, 255, 256, 1024};
  return v;
}

const std::vector<std::string>& cond_jumps() {
  static const std::vector<std::string> v = {"je", "jne", "jl", "jg", "jle", "jge",
                                             "ja", "jb"};
  return v;
}

// Prologue variants; index 0 is the shared default.
const std::vector<std::vector<Instruction>>& prologue_variants() {
  static const std::vector<std::vector<Instruction>> v = [] {
    Operand ebp = Operand::make_reg("ebp");
    Operand esp = Operand::make_reg("esp");
    std::vector<std::vector<Instruction>> out;
    out.push_back({instr("push", {ebp}), instr("mov", {ebp, esp})});
    out.push_back({instr("push", {ebp}), instr("mov", {ebp, esp}),
                   instr("sub", {esp, Operand::make_imm(64)})});
    out.push_back({instr("push", {ebp}), instr("mov", {ebp, esp}),
                   instr("push", {Operand::make_reg("esi")}),
                   instr("push", {Operand::make_reg("edi")})});
    out.push_back({instr("push", {Operand::make_reg("ebx")}),
                   instr("push", {Operand::make_reg("esi")}),
                   instr("sub", {esp, Operand::make_imm(32)})});
    out.push_back({instr("push", {ebp}), instr("mov", {ebp, esp}),
                   instr("and", {esp, Operand::make_imm(-16)})});
    return out;
  }();
  return v;
}

std::string hex_digits(Rng& rng, int n) {
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  for (int i = 0; i < n; ++i) out += digits[rng.below(16)];
  return out;
}

struct Generator {
  const StyleProfile& prof;
  const SizeParams& size;
  Rng& rng;

  const std::string& pick_register() {
    size_t i = rng.weighted_pick(prof.register_weights);
    return body_registers()[i];
  }

  const std::string& pick_mnemonic() {
    double r = rng.unit();
    double acc = 0.0;
    for (const auto& [m, w] : prof.mnemonic_dist) {
      acc += w;
      if (r < acc) return m;
    }
    return prof.mnemonic_dist.back().first;
  }

  Operand mem_operand() {
    std::string base = pick_register();
    std::string index = rng.chance(0.3) ? pick_register() : "";
    bool has_disp = rng.chance(0.7);
    long long disp = has_disp ? static_cast<long long>(rng.uniform_int(-8, 16)) * 4 : 0;
    return Operand::make_mem(base, index, disp, has_disp);
  }

  Instruction body_instruction() {
    std::string m = pick_mnemonic();
    Operand r0 = Operand::make_reg(pick_register());
    auto imm = [&] { return Operand::make_imm(prof.constants.pick(rng)); };
    auto reg = [&] { return Operand::make_reg(pick_register()); };

    if (m == "mov") {
      switch (rng.below(5)) {
        case 0: return instr(m, {r0, reg()});
        case 1: return instr(m, {r0, imm()});
        case 2: return instr(m, {r0, mem_operand()});
        case 3: return instr(m, {mem_operand(), r0});
        default: return instr(m, {r0, Operand::make_str(prof.strings.pick(rng))});
      }
    }
    if (m == "push") {
      switch (rng.below(3)) {
        case 0: return instr(m, {r0});
        case 1: return instr(m, {imm()});
        default: return instr(m, {Operand::make_str(prof.strings.pick(rng))});
      }
    }
    if (m == "pop" || m == "inc" || m == "dec" || m == "not" || m == "neg") {
      return instr(m, {r0});
    }
    if (m == "lea") return instr(m, {r0, mem_operand()});
    if (m == "shl" || m == "shr") {
      return instr(m, {r0, Operand::make_imm(static_cast<long long>(rng.uniform_int(1, 8)))});
    }
    if (m == "movzx" || m == "xchg" || m == "imul") return instr(m, {r0, reg()});
    // add/sub/xor/and/or/adc/sbb and anything else: reg,reg or reg,imm.
    return rng.chance(0.5) ? instr(m, {r0, reg()}) : instr(m, {r0, imm()});
  }

  std::vector<Instruction> make_body(bool with_prologue, size_t n_instr,
                                     const std::vector<std::string>& callable) {
    std::vector<Instruction> out;
    if (with_prologue) {
      const auto& pro = (!prof.prologue.empty() && rng.chance(prof.prologue_bias))
                            ? prof.prologue
                            : prologue_variants()[0];
      out.insert(out.end(), pro.begin(), pro.end());
    }
    for (size_t i = 0; i < n_instr; ++i) out.push_back(body_instruction());
    if (!prof.idiom_habits.empty() && rng.chance(prof.habit_prob)) {
      const auto& habit = prof.idiom_habits[rng.below(prof.idiom_habits.size())];
      size_t pos = rng.below(out.size() + 1);
      out.insert(out.begin() + static_cast<long>(pos), habit.begin(), habit.end());
    }
    if (rng.chance(size.call_prob)) {
      std::string target = (!callable.empty() && rng.chance(0.3))
                               ? callable[rng.below(callable.size())]
                               : prof.calls.pick(rng);
      size_t pos = rng.below(out.size() + 1);
      out.insert(out.begin() + static_cast<long>(pos),
                 instr("call", {Operand::make_label(target)}));
    }
    return out;
  }

  Function make_function(const std::string& name, bool stripped,
                         const std::vector<std::string>& callable) {
    Function f;
    f.name = name;
    int nblocks = static_cast<int>(rng.uniform_int(size.blocks_min, size.blocks_max));
    for (int b = 0; b < nblocks; ++b) {
      BasicBlock bb;
      bb.id = "b" + std::to_string(b);
      size_t n_instr = static_cast<size_t>(rng.uniform_int(size.instrs_min, size.instrs_max));
      bb.instructions = make_body(b == 0, n_instr, callable);
      if (stripped && size.stripped_marker) {
        // Stripped functions carry a strongly author-correlated marker so
        // the misleading-feature audit has something to find.
        bb.instructions.push_back(
            instr("push", {Operand::make_str("mrk-" + prof.author)}));
      }
      f.blocks.push_back(std::move(bb));
    }
    // Terminators and CFG: a fallthrough chain with conditional forks and
    // occasional back-edges keeps everything reachable from the entry.
    for (int b = 0; b < nblocks; ++b) {
      BasicBlock& bb = f.blocks[static_cast<size_t>(b)];
      if (b == nblocks - 1) {
        bb.instructions.push_back(instr("ret"));
        continue;
      }
      std::string next_id = f.blocks[static_cast<size_t>(b + 1)].id;
      if (rng.chance(prof.cond_branch_prob)) {
        int target = rng.chance(prof.loop_prob)
                         ? static_cast<int>(rng.uniform_int(0, b))
                         : static_cast<int>(rng.uniform_int(b + 1, nblocks - 1));
        std::string target_id = f.blocks[static_cast<size_t>(target)].id;
        bb.instructions.push_back(
            instr("cmp", {Operand::make_reg(pick_register()),
                          Operand::make_imm(prof.constants.pick(rng))}));
        bb.instructions.push_back(instr(cond_jumps()[rng.below(cond_jumps().size())],
                                        {Operand::make_label(target_id)}));
        bb.successors.push_back({target_id, EdgeLabel::True});
        bb.successors.push_back({next_id, EdgeLabel::False});
      } else {
        bb.instructions.push_back(instr("jmp", {Operand::make_label(next_id)}));
        bb.successors.push_back({next_id, EdgeLabel::Uncond});
      }
    }
    f.entry = f.blocks.front().id;
    renumber_addresses(f);
    f.rebuild_string_table();
    return f;
  }
};

}  // namespace

void StyleProfile::validate() const {
  if (author.empty()) throw std::invalid_argument("profile: empty author label");
  if (idiom_habits.empty()) throw std::invalid_argument("profile: empty habit set");
  if (mnemonic_dist.empty()) throw std::invalid_argument("profile: empty mnemonic dist");
  double sum = 0.0;
  for (const auto& [m, w] : mnemonic_dist) {
    if (w < 0.0) throw std::invalid_argument("profile: negative mnemonic weight");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("profile: mnemonic weights must sum to 1");
  }
  if (strings.shared.empty() || calls.shared.empty() || constants.shared.empty()) {
    throw std::invalid_argument("profile: empty vocabulary");
  }
}

std::vector<StyleProfile> make_profiles(int authors, double style_strength, uint64_t seed) {
  if (authors < 1) throw std::invalid_argument("make_profiles: need at least one author");
  if (style_strength < 0.0 || style_strength > 1.0) {
    throw std::invalid_argument("make_profiles: style strength out of [0,1]");
  }
  std::vector<StyleProfile> out;
  Rng root(seed);
  int width = authors >= 1000 ? 4 : 3;
  for (int a = 0; a < authors; ++a) {
    Rng rng = root.split(static_cast<uint64_t>(a));
    StyleProfile p;
    std::string num = std::to_string(a);
    p.author = "author" + std::string(static_cast<size_t>(width) - std::min<size_t>(
                               static_cast<size_t>(width), num.size()), '0') + num;

    // Mnemonic weights: base perturbed multiplicatively, fading to the base
    // as strength goes to 0.
    double total = 0.0;
    for (const auto& [m, w] : base_mnemonics()) {
      double factor = std::exp(style_strength * rng.uniform(-1.4, 1.4));
      p.mnemonic_dist.emplace_back(m, w * factor);
      total += p.mnemonic_dist.back().second;
    }
    for (auto& [m, w] : p.mnemonic_dist) w /= total;

    for (size_t i = 0; i < body_registers().size(); ++i) {
      p.register_weights.push_back(std::exp(style_strength * rng.uniform(-1.2, 1.2)));
    }

    p.cond_branch_prob =
        std::clamp(0.45 + style_strength * rng.uniform(-0.3, 0.35), 0.05, 0.95);
    p.loop_prob = std::clamp(0.15 + style_strength * rng.uniform(-0.1, 0.25), 0.0, 0.6);
    p.habit_prob = 0.5 * style_strength;

    p.strings.shared = shared_strings();
    p.calls.shared = shared_calls();
    p.constants.shared = shared_constants();
    p.strings.own_bias = p.calls.own_bias = p.constants.own_bias = style_strength * 0.7;
    for (int i = 0; i < 6; ++i) {
      p.strings.own.push_back("w" + std::to_string(a) + "_" + std::to_string(i));
    }
    for (int i = 0; i < 4; ++i) {
      p.calls.own.push_back("api" + std::to_string(a) + "_" + std::to_string(i));
    }
    for (int i = 0; i < 4; ++i) {
      p.constants.own.push_back(1000 + 17 * a + i);
    }

    // Favored triples: concrete instructions, registers and constants from
    // the author's own taste.
    for (int h = 0; h < 3; ++h) {
      Generator g{p, SizeParams{}, rng};
      std::array<Instruction, 3> habit = {g.body_instruction(), g.body_instruction(),
                                          g.body_instruction()};
      p.idiom_habits.push_back(std::move(habit));
    }

    const auto& variants = prologue_variants();
    p.prologue = variants[1 + rng.below(variants.size() - 1)];
    p.prologue_bias = style_strength;

    p.validate();
    out.push_back(std::move(p));
  }
  return out;
}

std::string CorpusManifest::serialize() const {
  std::string out = "# stylo-manifest v1\n";
  out += "# seed=" + std::to_string(seed) + " " + params + "\n";
  for (const auto& e : entries) {
    out += e.program_id + "\t" + e.author + "\t" +
           (e.transforms.empty() ? "-" : e.transforms) + "\n";
  }
  return out;
}

CorpusManifest CorpusManifest::parse(std::string_view text) {
  CorpusManifest m;
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != "# stylo-manifest v1") {
    throw std::runtime_error("manifest: bad or missing version header");
  }
  for (size_t li = 1; li < lines.size(); ++li) {
    std::string_view line = lines[li];
    if (trim(line).empty()) continue;
    if (line.starts_with("#")) {
      auto pos = line.find("seed=");
      if (pos != std::string_view::npos) {
        auto rest = line.substr(pos + 5);
        auto sp = rest.find(' ');
        if (auto v = parse_int(rest.substr(0, sp))) m.seed = static_cast<uint64_t>(*v);
        if (sp != std::string_view::npos) m.params = std::string(trim(rest.substr(sp)));
      }
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 3) {
      throw std::runtime_error("manifest: expected 3 tab-separated columns, line " +
                               std::to_string(li + 1));
    }
    m.entries.push_back({std::string(cols[0]), std::string(cols[1]),
                         cols[2] == "-" ? "" : std::string(cols[2])});
  }
  return m;
}

Corpus generate_corpus(const std::vector<StyleProfile>& profiles, int programs_per_author,
                       const SizeParams& size, uint64_t seed) {
  std::vector<int> counts(profiles.size(), programs_per_author);
  return generate_corpus(profiles, counts, size, seed);
}

Corpus generate_corpus(const std::vector<StyleProfile>& profiles,
                       const std::vector<int>& programs_per_author, const SizeParams& size,
                       uint64_t seed) {
  if (profiles.size() < 2) {
    throw std::invalid_argument("generate_corpus: need at least 2 profiles");
  }
  if (programs_per_author.size() != profiles.size()) {
    throw std::invalid_argument("generate_corpus: counts/profiles size mismatch");
  }
  for (const auto& p : profiles) p.validate();
  for (int c : programs_per_author) {
    if (c < 2) throw std::invalid_argument("generate_corpus: need >= 2 programs per author");
  }

  struct Slot {
    size_t profile;
    int index;
  };
  std::vector<Slot> slots;
  for (size_t a = 0; a < profiles.size(); ++a) {
    for (int j = 0; j < programs_per_author[static_cast<size_t>(a)]; ++j) {
      slots.push_back({a, j});
    }
  }

  Corpus corpus;
  corpus.programs.resize(slots.size());
  Rng root(seed);
  // Each program draws from its own split stream, so generation could run
  // in parallel without changing a byte of output.
  for (size_t s = 0; s < slots.size(); ++s) {
    const StyleProfile& prof = profiles[slots[s].profile];
    Rng rng = root.split(s);
    Generator gen{prof, size, rng};

    Program prog;
    prog.id = prof.author + "-" + std::to_string(slots[s].index);
    prog.author = prof.author;
    prog.meta.source = "forge";

    int nfuncs = static_cast<int>(rng.uniform_int(size.functions_min, size.functions_max));
    // Names first: call sites may reference any function in the program.
    std::vector<std::string> names;
    std::vector<bool> stripped;
    std::set<std::string> taken;
    for (int fi = 0; fi < nfuncs; ++fi) {
      bool strip = rng.chance(size.stripped_fraction);
      std::string name;
      do {
        name = strip ? "sub_" + hex_digits(rng, 6) : "fn" + std::to_string(fi);
      } while (!taken.insert(name).second);
      names.push_back(name);
      stripped.push_back(strip);
    }
    for (int fi = 0; fi < nfuncs; ++fi) {
      prog.functions.push_back(
          gen.make_function(names[static_cast<size_t>(fi)],
                            stripped[static_cast<size_t>(fi)], names));
    }
    corpus.programs[s] = std::move(prog);
  }

  corpus.manifest.seed = seed;
  corpus.manifest.params =
      "authors=" + std::to_string(profiles.size()) +
      " programs=" + std::to_string(slots.size()) +
      " functions=" + std::to_string(size.functions_min) + ".." +
      std::to_string(size.functions_max) + " blocks=" + std::to_string(size.blocks_min) +
      ".." + std::to_string(size.blocks_max) + " instrs=" +
      std::to_string(size.instrs_min) + ".." + std::to_string(size.instrs_max);
  for (const auto& p : corpus.programs) {
    corpus.manifest.entries.push_back({p.id, p.author, join(p.meta.transforms, ",")});
  }
  return corpus;
}

Corpus forge_corpus(const ForgeOptions& opt) {
  auto profiles = make_profiles(opt.authors, opt.style_strength, opt.seed);
  std::vector<int> counts = opt.per_author_counts;
  if (counts.empty()) {
    counts.assign(profiles.size(), opt.programs_per_author);
  }
  // Sub-seed so profile derivation and program generation draw from
  // distinct streams.
  return generate_corpus(profiles, counts, opt.size, splitmix64(opt.seed));
}

ForgeOptions paper_scale_preset(uint64_t seed) {
  // 179 authors, 736 programs, ~46k functions (62.6 per program on average).
  ForgeOptions opt;
  opt.authors = 179;
  opt.style_strength = 0.6;
  opt.seed = seed;
  opt.per_author_counts.assign(179, 4);
  for (int i = 0; i < 736 - 179 * 4; ++i) opt.per_author_counts[static_cast<size_t>(i)]++;
  opt.size.functions_min = 55;
  opt.size.functions_max = 70;
  opt.size.blocks_min = 2;
  opt.size.blocks_max = 5;
  opt.size.instrs_min = 3;
  opt.size.instrs_max = 6;
  return opt;
}

CompilerProfile builtin_compiler_profile(std::string_view tag) {
  Operand eax = Operand::make_reg("eax");
  Operand esp = Operand::make_reg("esp");
  Operand ebp = Operand::make_reg("ebp");
  auto helper = [](std::string name, std::vector<Instruction> body) {
    Function f;
    f.name = std::move(name);
    BasicBlock b;
    b.id = "b0";
    b.instructions = std::move(body);
    f.blocks.push_back(std::move(b));
    f.entry = "b0";
    renumber_addresses(f);
    f.rebuild_string_table();
    return f;
  };

  CompilerProfile cp;
  cp.tag = std::string(tag);
  if (tag == "profile-A") {
    cp.helpers.push_back(helper("__chkstk", {instr("pusha"), instr("cld"),
                                             instr("sub", {esp, Operand::make_imm(4096)}),
                                             instr("ret")}));
    cp.helpers.push_back(helper("__memcpy_chk",
                                {instr("cld"), instr("rep"), instr("movs"), instr("ret")}));
    cp.prologue = {instr("push", {ebp}), instr("mov", {ebp, esp}),
                   instr("sub", {esp, Operand::make_imm(64)})};
    cp.peephole_rules = {"add-zero-to-sub", "mov-to-lea"};
  } else if (tag == "profile-B") {
    cp.helpers.push_back(helper("__guard_check", {instr("pusha"), instr("cld"),
                                                  instr("xor", {eax, eax}), instr("ret")}));
    cp.helpers.push_back(helper("__init_term",
                                {instr("xlat"), instr("nop"), instr("xlat"), instr("ret")}));
    cp.prologue = {instr("push", {ebp}), instr("mov", {ebp, esp}),
                   instr("push", {Operand::make_reg("ebx")})};
    cp.peephole_rules = {"xor-self-to-sub", "mov-to-push-pop"};
  } else if (tag == "profile-C") {
    cp.helpers.push_back(helper("__stack_probe",
                                {instr("lahf"), instr("sahf"),
                                 instr("cmp", {esp, Operand::make_imm(4096)}),
                                 instr("ret")}));
    cp.helpers.push_back(helper("__crt_init", {instr("pusha"), instr("cld"),
                                               instr("call", {Operand::make_label("main")}),
                                               instr("ret")}));
    cp.prologue = {instr("push", {ebp}), instr("mov", {ebp, esp}),
                   instr("and", {esp, Operand::make_imm(-16)})};
    cp.peephole_rules = {"test-self-to-or", "sub-zero-to-add"};
  } else {
    throw std::invalid_argument("unknown compiler profile: " + std::string(tag));
  }
  return cp;
}

Program apply_compiler_profile(Program p, const CompilerProfile& cp, uint64_t seed) {
  Rng rng(splitmix64(seed ^ fnv1a64(cp.tag)));
  // Prologue rewrite: replace the canonical [push ebp; mov ebp,esp] head.
  if (!cp.prologue.empty()) {
    for (auto& f : p.functions) {
      auto& ins = f.blocks.front().instructions;
      if (ins.size() >= 2 && ins[0].mnemonic == "push" && ins[0].operands.size() == 1 &&
          ins[0].operands[0].is_reg("ebp") && ins[1].mnemonic == "mov" &&
          ins[1].operands.size() == 2 && ins[1].operands[0].is_reg("ebp") &&
          ins[1].operands[1].is_reg("esp")) {
        ins.erase(ins.begin(), ins.begin() + 2);
        ins.insert(ins.begin(), cp.prologue.begin(), cp.prologue.end());
        renumber_addresses(f);
      }
    }
  }
  // Peepholes from the named subset of the IR table.
  if (!cp.peephole_rules.empty() && cp.peephole_intensity > 0.0) {
    // Reuse the IR transform with only the named rules by masking: apply a
    // dedicated pass here to stay rule-selective.
    const auto& table = ir_rule_table();
    for (auto& f : p.functions) {
      for (auto& b : f.blocks) {
        for (size_t pos = 0; pos < b.instructions.size(); ++pos) {
          for (const auto& rule : table) {
            if (std::find(cp.peephole_rules.begin(), cp.peephole_rules.end(), rule.name) ==
                cp.peephole_rules.end()) {
              continue;
            }
            size_t remaining = b.instructions.size() - pos;
            if (rule.window > remaining ||
                !rule.matches(b.instructions.data() + pos, remaining)) {
              continue;
            }
            if (!rng.chance(cp.peephole_intensity)) continue;
            auto replacement = rule.rewrite(b.instructions.data() + pos);
            b.instructions.erase(
                b.instructions.begin() + static_cast<long>(pos),
                b.instructions.begin() + static_cast<long>(pos + rule.window));
            b.instructions.insert(b.instructions.begin() + static_cast<long>(pos),
                                  replacement.begin(), replacement.end());
            pos += replacement.size() - 1;  // never rewrite our own output
            break;
          }
        }
      }
      renumber_addresses(f);
      f.rebuild_string_table();
    }
  }
  // Helper injection; names are made unique against the existing module.
  for (const auto& h : cp.helpers) {
    Function fresh = h;
    std::string base = fresh.name;
    int suffix = 1;
    while (p.function(fresh.name)) fresh.name = base + "_" + std::to_string(suffix++);
    p.functions.push_back(std::move(fresh));
  }
  p.meta.compiler = cp.tag;
  auto issues = validate(p);
  if (!issues.empty()) {
    throw std::logic_error("compiler profile produced an invalid program: " +
                           issues.front().message);
  }
  return p;
}

}  // namespace stylo

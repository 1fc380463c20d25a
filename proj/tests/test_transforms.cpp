// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/transforms.hpp"

#include <map>
#include <set>
#include <string>

#include <stdexcept>

#include "doctest.h"
#include "stylo/features.hpp"
#include "stylo/forge.hpp"
#include "stylo/listing.hpp"

using namespace stylo;

namespace {

Program forged(uint64_t seed, int blocks_min = 3, int blocks_max = 5) {
  ForgeOptions opt;
  opt.authors = 2;
  opt.programs_per_author = 2;
  opt.seed = seed;
  opt.style_strength = 0.9;
  opt.size.blocks_min = blocks_min;
  opt.size.blocks_max = blocks_max;
  opt.size.instrs_min = 4;
  opt.size.instrs_max = 7;
  return forge_corpus(opt).programs[0];
}

// Multisets used by the IR equivalence checks.
std::multiset<std::string> register_multiset(const std::vector<Instruction>& ins) {
  std::multiset<std::string> out;
  for (const auto& i : ins) {
    for (const auto& op : i.operands) {
      for (const auto& r : op.registers()) out.insert(r);
    }
  }
  return out;
}

std::multiset<long long> immediate_multiset(const std::vector<Instruction>& ins) {
  std::multiset<long long> out;
  for (const auto& i : ins) {
    for (const auto& op : i.operands) {
      if (op.kind == OperandKind::Immediate) out.insert(op.imm);
    }
  }
  return out;
}

FeatureVector family_vector(const Program& p, FeatureFamily fam) {
  FeatureConfig cfg;
  FeatureVector out;
  for (const auto& f : p.functions) {
    switch (fam) {
      case FeatureFamily::Ngram: out += extract_opcode_ngrams(f, cfg.ngram_n); break;
      case FeatureFamily::Idiom: out += extract_idioms(f, IdiomPolicy::None); break;
      case FeatureFamily::Graphlet: out += extract_graphlets(f, 3); break;
      case FeatureFamily::Call: out += extract_call_features(f); break;
      default: break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("IR rule table: at least 10 rules, each equivalence-preserving on its sample") {
  const auto& table = ir_rule_table();
  CHECK(table.size() >= 10);
  std::set<std::string> names;
  for (const auto& rule : table) {
    CAPTURE(rule.name);
    CHECK(names.insert(rule.name).second);  // unique names
    REQUIRE(rule.sample.size() == rule.window);
    REQUIRE(rule.matches(rule.sample.data(), rule.sample.size()));
    auto rewritten = rule.rewrite(rule.sample.data());
    REQUIRE(!rewritten.empty());
    // The modeled semantics: referenced-register multiset and immediate
    // multiset are preserved across the site.
    CHECK(register_multiset(rule.sample) == register_multiset(rewritten));
    CHECK(immediate_multiset(rule.sample) == immediate_multiset(rewritten));
    // And the rewrite really changed something.
    bool differs = rewritten.size() != rule.sample.size();
    for (size_t i = 0; !differs && i < rewritten.size(); ++i) {
      differs = !(rewritten[i].mnemonic == rule.sample[i].mnemonic &&
                  rewritten[i].operands == rule.sample[i].operands);
    }
    CHECK(differs);
  }
}

TEST_CASE("IR application preserves CFG shape and graphlet vectors") {
  Program p = forged(5);
  auto r = apply_transform(p, TransformSpec::parse("IR:1.0"), 42);
  CHECK(r.sites > 0);
  CHECK(family_vector(r.program, FeatureFamily::Graphlet).counts ==
        family_vector(p, FeatureFamily::Graphlet).counts);
  for (size_t fi = 0; fi < p.functions.size(); ++fi) {
    CHECK(r.program.functions[fi].blocks.size() == p.functions[fi].blocks.size());
    for (size_t bi = 0; bi < p.functions[fi].blocks.size(); ++bi) {
      CHECK(r.program.functions[fi].blocks[bi].successors ==
            p.functions[fi].blocks[bi].successors);
    }
  }
}

TEST_CASE("RR: ngram and graphlet vectors identical, registers fully renamed") {
  Program p = forged(9);
  auto r = apply_transform(p, TransformSpec::parse("RR:1.0"), 17);
  CHECK(family_vector(r.program, FeatureFamily::Ngram).counts ==
        family_vector(p, FeatureFamily::Ngram).counts);
  CHECK(family_vector(r.program, FeatureFamily::Graphlet).counts ==
        family_vector(p, FeatureFamily::Graphlet).counts);

  // The bijection is a full cycle: wherever the original had a register,
  // the transformed program has a different one (functions with >= 2
  // registers).
  for (size_t fi = 0; fi < p.functions.size(); ++fi) {
    const Function& before = p.functions[fi];
    const Function& after = r.program.functions[fi];
    std::set<std::string> regs;
    for (const auto& b : before.blocks) {
      for (const auto& ins : b.instructions) {
        for (const auto& op : ins.operands) {
          for (const auto& reg : op.registers()) regs.insert(reg);
        }
      }
    }
    if (regs.size() < 2) continue;
    for (size_t bi = 0; bi < before.blocks.size(); ++bi) {
      for (size_t ii = 0; ii < before.blocks[bi].instructions.size(); ++ii) {
        const auto& ops_b = before.blocks[bi].instructions[ii].operands;
        const auto& ops_a = after.blocks[bi].instructions[ii].operands;
        for (size_t oi = 0; oi < ops_b.size(); ++oi) {
          if (ops_b[oi].kind == OperandKind::Register) {
            CHECK(ops_a[oi].reg != ops_b[oi].reg);
          }
        }
      }
    }
  }

  SUBCASE("RV is the binary-level alias of RR") {
    auto rv = apply_transform(p, TransformSpec::parse("RV:1.0"), 17);
    Program expect = r.program;
    expect.meta.transforms.back() = "RV:1.00";
    CHECK(rv.program == expect);
  }
}

TEST_CASE("DCI: strict instruction growth, calls untouched, zero is identity") {
  Program p = forged(13);
  SUBCASE("intensity 0.3") {
    auto r = apply_transform(p, TransformSpec::parse("DCI:0.3"), 3);
    CHECK(r.program.instruction_count() > p.instruction_count());
    CHECK(family_vector(r.program, FeatureFamily::Call).counts ==
          family_vector(p, FeatureFamily::Call).counts);
    CHECK(family_vector(r.program, FeatureFamily::Ngram).counts !=
          family_vector(p, FeatureFamily::Ngram).counts);
  }
  SUBCASE("intensity 0 is the identity") {
    auto r = apply_transform(p, TransformSpec::parse("DCI:0"), 3);
    CHECK(r.program == p);
    CHECK(r.sites == 0);
  }
}

TEST_CASE("FCF: dispatcher star with the original instructions preserved") {
  Program p = forged(23, 5, 5);  // all functions have exactly 5 blocks
  auto r = apply_transform(p, TransformSpec::parse("FCF:1.0"), 7);
  REQUIRE(r.sites == p.functions.size());
  for (size_t fi = 0; fi < p.functions.size(); ++fi) {
    const Function& before = p.functions[fi];
    const Function& after = r.program.functions[fi];
    CHECK(after.blocks.size() == before.blocks.size() + 1);

    // Exactly one block (the dispatcher) has in-degree >= 4.
    std::map<std::string, int> indegree;
    for (const auto& b : after.blocks) {
      for (const auto& e : b.successors) indegree[e.target]++;
    }
    int heavy = 0;
    for (const auto& [id, deg] : indegree) heavy += deg >= 4;
    CHECK(heavy == 1);
    CHECK(indegree[after.entry] == static_cast<int>(before.blocks.size()));

    // The multiset of non-dispatcher instructions is untouched (addresses
    // aside, which are renumbered).
    std::multiset<std::string> ins_before, ins_after;
    auto key = [](const Instruction& i) {
      std::string k = i.mnemonic;
      for (const auto& op : i.operands) k += " " + op.to_string();
      return k;
    };
    for (const auto& b : before.blocks) {
      for (const auto& i : b.instructions) ins_before.insert(key(i));
    }
    for (const auto& b : after.blocks) {
      if (b.id == after.entry) continue;
      for (const auto& i : b.instructions) ins_after.insert(key(i));
    }
    CHECK(ins_before == ins_after);
  }
  CHECK(family_vector(r.program, FeatureFamily::Graphlet).counts !=
        family_vector(p, FeatureFamily::Graphlet).counts);

  SUBCASE("single-block functions are recorded no-ops") {
    Program q = parse_listing(
        "program q author=a\nfunction only\nblock b0\n  0 nop\n  1 ret\nend\n");
    auto rr = apply_transform(q, TransformSpec::parse("FCF:1.0"), 1);
    CHECK(rr.sites == 0);
    REQUIRE(!rr.notes.empty());
    CHECK(rr.notes[0].find("single block") != std::string::npos);
    CHECK(rr.program.functions[0].blocks == q.functions[0].blocks);
  }
}

TEST_CASE("NM extracts a window into a fresh function behind a call") {
  Program p = forged(31);
  size_t before_fns = p.functions.size();
  size_t before_ins = p.instruction_count();
  auto r = apply_transform(p, TransformSpec::parse("NM:1.0"), 11);
  REQUIRE(r.sites > 0);
  CHECK(r.program.functions.size() == before_fns + r.sites);
  // Each site trades wlen window instructions for one call and adds the
  // window plus a ret in the new function: net +2 per site.
  CHECK(r.program.instruction_count() == before_ins + 2 * r.sites);
  size_t called = 0;
  for (size_t fi = before_fns; fi < r.program.functions.size(); ++fi) {
    const std::string& name = r.program.functions[fi].name;
    for (const auto& f : r.program.functions) {
      for (const auto& b : f.blocks) {
        for (const auto& ins : b.instructions) {
          if (is_call_mnemonic(ins.mnemonic) && !ins.operands.empty() &&
              ins.operands[0].kind == OperandKind::Label && ins.operands[0].sym == name) {
            ++called;
          }
        }
      }
    }
  }
  CHECK(called == r.sites);
}

TEST_CASE("MM renames, relocates, and re-points call sites") {
  Program p = parse_listing(
      "program p author=a\n"
      "function helper\nblock b0\n  0 nop\n  1 ret\n"
      "function main\nblock b0\n  0 call l:helper\n  1 call l:helper\n  2 ret\n"
      "end\n");
  auto r = apply_transform(p, TransformSpec::parse("MM:0.5"), 2);
  REQUIRE(r.sites == 1);
  // Whichever function moved, every call site still resolves by name.
  const Program& q = r.program;
  std::set<std::string> names;
  for (const auto& f : q.functions) names.insert(f.name);
  size_t call_count = 0;
  for (const auto& f : q.functions) {
    for (const auto& b : f.blocks) {
      for (const auto& ins : b.instructions) {
        if (is_call_mnemonic(ins.mnemonic)) {
          ++call_count;
          CHECK(names.count(ins.operands[0].sym) == 1);
        }
      }
    }
  }
  CHECK(call_count == 2);
  // The moved function sits at the end of the module.
  CHECK(q.functions.back().name.starts_with("mm_"));
}

TEST_CASE("transforms are closed over the interchange format") {
  Program p = forged(43);
  auto r = apply_transform_chain(p, "RR:0.8,IR:0.5,DCI:0.25,FCF:0.5,NM:0.4,MM:0.3", 77);
  CHECK(validate(r.program).empty());
  Program back = parse_listing(serialize_listing(r.program));
  CHECK(back == r.program);
  // Label integrity and history.
  CHECK(r.program.author == p.author);
  REQUIRE(r.program.meta.transforms.size() == 6);
  CHECK(r.program.meta.transforms[0] == "RR:0.80");
  CHECK(r.program.meta.transforms[5] == "MM:0.30");
}

TEST_CASE("transforms are seed-deterministic") {
  Program p = forged(51);
  auto r1 = apply_transform_chain(p, "DCI:0.5,NM:0.5", 123);
  auto r2 = apply_transform_chain(p, "DCI:0.5,NM:0.5", 123);
  CHECK(serialize_listing(r1.program) == serialize_listing(r2.program));
  auto r3 = apply_transform_chain(p, "DCI:0.5,NM:0.5", 124);
  CHECK(serialize_listing(r1.program) != serialize_listing(r3.program));
}

TEST_CASE("transform spec parsing") {
  auto s = TransformSpec::parse("RR:0.5");
  CHECK(s.kind == TransformKind::RR);
  CHECK(s.intensity == doctest::Approx(0.5));
  CHECK(TransformSpec::parse("FCF").intensity == doctest::Approx(1.0));
  CHECK_THROWS_AS(TransformSpec::parse("XX:1"), std::invalid_argument);
  CHECK_THROWS_AS(TransformSpec::parse("RR:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(TransformSpec::parse("RR:abc"), std::invalid_argument);
}

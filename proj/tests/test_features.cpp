// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/features.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "stylo/signatures.hpp"

using namespace stylo;
using namespace stylo::testutil;

namespace {

FeatureId fid(FeatureFamily fam, const std::string& d) { return {fam, d}; }

}  // namespace

TEST_CASE("n-gram windowing sanity: the character-level 4-gram example") {
  // Mnemonic stream M A L W A R E segments into MALW/ALWA/LWAR/WARE.
  Function f = make_fn("f", {make_block("b0", {"m", "a", "l", "w", "a", "r", "e"})});
  FeatureVector v = extract_opcode_ngrams(f, 4);
  CHECK(v.counts.size() == 4);
  CHECK(v.count(fid(FeatureFamily::Ngram, "m|a|l|w")) == 1);
  CHECK(v.count(fid(FeatureFamily::Ngram, "a|l|w|a")) == 1);
  CHECK(v.count(fid(FeatureFamily::Ngram, "l|w|a|r")) == 1);
  CHECK(v.count(fid(FeatureFamily::Ngram, "w|a|r|e")) == 1);
}

TEST_CASE("n-gram window multiplicity and block-shorter-than-n") {
  Function f = make_fn("f", {make_block("b0", {"push r:ebp", "mov r:ebp, r:esp",
                                               "sub r:esp, i:8"})});
  FeatureVector v3 = extract_opcode_ngrams(f, 3);
  CHECK(v3.counts.size() == 1);
  CHECK(v3.count(fid(FeatureFamily::Ngram, "push|mov|sub")) == 1);

  Function g = make_fn("g", {make_block("b0", {"mov r:a, i:1", "mov r:b, i:2",
                                               "mov r:c, i:3", "mov r:d, i:4"})});
  FeatureVector v2 = extract_opcode_ngrams(g, 2);
  CHECK(v2.count(fid(FeatureFamily::Ngram, "mov|mov")) == 3);

  CHECK(extract_opcode_ngrams(g, 5).counts.empty());
}

TEST_CASE("n-gram windows never cross block boundaries") {
  Function f = make_fn("f", {make_block("b0", {"push r:eax", "pop r:eax"}),
                             make_block("b1", {"nop", "ret"}, 10)},
                       {{"b0", "b1", "uncond"}});
  CHECK(extract_opcode_ngrams(f, 3).counts.empty());
  CHECK(extract_opcode_ngrams(f, 2).counts.size() == 2);
}

TEST_CASE("idiom extraction emits the concrete and wildcarded triples") {
  Function f = make_fn("f", {make_block("b0", {"push r:ebp", "mov r:ebp, r:esp",
                                               "sub r:esp, i:32"})});
  FeatureVector v = extract_idioms(f, IdiomPolicy::OperandsWild);
  CHECK(v.counts.size() == 2);
  CHECK(v.count(fid(FeatureFamily::Idiom, "push *|mov *,*|sub *,*")) == 1);
  CHECK(v.count(fid(FeatureFamily::Idiom,
                    "push r:ebp|mov r:ebp,r:esp|sub r:esp,i:32")) == 1);

  SUBCASE("policy none keeps only the concrete triple") {
    FeatureVector c = extract_idioms(f, IdiomPolicy::None);
    CHECK(c.counts.size() == 1);
    CHECK(c.count(fid(FeatureFamily::Idiom,
                      "push r:ebp|mov r:ebp,r:esp|sub r:esp,i:32")) == 1);
  }
  SUBCASE("no 3-window means empty vector") {
    Function g = make_fn("g", {make_block("b0", {"nop", "ret"})});
    CHECK(extract_idioms(g, IdiomPolicy::OperandsWild).counts.empty());
  }
}

TEST_CASE("register flow graph anchored at compares") {
  FeatureConfig cfg;
  SUBCASE("mov feeding a compare: one feature, edge from source to dest") {
    Function f = make_fn("f", {make_block("b0", {"mov r:eax, r:ebx", "cmp r:eax, r:ecx"})});
    FeatureVector v = extract_rfg_features(f, 1, cfg.compare_mnemonics);
    REQUIRE(v.counts.size() == 1);
    // First-occurrence roles: eax=x0, ebx=x1, ecx=x2. Edge ebx->eax,
    // anchors {eax, ecx}.
    CHECK(v.count(fid(FeatureFamily::Rfg, "a:x0,x2|x1>x0")) == 1);
  }
  SUBCASE("no compare, no features") {
    Function f = make_fn("f", {make_block("b0", {"mov r:eax, r:ebx", "ret"})});
    CHECK(extract_rfg_features(f, 4, cfg.compare_mnemonics).counts.empty());
  }
  SUBCASE("identical neighborhoods merge into one descriptor with count 2") {
    Function f = make_fn("f", {make_block("b0", {"mov r:eax, r:ebx", "cmp r:eax, r:ecx"}),
                               make_block("b1", {"mov r:esi, r:edi", "cmp r:esi, r:edx"}, 10)},
                         {{"b0", "b1", "uncond"}});
    FeatureVector v = extract_rfg_features(f, 1, cfg.compare_mnemonics);
    REQUIRE(v.counts.size() == 1);
    CHECK(v.counts.begin()->second == 2);
  }
  SUBCASE("renaming registers consistently leaves the descriptor unchanged") {
    Function f = make_fn("f", {make_block("b0", {"mov r:eax, r:ebx", "cmp r:eax, r:ecx"})});
    Function g = make_fn("g", {make_block("b0", {"mov r:edi, r:esi", "cmp r:edi, r:edx"})});
    CHECK(extract_rfg_features(f, 1, cfg.compare_mnemonics).counts ==
          extract_rfg_features(g, 1, cfg.compare_mnemonics).counts);
  }
}

TEST_CASE("strings and constants") {
  SUBCASE("string referenced twice counts twice") {
    Function f = make_fn("f", {make_block("b0", {"push s:\"error\"", "nop",
                                                 "push s:\"error\""})});
    FeatureVector v = extract_strings_constants(f);
    CHECK(v.count(fid(FeatureFamily::StrConst, "s:error")) == 2);
  }
  SUBCASE("immediate operand counts") {
    Function f = make_fn("f", {make_block("b0", {"mov r:eax, i:42"})});
    FeatureVector v = extract_strings_constants(f);
    CHECK(v.count(fid(FeatureFamily::StrConst, "i:42")) == 1);
  }
  SUBCASE("jump displacements are excluded") {
    Function f = make_fn("f", {make_block("b0", {"jne i:64"})});
    CHECK(extract_strings_constants(f).counts.empty());
  }
}

TEST_CASE("call features: named targets and the indirect pool") {
  Function f = make_fn("f", {make_block("b0", {"call l:CreateFileA", "call l:CreateFileA",
                                               "call r:eax", "call m:[ebx+8]"})});
  FeatureVector v = extract_call_features(f);
  CHECK(v.count(fid(FeatureFamily::Call, "CreateFileA")) == 2);
  CHECK(v.count(fid(FeatureFamily::Call, "indirect")) == 2);

  Function g = make_fn("g", {make_block("b0", {"nop", "ret"})});
  CHECK(extract_call_features(g).counts.empty());
}

TEST_CASE("extract_all merges user functions only when filtered") {
  SignatureSet sigs = SignatureSet::parse("(compiler) pusha cld\n");
  Function user = make_fn("u", {make_block("b0", {"mov r:eax, i:1", "push s:\"hi\"",
                                                  "call l:puts", "ret"})});
  Function comp = make_fn("crt", {make_block("b0", {"pusha", "cld", "ret"})});
  Program p = classify_provenance(make_prog("p", {user, comp}), sigs);

  FeatureConfig cfg;
  ProgramFeatures filtered = extract_all(p, cfg, true);
  CHECK(filtered.functions.size() == 1);
  CHECK(filtered.merged.counts == extract_function(p.functions[0], cfg).counts);
  CHECK(filtered.merged.subject == "p");
  CHECK(filtered.functions[0].vec.subject == "p/u");

  ProgramFeatures all = extract_all(p, cfg, false);
  CHECK(all.functions.size() == 2);
  CHECK(all.merged.total() > filtered.merged.total());

  SUBCASE("two identical user functions double the merged counts") {
    Function user2 = user;
    user2.name = "u2";
    Program q = classify_provenance(make_prog("q", {user, user2}), sigs);
    ProgramFeatures pf = extract_all(q, cfg, true);
    for (const auto& [id, n] : pf.merged.counts) {
      CHECK(n == 2 * filtered.merged.count(id));
    }
  }
}

TEST_CASE("additivity: merged vector equals the sum of per-function vectors") {
  FeatureConfig cfg;
  Function a = make_fn("a", {make_block("b0", {"mov r:eax, i:1", "add r:eax, r:ebx",
                                               "cmp r:eax, i:0", "jne l:b1"}),
                             make_block("b1", {"call l:exit", "ret"}, 10)},
                       {{"b0", "b1", "uncond"}});
  Function b = make_fn("b", {make_block("b0", {"push r:ebp", "mov r:ebp, r:esp",
                                               "sub r:esp, i:8", "ret"})});
  Program p = make_prog("p", {a, b});
  for (auto& f : p.functions) f.provenance = Provenance::User;

  ProgramFeatures pf = extract_all(p, cfg, true);
  FeatureVector manual;
  manual += extract_function(p.functions[0], cfg);
  manual += extract_function(p.functions[1], cfg);
  CHECK(pf.merged.counts == manual.counts);
}

TEST_CASE("determinism: repeated extraction dumps byte-identical records") {
  FeatureConfig cfg;
  Function f = make_fn("f", {make_block("b0", {"mov r:eax, i:3", "cmp r:eax, r:ebx",
                                               "jne l:b1"}),
                             make_block("b1", {"push s:\"s\\t1\"", "call l:x", "ret"}, 10)},
                       {{"b0", "b1", "true"}, {"b0", "b1", "false"}});
  FeatureVector v1 = extract_function(f, cfg);
  FeatureVector v2 = extract_function(f, cfg);
  v1.subject = v2.subject = "s";
  CHECK(dump_vector(v1) == dump_vector(v2));
  CHECK(!dump_vector(v1).empty());
}

TEST_CASE("feature vectors never store zero counts") {
  FeatureVector v;
  v.add({FeatureFamily::Opcode, "mov"}, 2);
  v.add({FeatureFamily::Opcode, "mov"}, -2);
  CHECK(v.counts.empty());
  v.add({FeatureFamily::Opcode, "ret"}, 0);
  CHECK(v.counts.empty());
}

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/forge.hpp"

#include <set>
#include <string>

#include <stdexcept>

#include "doctest.h"
#include "stylo/features.hpp"
#include "stylo/listing.hpp"
#include "stylo/signatures.hpp"

using namespace stylo;

namespace {

ForgeOptions small_options(uint64_t seed = 1) {
  ForgeOptions opt;
  opt.authors = 3;
  opt.programs_per_author = 3;
  opt.style_strength = 0.8;
  opt.seed = seed;
  opt.size.functions_min = 2;
  opt.size.functions_max = 4;
  opt.size.blocks_min = 2;
  opt.size.blocks_max = 4;
  opt.size.instrs_min = 3;
  opt.size.instrs_max = 6;
  return opt;
}

std::string corpus_bytes(const Corpus& c) {
  std::string out = c.manifest.serialize();
  for (const auto& p : c.programs) out += serialize_listing(p);
  return out;
}

}  // namespace

TEST_CASE("generation is seed-deterministic and seed-sensitive") {
  auto c1 = forge_corpus(small_options(7));
  auto c2 = forge_corpus(small_options(7));
  CHECK(corpus_bytes(c1) == corpus_bytes(c2));
  auto c3 = forge_corpus(small_options(8));
  CHECK(corpus_bytes(c1) != corpus_bytes(c3));
}

TEST_CASE("forged programs validate and survive the serialize/parse round-trip") {
  auto corpus = forge_corpus(small_options(3));
  REQUIRE(corpus.programs.size() == 9);
  for (const auto& p : corpus.programs) {
    CHECK(validate(p).empty());
    Program back = parse_listing(serialize_listing(p));
    CHECK(back == p);
  }
}

TEST_CASE("manifest matches the generated programs and round-trips") {
  auto corpus = forge_corpus(small_options(11));
  REQUIRE(corpus.manifest.entries.size() == corpus.programs.size());
  for (size_t i = 0; i < corpus.programs.size(); ++i) {
    CHECK(corpus.manifest.entries[i].program_id == corpus.programs[i].id);
    CHECK(corpus.manifest.entries[i].author == corpus.programs[i].author);
    CHECK(corpus.manifest.entries[i].transforms.empty());
  }
  auto back = CorpusManifest::parse(corpus.manifest.serialize());
  CHECK(back.seed == corpus.manifest.seed);
  CHECK(back.entries.size() == corpus.manifest.entries.size());
  CHECK(back.entries[0].program_id == corpus.manifest.entries[0].program_id);
}

TEST_CASE("degenerate inputs are rejected") {
  auto profiles = make_profiles(2, 0.5, 1);
  SizeParams size;
  SUBCASE("fewer than two profiles") {
    std::vector<StyleProfile> one = {profiles[0]};
    CHECK_THROWS_AS(generate_corpus(one, 2, size, 1), std::invalid_argument);
  }
  SUBCASE("fewer than two programs per author") {
    CHECK_THROWS_AS(generate_corpus(profiles, 1, size, 1), std::invalid_argument);
  }
  SUBCASE("degenerate profile: empty habit set") {
    auto bad = profiles;
    bad[0].idiom_habits.clear();
    CHECK_THROWS_AS(generate_corpus(bad, 2, size, 1), std::invalid_argument);
  }
}

TEST_CASE("style strength zero collapses every profile onto the base style") {
  auto profiles = make_profiles(4, 0.0, 5);
  for (const auto& p : profiles) {
    CHECK(p.habit_prob == 0.0);
    CHECK(p.strings.own_bias == 0.0);
    CHECK(p.prologue_bias == 0.0);
    for (size_t i = 0; i < p.mnemonic_dist.size(); ++i) {
      CHECK(p.mnemonic_dist[i].second ==
            doctest::Approx(profiles[0].mnemonic_dist[i].second).epsilon(1e-12));
    }
  }
}

TEST_CASE("stripped functions get generated names, markers, unknown provenance") {
  auto opt = small_options(21);
  opt.size.stripped_fraction = 0.5;
  opt.size.stripped_marker = true;
  auto corpus = forge_corpus(opt);
  size_t stripped = 0, marked = 0;
  for (auto& p : corpus.programs) {
    p = classify_provenance(std::move(p), builtin_signatures());
    for (const auto& f : p.functions) {
      if (is_generated_name(f.name)) {
        ++stripped;
        CHECK(f.provenance == Provenance::Unknown);
        for (const auto& s : f.string_table) {
          if (s.starts_with("mrk-")) {
            CHECK(s == "mrk-" + p.author);
            ++marked;
          }
        }
      } else {
        CHECK(f.provenance == Provenance::User);
      }
    }
  }
  CHECK(stripped > 0);
  CHECK(marked >= stripped);  // every stripped function carries its marker
}

TEST_CASE("paper-scale preset: 179 authors, 736 programs, ~46k functions") {
  auto opt = paper_scale_preset(99);
  CHECK(opt.authors == 179);
  size_t programs = 0;
  for (int c : opt.per_author_counts) programs += static_cast<size_t>(c);
  CHECK(programs == 736);
  auto corpus = forge_corpus(opt);
  CHECK(corpus.programs.size() == 736);
  std::set<std::string> authors;
  size_t functions = 0;
  for (const auto& p : corpus.programs) {
    authors.insert(p.author);
    functions += p.functions.size();
  }
  CHECK(authors.size() == 179);
  CHECK(functions > 43000);
  CHECK(functions < 49000);
}

TEST_CASE("compiler profiles inject signature-matching helpers") {
  auto corpus = forge_corpus(small_options(31));
  Program p = corpus.programs[0];
  size_t before = p.functions.size();
  auto cp = builtin_compiler_profile("profile-A");
  Program q = apply_compiler_profile(p, cp, 5);
  CHECK(q.functions.size() == before + 2);
  CHECK(q.meta.compiler == "profile-A");

  q = classify_provenance(std::move(q), builtin_signatures());
  size_t compiler_fns = count_provenance(q).compiler;
  CHECK(compiler_fns == 2);

  CHECK_THROWS_AS(builtin_compiler_profile("profile-Z"), std::invalid_argument);
}

TEST_CASE("different compiler profiles leave different prologue idioms") {
  auto corpus = forge_corpus(small_options(41));
  const Program& p = corpus.programs[0];
  Program a = apply_compiler_profile(p, builtin_compiler_profile("profile-A"), 5);
  Program b = apply_compiler_profile(p, builtin_compiler_profile("profile-B"), 5);
  FeatureConfig cfg;
  auto va = extract_all(classify_provenance(a, builtin_signatures()), cfg, true);
  auto vb = extract_all(classify_provenance(b, builtin_signatures()), cfg, true);
  CHECK(va.merged.counts != vb.merged.counts);
}

TEST_CASE("filtration removes injected compiler noise from merged vectors") {
  auto corpus = forge_corpus(small_options(51));
  FeatureConfig fcfg;
  auto sigs = builtin_signatures();

  // Injection-only profile: helpers, no user-code rewrites.
  auto cp = builtin_compiler_profile("profile-A");
  cp.prologue.clear();
  cp.peephole_rules.clear();

  for (const auto& p : corpus.programs) {
    Program before = classify_provenance(p, sigs);
    Program after = classify_provenance(apply_compiler_profile(p, cp, 9), sigs);
    auto v_before = extract_all(before, fcfg, true);
    auto v_after_filtered = extract_all(after, fcfg, true);
    auto v_after_raw = extract_all(after, fcfg, false);
    CHECK(v_before.merged.counts == v_after_filtered.merged.counts);
    CHECK(v_before.merged.counts != v_after_raw.merged.counts);
  }
}

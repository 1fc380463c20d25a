// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/listing.hpp"

#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "stylo/rng.hpp"

using namespace stylo;
using namespace stylo::testutil;

TEST_CASE("minimal document: one function, one block, ret only") {
  Program p = parse_listing(
      "program p1\n"
      "function main\n"
      "block b0\n"
      "  0 ret\n"
      "end\n");
  CHECK(p.id == "p1");
  REQUIRE(p.functions.size() == 1);
  REQUIRE(p.functions[0].blocks.size() == 1);
  CHECK(p.functions[0].blocks[0].instructions.size() == 1);
  CHECK(p.functions[0].blocks[0].successors.empty());
  CHECK(p.functions[0].entry == "b0");
}

TEST_CASE("conditional edges carry true/false labels") {
  Program p = parse_listing(
      "program p1\n"
      "function f\n"
      "block b0\n"
      "  0 cmp r:eax, i:0\n"
      "  1 jne l:b2\n"
      "block b1\n"
      "  2 ret\n"
      "block b2\n"
      "  3 ret\n"
      "edge b0 b2 true\n"
      "edge b0 b1 false\n"
      "end\n");
  const auto& b0 = p.functions[0].blocks[0];
  REQUIRE(b0.successors.size() == 2);
  CHECK(b0.successors[0].target == "b2");
  CHECK(b0.successors[0].label == EdgeLabel::True);
  CHECK(b0.successors[1].target == "b1");
  CHECK(b0.successors[1].label == EdgeLabel::False);
}

TEST_CASE("dangling edge target is an error naming the target") {
  std::string doc =
      "program p1\n"
      "function f\n"
      "block b0\n"
      "  0 jmp l:nowhere\n"
      "edge b0 nowhere uncond\n"
      "end\n";
  CHECK_THROWS_WITH_AS(parse_listing(doc),
                       doctest::Contains("dangling edge target: nowhere"), ParseError);
}

TEST_CASE("duplicate function name is an error") {
  std::string doc =
      "program p1\n"
      "function f\nblock b0\n  0 ret\n"
      "function f\nblock b0\n  0 ret\n"
      "end\n";
  CHECK_THROWS_WITH_AS(parse_listing(doc), doctest::Contains("duplicate function name"),
                       ParseError);
}

TEST_CASE("empty function is an error") {
  std::string doc = "program p1\nfunction f\nfunction g\nblock b0\n  0 ret\nend\n";
  CHECK_THROWS_WITH_AS(parse_listing(doc), doctest::Contains("empty function"), ParseError);
}

TEST_CASE("syntax errors carry line numbers") {
  std::string doc = "program p1\nfunction f\nblock b0\n  0 ret\nwat is this\nend\n";
  try {
    parse_listing(doc);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }
}

TEST_CASE("operand normalization at parse time") {
  Program p = parse_listing(
      "program p1\n"
      "function f\n"
      "block b0\n"
      "  0 mov r:EAX, i:0x10\n"
      "  1 lea r:esi, m:[EBP+ESI-8]\n"
      "  2 push s:\"a \\\"quoted\\\" word\"\n"
      "  3 mov r:ebx, m:[16]\n"
      "  4 ret\n"
      "end\n");
  const auto& is = p.functions[0].blocks[0].instructions;
  CHECK(is[0].operands[0].reg == "eax");          // registers lowercased
  CHECK(is[0].operands[1].imm == 16);             // hex canonicalized to decimal
  CHECK(is[1].operands[1].mem.base == "ebp");
  CHECK(is[1].operands[1].mem.index == "esi");
  CHECK(is[1].operands[1].mem.disp == -8);
  CHECK(is[2].operands[0].text == "a \"quoted\" word");
  CHECK(is[3].operands[1].mem.base == "");
  CHECK(is[3].operands[1].mem.disp == 16);
}

TEST_CASE("comments are stripped, but not inside string operands") {
  Program p = parse_listing(
      "# leading comment\n"
      "program p1  # trailing\n"
      "function f\n"
      "block b0\n"
      "  0 push s:\"not # a comment\"  # this one is\n"
      "  1 ret\n"
      "end\n");
  CHECK(p.functions[0].blocks[0].instructions[0].operands[0].text == "not # a comment");
}

TEST_CASE("program metadata keys round-trip") {
  Program p = parse_listing(
      "program p1 author=alice compiler=profile-A source=forge transforms=RR:0.50,DCI:0.25\n"
      "function f\nblock b0\n  0 ret\nend\n");
  CHECK(p.author == "alice");
  CHECK(p.meta.compiler == "profile-A");
  CHECK(p.meta.source == "forge");
  REQUIRE(p.meta.transforms.size() == 2);
  CHECK(p.meta.transforms[1] == "DCI:0.25");
  Program again = parse_listing(serialize_listing(p));
  CHECK(again == p);
}

TEST_CASE("structural validation rejects bad programs") {
  SUBCASE("two true edges") {
    std::string doc =
        "program p\nfunction f\nblock b0\n  0 ret\nblock b1\n  1 ret\n"
        "edge b0 b1 true\nedge b0 b0 true\nend\n";
    CHECK_THROWS_WITH_AS(parse_listing(doc), doctest::Contains("more than one true edge"),
                         ParseError);
  }
  SUBCASE("addresses must strictly increase within a block") {
    std::string doc = "program p\nfunction f\nblock b0\n  5 nop\n  5 ret\nend\n";
    CHECK_THROWS_WITH_AS(parse_listing(doc),
                         doctest::Contains("addresses not strictly increasing"), ParseError);
  }
  SUBCASE("more than 4 operands") {
    std::string doc =
        "program p\nfunction f\nblock b0\n  0 weird r:a, r:b, r:c, r:d, r:e\nend\n";
    CHECK_THROWS_AS(parse_listing(doc), ParseError);
  }
  SUBCASE("unreachable block") {
    std::string doc =
        "program p\nfunction f\nblock b0\n  0 ret\nblock b1\n  1 ret\nend\n";
    CHECK_THROWS_WITH_AS(parse_listing(doc), doctest::Contains("unreachable"), ParseError);
  }
  SUBCASE("content after end") {
    std::string doc = "program p\nfunction f\nblock b0\n  0 ret\nend\nfunction g\n";
    CHECK_THROWS_WITH_AS(parse_listing(doc), doctest::Contains("content after end"),
                         ParseError);
  }
}

// Round-trip property over randomized programs: serialize then parse gives a
// structurally equal program. The generator below builds arbitrary small
// CFGs directly (the corpus forge exercises this again at scale).
TEST_CASE("serialize/parse round-trip property") {
  Rng rng(99);
  const std::vector<std::string> pool = {
      "ret", "nop", "mov r:eax, r:ebx", "add r:eax, i:1", "push s:\"x\\ty\"",
      "cmp r:ecx, i:-7", "lea r:edx, m:[eax+ecx+12]", "call l:helper", "xor r:esi, r:esi"};
  for (int iter = 0; iter < 50; ++iter) {
    int nblocks = static_cast<int>(rng.uniform_int(1, 4));
    std::vector<BasicBlock> blocks;
    uint64_t addr = 0;
    for (int b = 0; b < nblocks; ++b) {
      std::vector<std::string> body;
      int nins = static_cast<int>(rng.uniform_int(1, 5));
      for (int i = 0; i < nins; ++i) body.push_back(pool[rng.below(pool.size())]);
      blocks.push_back(make_block("b" + std::to_string(b), body, addr));
      addr += static_cast<uint64_t>(nins);
    }
    std::vector<std::vector<std::string>> edges;
    for (int b = 0; b + 1 < nblocks; ++b) {
      // Chain keeps every block reachable; occasionally fork true/false.
      std::string src = "b" + std::to_string(b);
      std::string dst = "b" + std::to_string(b + 1);
      if (rng.chance(0.3) && b + 2 < nblocks) {
        edges.push_back({src, dst, "false"});
        edges.push_back({src, "b" + std::to_string(b + 2), "true"});
      } else {
        edges.push_back({src, dst, "uncond"});
      }
    }
    Program p = make_prog("prog" + std::to_string(iter),
                          {make_fn("f0", std::move(blocks), edges)},
                          iter % 2 ? "auth" : "");
    p.meta.source = "gen";
    Program back = parse_listing(serialize_listing(p));
    CHECK(back == p);
  }
}

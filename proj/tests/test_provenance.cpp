// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/signatures.hpp"

#include <string>

#include "doctest.h"
#include "helpers.hpp"

using namespace stylo;
using namespace stylo::testutil;

namespace {

Function tiny_fn(const std::string& name, const std::vector<std::string>& body) {
  return make_fn(name, {make_block("b0", body)});
}

SignatureSet test_sigs() {
  return SignatureSet::parse(
      "(compiler) pusha cld\n"
      "(compiler) xlat * xlat\n"
      "(library) endbr jmp\n");
}

}  // namespace

TEST_CASE("first matching signature wins and sets the class") {
  Program p = make_prog("p", {tiny_fn("boilerplate", {"pusha", "cld", "ret"}),
                              tiny_fn("wildcarded", {"xlat", "mov r:eax, i:1", "xlat"}),
                              tiny_fn("thunk", {"endbr", "jmp l:x"})});
  p = classify_provenance(std::move(p), test_sigs());
  CHECK(p.functions[0].provenance == Provenance::Compiler);
  CHECK(p.functions[1].provenance == Provenance::Compiler);
  CHECK(p.functions[2].provenance == Provenance::Library);
}

TEST_CASE("sub_-named functions with no match become unknown") {
  Program p = make_prog("p", {tiny_fn("sub_4011A0", {"mov r:eax, i:1", "ret"}),
                              tiny_fn("sub_xyz", {"ret"}),  // not hex digits -> user
                              tiny_fn("main", {"ret"})});
  p = classify_provenance(std::move(p), test_sigs());
  CHECK(p.functions[0].provenance == Provenance::Unknown);
  CHECK(p.functions[1].provenance == Provenance::User);
  CHECK(p.functions[2].provenance == Provenance::User);
}

TEST_CASE("classification is idempotent and never touches instructions") {
  Program p = make_prog("p", {tiny_fn("main", {"pusha", "cld", "ret"})});
  Program once = classify_provenance(p, test_sigs());
  Program twice = classify_provenance(once, test_sigs());
  CHECK(once == twice);
  CHECK(once.functions[0].blocks == p.functions[0].blocks);
}

TEST_CASE("filtration partitions the function set") {
  Program p = make_prog("p", {tiny_fn("a", {"pusha", "cld", "ret"}),
                              tiny_fn("b", {"endbr", "jmp l:x"}),
                              tiny_fn("sub_FF", {"nop", "ret"}),
                              tiny_fn("c", {"ret"}),
                              tiny_fn("d", {"nop", "nop"})});
  p = classify_provenance(std::move(p), test_sigs());
  auto c = count_provenance(p);
  CHECK(c.user == 2);
  CHECK(c.library == 1);
  CHECK(c.compiler == 1);
  CHECK(c.unknown == 1);
  CHECK(c.total() == p.functions.size());
}

TEST_CASE("user_functions preserves order and drops the rest") {
  Program p = make_prog("p", {tiny_fn("u1", {"ret"}),
                              tiny_fn("lib", {"endbr", "jmp l:x"}),
                              tiny_fn("u2", {"nop", "ret"}),
                              tiny_fn("comp", {"pusha", "cld"}),
                              tiny_fn("u3", {"mov r:eax, i:2", "ret"}),
                              tiny_fn("lib2", {"endbr", "jmp l:y"})});
  p = classify_provenance(std::move(p), test_sigs());
  auto users = user_functions(p);
  REQUIRE(users.size() == 3);
  CHECK(users[0]->name == "u1");
  CHECK(users[1]->name == "u2");
  CHECK(users[2]->name == "u3");

  SUBCASE("all-compiler program yields the empty list") {
    Program q = make_prog("q", {tiny_fn("x", {"pusha", "cld"})});
    q = classify_provenance(std::move(q), test_sigs());
    CHECK(user_functions(q).empty());
  }
}

TEST_CASE("paper-scale filtration proportions: 5285 user of 6886 total") {
  // Corpus shaped like the Ramnit row of the malware-family table: 1601
  // compiler-signature functions filtered from 6886 leaves 5285.
  Program p;
  p.id = "ramnit-shaped";
  for (int i = 0; i < 5285; ++i) {
    p.functions.push_back(tiny_fn("fn" + std::to_string(i), {"mov r:eax, i:1", "ret"}));
  }
  for (int i = 0; i < 1601; ++i) {
    p.functions.push_back(tiny_fn("crt" + std::to_string(i), {"pusha", "cld", "ret"}));
  }
  p = classify_provenance(std::move(p), test_sigs());
  auto c = count_provenance(p);
  CHECK(c.compiler == 1601);
  CHECK(user_functions(p).size() == 5285);
}

TEST_CASE("signature file parse/serialize and wildcard matching") {
  SignatureSet s = SignatureSet::parse("(compiler) push * sub\n# comment\n(library) hlt\n");
  REQUIRE(s.rules.size() == 2);
  CHECK(s.rules[0].pattern == std::vector<std::string>{"push", "*", "sub"});
  CHECK(SignatureSet::parse(s.serialize()).rules == s.rules);

  Function f = tiny_fn("f", {"push r:ebp", "mov r:ebp, r:esp", "sub r:esp, i:8", "ret"});
  CHECK(s.rules[0].matches(f));
  Function g = tiny_fn("g", {"push r:ebp", "mov r:ebp, r:esp"});  // shorter than pattern
  CHECK_FALSE(s.rules[0].matches(g));
}

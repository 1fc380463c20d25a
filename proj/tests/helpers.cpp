// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "helpers.hpp"

#include <stdexcept>

#include "stylo/listing.hpp"

namespace stylo::testutil {

Instruction ins(const std::string& text) {
  // Parse through a throwaway single-instruction listing so test shorthand
  // and the real grammar can never drift apart.
  std::string doc = "program t\nfunction f\nblock b\n  0 " + text + "\nend\n";
  Program p = parse_listing(doc);
  return p.functions.at(0).blocks.at(0).instructions.at(0);
}

BasicBlock make_block(const std::string& id, const std::vector<std::string>& instrs,
                      uint64_t base_addr) {
  BasicBlock b;
  b.id = id;
  uint64_t addr = base_addr;
  for (const auto& text : instrs) {
    Instruction i = ins(text);
    i.addr = addr++;
    b.instructions.push_back(std::move(i));
  }
  return b;
}

Function make_fn(const std::string& name, std::vector<BasicBlock> blocks,
                 const std::vector<std::vector<std::string>>& edges) {
  Function f;
  f.name = name;
  f.blocks = std::move(blocks);
  if (!f.blocks.empty()) f.entry = f.blocks.front().id;
  for (const auto& e : edges) {
    if (e.size() != 3) throw std::runtime_error("edge spec needs src,dst,label");
    EdgeLabel label = e[2] == "true"    ? EdgeLabel::True
                      : e[2] == "false" ? EdgeLabel::False
                                        : EdgeLabel::Uncond;
    for (auto& b : f.blocks) {
      if (b.id == e[0]) b.successors.push_back({e[1], label});
    }
  }
  f.rebuild_string_table();
  return f;
}

Program make_prog(const std::string& id, std::vector<Function> fns, const std::string& author) {
  Program p;
  p.id = id;
  p.author = author;
  p.functions = std::move(fns);
  return p;
}

}  // namespace stylo::testutil

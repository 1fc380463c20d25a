// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Line-oriented disassembly interchange format:
//
//   program <id> [author=<label>] [compiler=<tag>] [source=<tag>] [transforms=<t1,t2>]
//   function <name>
//   block <block-id>
//     <addr> <mnemonic> [operand{, operand}]
//   edge <src-block> <dst-block> (true|false|uncond)
//   end
//
// '#' starts a comment (outside string operands); blank lines are ignored.
// Operands: r:<name>, i:<int>, m:[base+index+disp], l:<sym>, s:"text".
// One program per document. serialize_listing emits the canonical form;
// parse(serialize(p)) reproduces p structurally.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "stylo/prog_model.hpp"

namespace stylo {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Program parse_listing(std::string_view text);
std::string serialize_listing(const Program& p);

Program load_listing_file(const std::string& path);
void save_listing_file(const std::string& path, const Program& p);

}  // namespace stylo

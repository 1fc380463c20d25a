// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Shared fixture builders for the unit suites.

#pragma once

#include <string>
#include <vector>

#include "stylo/prog_model.hpp"

namespace stylo::testutil {

// "mov r:eax,r:ebx"-style shorthand -> Instruction (addresses auto-assigned
// by make_block). Operand syntax matches the interchange format.
Instruction ins(const std::string& text);

BasicBlock make_block(const std::string& id, const std::vector<std::string>& instrs,
                      uint64_t base_addr = 0);

Function make_fn(const std::string& name, std::vector<BasicBlock> blocks,
                 const std::vector<std::vector<std::string>>& edges = {});

Program make_prog(const std::string& id, std::vector<Function> fns,
                  const std::string& author = "");

}  // namespace stylo::testutil

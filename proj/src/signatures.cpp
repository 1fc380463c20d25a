// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/signatures.hpp"

#include "stylo/listing.hpp"
#include "stylo/util.hpp"

namespace stylo {

bool SignatureRule::matches(const Function& f) const {
  auto leading = f.leading_mnemonics(pattern.size());
  if (leading.size() < pattern.size()) return false;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != "*" && pattern[i] != leading[i]) return false;
  }
  return true;
}

int SignatureSet::match(const Function& f) const {
  for (size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].matches(f)) return static_cast<int>(i);
  }
  return -1;
}

SignatureSet SignatureSet::parse(std::string_view text) {
  SignatureSet set;
  auto lines = split(text, '\n');
  for (size_t li = 0; li < lines.size(); ++li) {
    int line_no = static_cast<int>(li) + 1;
    std::string_view line = trim(lines[li]);
    if (line.empty() || line.starts_with("#")) continue;
    auto toks = split_ws(line);
    if (toks.size() < 2) throw ParseError(line_no, "signature rule needs a class and a pattern");
    SignatureRule rule;
    if (toks[0] == "(library)") rule.cls = Provenance::Library;
    else if (toks[0] == "(compiler)") rule.cls = Provenance::Compiler;
    else throw ParseError(line_no, "signature class must be (library) or (compiler)");
    for (size_t i = 1; i < toks.size(); ++i) rule.pattern.push_back(lower(toks[i]));
    if (rule.pattern.size() > 8) throw ParseError(line_no, "pattern longer than 8 tokens");
    set.rules.push_back(std::move(rule));
  }
  return set;
}

std::string SignatureSet::serialize() const {
  std::string out;
  for (const auto& r : rules) {
    out += r.cls == Provenance::Library ? "(library)" : "(compiler)";
    for (const auto& t : r.pattern) out += " " + t;
    out += "\n";
  }
  return out;
}

SignatureSet SignatureSet::load_file(const std::string& path) {
  return parse(read_file(path));
}

void SignatureSet::save_file(const std::string& path) const {
  write_file(path, serialize());
}

SignatureSet builtin_signatures() {
  // The mnemonics below are reserved: the corpus forge never emits them in
  // user-authored code, so these prefixes identify injected scaffolding.
  return SignatureSet::parse(
      "# compiler scaffolding (stack probes, guard checks, CRT init)\n"
      "(compiler) pusha cld\n"
      "(compiler) cld rep\n"
      "(compiler) xlat * xlat\n"
      "(compiler) lahf sahf\n"
      "# library thunks and stubs\n"
      "(library) endbr jmp\n"
      "(library) hlt nop\n");
}

Program classify_provenance(Program p, const SignatureSet& sigs) {
  for (auto& f : p.functions) {
    int idx = sigs.match(f);
    if (idx >= 0) f.provenance = sigs.rules[static_cast<size_t>(idx)].cls;
    else if (is_generated_name(f.name)) f.provenance = Provenance::Unknown;
    else f.provenance = Provenance::User;
  }
  return p;
}

std::vector<const Function*> user_functions(const Program& p) {
  std::vector<const Function*> out;
  for (const auto& f : p.functions) {
    if (f.provenance == Provenance::User) out.push_back(&f);
  }
  return out;
}

ProvenanceCounts count_provenance(const Program& p) {
  ProvenanceCounts c;
  for (const auto& f : p.functions) {
    switch (f.provenance) {
      case Provenance::User: ++c.user; break;
      case Provenance::Library: ++c.library; break;
      case Provenance::Compiler: ++c.compiler; break;
      case Provenance::Unknown: ++c.unknown; break;
    }
  }
  return c;
}

}  // namespace stylo

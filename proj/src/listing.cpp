// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/listing.hpp"

#include <cctype>

#include "stylo/util.hpp"

namespace stylo {

namespace {

// Strips a '#' comment, ignoring '#' inside s:"..." operands.
std::string_view strip_comment(std::string_view line) {
  bool in_quote = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quote) {
      if (c == '\\' && i + 1 < line.size()) ++i;
      else if (c == '"') in_quote = false;
    } else if (c == '"') {
      in_quote = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

// Splits an operand list on commas that are outside quotes and brackets.
std::vector<std::string_view> split_operands(std::string_view s) {
  std::vector<std::string_view> out;
  bool in_quote = false;
  int bracket = 0;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      char c = s[i];
      if (in_quote) {
        if (c == '\\' && i + 1 < s.size()) ++i;
        else if (c == '"') in_quote = false;
        continue;
      }
      if (c == '"') { in_quote = true; continue; }
      if (c == '[') { ++bracket; continue; }
      if (c == ']') { --bracket; continue; }
      if (c != ',' || bracket > 0) continue;
    }
    out.push_back(trim(s.substr(start, i - start)));
    start = i + 1;
  }
  return out;
}

std::string unescape_string_ref(std::string_view s, int line) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (++i >= s.size()) throw ParseError(line, "trailing backslash in string operand");
    switch (s[i]) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      default: throw ParseError(line, std::string("unknown escape \\") + s[i]);
    }
  }
  return out;
}

bool valid_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') return false;
  }
  return true;
}

Operand parse_mem_operand(std::string_view body, int line) {
  if (!body.starts_with("[") || !body.ends_with("]")) {
    throw ParseError(line, "memory operand must be m:[...]");
  }
  body = body.substr(1, body.size() - 2);
  if (trim(body).empty()) throw ParseError(line, "empty memory operand");
  std::string base, index;
  long long disp = 0;
  bool has_disp = false;
  size_t i = 0;
  bool first = true;
  while (i < body.size()) {
    int sign = 1;
    if (!first) {
      if (body[i] == '+') sign = 1;
      else if (body[i] == '-') sign = -1;
      else throw ParseError(line, "expected + or - in memory operand");
      ++i;
    } else if (body[i] == '-') {
      sign = -1;
      ++i;
    }
    size_t start = i;
    while (i < body.size() && body[i] != '+' && body[i] != '-') ++i;
    std::string_view term = trim(body.substr(start, i - start));
    if (term.empty()) throw ParseError(line, "empty term in memory operand");
    if (auto v = parse_int(term)) {
      if (has_disp) throw ParseError(line, "multiple displacements in memory operand");
      disp = sign * *v;
      has_disp = true;
    } else {
      if (sign < 0) throw ParseError(line, "negated register in memory operand");
      if (base.empty()) base = lower(term);
      else if (index.empty()) index = lower(term);
      else throw ParseError(line, "more than two registers in memory operand");
    }
    first = false;
  }
  return Operand::make_mem(base, index, disp, has_disp);
}

Operand parse_operand(std::string_view tok, int line) {
  if (tok.size() < 2 || tok[1] != ':') {
    throw ParseError(line, "malformed operand: " + std::string(tok));
  }
  std::string_view body = tok.substr(2);
  switch (tok[0]) {
    case 'r':
      if (!valid_token(body)) throw ParseError(line, "malformed register operand");
      return Operand::make_reg(body);
    case 'i': {
      auto v = parse_int(body);
      if (!v) throw ParseError(line, "malformed immediate: " + std::string(body));
      return Operand::make_imm(*v);
    }
    case 'm':
      return parse_mem_operand(body, line);
    case 'l':
      if (!valid_token(body)) throw ParseError(line, "malformed label operand");
      return Operand::make_label(body);
    case 's': {
      if (body.size() < 2 || body.front() != '"' || body.back() != '"') {
        throw ParseError(line, "string operand must be s:\"...\"");
      }
      return Operand::make_str(unescape_string_ref(body.substr(1, body.size() - 2), line));
    }
    default:
      throw ParseError(line, "unknown operand kind: " + std::string(tok.substr(0, 1)));
  }
}

struct Parser {
  Program prog;
  Function* fn = nullptr;
  BasicBlock* bb = nullptr;
  bool have_program = false;
  bool done = false;
  int fn_line = 0;

  void close_function() {
    if (fn && fn->blocks.empty()) {
      throw ParseError(fn_line, "empty function: " + fn->name);
    }
    fn = nullptr;
    bb = nullptr;
  }

  void handle_program(const std::vector<std::string_view>& toks, int line) {
    if (have_program) throw ParseError(line, "multiple program declarations");
    if (toks.size() < 2) throw ParseError(line, "program line needs an id");
    prog.id = std::string(toks[1]);
    for (size_t i = 2; i < toks.size(); ++i) {
      auto kv = toks[i];
      size_t eq = kv.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(line, "expected key=value, got: " + std::string(kv));
      }
      std::string_view key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (val.empty()) throw ParseError(line, "empty value for " + std::string(key));
      if (key == "author") prog.author = std::string(val);
      else if (key == "compiler") prog.meta.compiler = std::string(val);
      else if (key == "source") prog.meta.source = std::string(val);
      else if (key == "transforms") {
        for (auto t : split(val, ',')) {
          if (t.empty()) throw ParseError(line, "empty transform tag");
          prog.meta.transforms.emplace_back(t);
        }
      } else {
        throw ParseError(line, "unknown program key: " + std::string(key));
      }
    }
    have_program = true;
  }

  void handle_function(const std::vector<std::string_view>& toks, int line) {
    if (!have_program) throw ParseError(line, "function before program line");
    if (toks.size() != 2) throw ParseError(line, "function line needs exactly a name");
    close_function();
    if (prog.function(toks[1])) {
      throw ParseError(line, "duplicate function name: " + std::string(toks[1]));
    }
    prog.functions.emplace_back();
    fn = &prog.functions.back();
    fn->name = std::string(toks[1]);
    fn_line = line;
  }

  void handle_block(const std::vector<std::string_view>& toks, int line) {
    if (!fn) throw ParseError(line, "block outside function");
    if (toks.size() != 2) throw ParseError(line, "block line needs exactly an id");
    if (fn->block(toks[1])) {
      throw ParseError(line, "duplicate block id: " + std::string(toks[1]));
    }
    fn->blocks.emplace_back();
    bb = &fn->blocks.back();
    bb->id = std::string(toks[1]);
    if (fn->blocks.size() == 1) fn->entry = bb->id;
  }

  void handle_edge(const std::vector<std::string_view>& toks, int line) {
    if (!fn) throw ParseError(line, "edge outside function");
    if (toks.size() != 4) throw ParseError(line, "edge line needs: edge <src> <dst> <label>");
    BasicBlock* src = nullptr;
    for (auto& b : fn->blocks) {
      if (b.id == toks[1]) src = &b;
    }
    if (!src) throw ParseError(line, "edge source block not declared: " + std::string(toks[1]));
    EdgeLabel label;
    if (toks[3] == "true") label = EdgeLabel::True;
    else if (toks[3] == "false") label = EdgeLabel::False;
    else if (toks[3] == "uncond") label = EdgeLabel::Uncond;
    else throw ParseError(line, "edge label must be true|false|uncond");
    src->successors.push_back({std::string(toks[2]), label});
  }

  void handle_instruction(std::string_view rest, uint64_t addr, int line) {
    if (!bb) throw ParseError(line, "instruction outside block");
    auto toks = split_ws(rest);
    if (toks.empty()) throw ParseError(line, "missing mnemonic");
    Instruction ins;
    ins.addr = addr;
    ins.mnemonic = lower(toks[0]);
    size_t mnem_end = rest.find(toks[0]) + toks[0].size();
    std::string_view oplist = trim(rest.substr(mnem_end));
    if (!oplist.empty()) {
      for (auto op : split_operands(oplist)) {
        if (op.empty()) throw ParseError(line, "empty operand");
        ins.operands.push_back(parse_operand(op, line));
      }
    }
    if (ins.operands.size() > 4) throw ParseError(line, "more than 4 operands");
    bb->instructions.push_back(std::move(ins));
  }
};

}  // namespace

Program parse_listing(std::string_view text) {
  Parser p;
  auto lines = split(text, '\n');
  for (size_t li = 0; li < lines.size(); ++li) {
    int line_no = static_cast<int>(li) + 1;
    std::string_view line = trim(strip_comment(lines[li]));
    if (line.empty()) continue;
    if (p.done) throw ParseError(line_no, "content after end");
    auto toks = split_ws(line);
    std::string_view head = toks[0];
    if (head == "program") p.handle_program(toks, line_no);
    else if (head == "function") p.handle_function(toks, line_no);
    else if (head == "block") p.handle_block(toks, line_no);
    else if (head == "edge") p.handle_edge(toks, line_no);
    else if (head == "end") {
      if (!p.have_program) throw ParseError(line_no, "end before program line");
      if (toks.size() != 1) throw ParseError(line_no, "trailing tokens after end");
      p.close_function();
      p.done = true;
    } else if (auto addr = parse_int(head)) {
      if (*addr < 0) throw ParseError(line_no, "negative instruction address");
      p.handle_instruction(trim(line.substr(head.size())), static_cast<uint64_t>(*addr),
                           line_no);
    } else {
      throw ParseError(line_no, "unrecognized line: " + std::string(head));
    }
  }
  if (!p.have_program) throw ParseError(0, "document contains no program");
  if (!p.done) throw ParseError(static_cast<int>(lines.size()), "missing end");
  for (auto& f : p.prog.functions) f.rebuild_string_table();
  auto issues = validate(p.prog);
  if (!issues.empty()) {
    throw ParseError(0, issues.front().where + ": " + issues.front().message);
  }
  return std::move(p.prog);
}

std::string serialize_listing(const Program& p) {
  std::string out = "program " + p.id;
  if (!p.author.empty()) out += " author=" + p.author;
  if (!p.meta.compiler.empty()) out += " compiler=" + p.meta.compiler;
  if (!p.meta.source.empty()) out += " source=" + p.meta.source;
  if (!p.meta.transforms.empty()) out += " transforms=" + join(p.meta.transforms, ",");
  out += "\n";
  for (const auto& f : p.functions) {
    out += "function " + f.name + "\n";
    for (const auto& b : f.blocks) {
      out += "block " + b.id + "\n";
      for (const auto& ins : b.instructions) {
        out += "  " + std::to_string(ins.addr) + " " + ins.mnemonic;
        for (size_t i = 0; i < ins.operands.size(); ++i) {
          out += i == 0 ? " " : ", ";
          out += ins.operands[i].to_string();
        }
        out += "\n";
      }
    }
    for (const auto& b : f.blocks) {
      for (const auto& e : b.successors) {
        out += "edge " + b.id + " " + e.target + " " + edge_label_name(e.label) + "\n";
      }
    }
  }
  out += "end\n";
  return out;
}

Program load_listing_file(const std::string& path) {
  return parse_listing(read_file(path));
}

void save_listing_file(const std::string& path, const Program& p) {
  write_file(path, serialize_listing(p));
}

}  // namespace stylo

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/store.hpp"

#include "stylo/util.hpp"

namespace stylo {

int FeatureStore::subject_index(std::string_view id) const {
  for (size_t i = 0; i < subjects.size(); ++i) {
    if (subjects[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

void FeatureStore::add(SubjectInfo info, FeatureVector vec) {
  if (subject_index(info.id) >= 0) {
    throw StoreError("store: duplicate subject id: " + info.id);
  }
  vec.subject = info.id;
  subjects.push_back(std::move(info));
  vectors.push_back(std::move(vec));
}

std::string FeatureStore::serialize() const {
  std::string out = std::string(kVersionLine) + "\n";
  for (const auto& s : subjects) {
    out += "!subject\t" + s.id + "\t" + s.kind + "\t" +
           (s.author.empty() ? "-" : s.author) + "\t" +
           (s.provenance.empty() ? "-" : s.provenance) + "\n";
  }
  for (const auto& v : vectors) out += dump_vector(v);
  return out;
}

void FeatureStore::save_file(const std::string& path) const {
  write_file(path, serialize());
}

FeatureStore FeatureStore::parse(std::string_view text, LoadStats* stats) {
  LoadStats local;
  LoadStats& st = stats ? *stats : local;
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != kVersionLine) {
    throw StoreError("store: missing or mismatched version header");
  }
  FeatureStore store;
  std::map<std::string, size_t> index;

  auto ensure_subject = [&](const std::string& id, SubjectInfo info) -> size_t {
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    size_t pos = store.subjects.size();
    store.subjects.push_back(std::move(info));
    FeatureVector v;
    v.subject = id;
    store.vectors.push_back(std::move(v));
    index[id] = pos;
    return pos;
  };

  for (size_t li = 1; li < lines.size(); ++li) {
    std::string_view line = lines[li];
    if (trim(line).empty() || line.starts_with("#")) continue;
    auto bad = [&](const std::string& why) {
      st.skipped_records++;
      st.issues.push_back("line " + std::to_string(li + 1) + ": " + why);
    };
    if (line.starts_with("!subject")) {
      auto cols = split(line, '\t');
      if (cols.size() != 5) {
        bad("subject index line needs 5 columns");
        continue;
      }
      SubjectInfo info;
      info.id = std::string(cols[1]);
      info.kind = std::string(cols[2]);
      info.author = cols[3] == "-" ? "" : std::string(cols[3]);
      info.provenance = cols[4] == "-" ? "" : std::string(cols[4]);
      if (info.id.empty()) {
        bad("empty subject id");
        continue;
      }
      ensure_subject(info.id, std::move(info));
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 4) {
      bad("feature record needs 4 columns");
      continue;
    }
    FeatureFamily fam;
    if (!family_from_name(cols[1], fam)) {
      bad("unknown feature family: " + std::string(cols[1]));
      continue;
    }
    auto count = parse_int(cols[3]);
    if (!count || *count <= 0) {
      bad("bad count: " + std::string(cols[3]));
      continue;
    }
    std::string id(cols[0]);
    if (id.empty()) {
      bad("empty subject id in record");
      continue;
    }
    size_t pos = ensure_subject(id, SubjectInfo{id, "program", "", ""});
    store.vectors[pos].add({fam, percent_unescape(cols[2])}, *count);
  }
  return store;
}

FeatureStore FeatureStore::load_file(const std::string& path, LoadStats* stats) {
  return parse(read_file(path), stats);
}

std::map<std::string, std::string> FeatureStore::author_by_subject() const {
  std::map<std::string, std::string> out;
  for (const auto& s : subjects) {
    if (!s.author.empty()) out[s.id] = s.author;
  }
  return out;
}

}  // namespace stylo

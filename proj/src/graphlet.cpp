// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/graphlet.hpp"

#include <algorithm>
#include <array>

namespace stylo {

void Digraph::init(int nodes) {
  n = nodes;
  out.assign(static_cast<size_t>(nodes), {});
  und.assign(static_cast<size_t>(nodes), {});
}

static void sorted_insert(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void Digraph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= n || v >= n) return;
  sorted_insert(out[static_cast<size_t>(u)], v);
  sorted_insert(und[static_cast<size_t>(u)], v);
  sorted_insert(und[static_cast<size_t>(v)], u);
}

bool Digraph::has_edge(int u, int v) const {
  const auto& a = out[static_cast<size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

uint32_t pack_adjacency(const Digraph& g, const int* nodes, int k) {
  uint32_t bits = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && g.has_edge(nodes[i], nodes[j])) bits |= 1u << (i * k + j);
    }
  }
  return bits;
}

namespace {

const std::vector<std::array<int, 5>>& permutations_of(int k) {
  static std::vector<std::array<int, 5>> tables[6];
  auto& table = tables[k];
  if (table.empty()) {
    std::array<int, 5> p{0, 1, 2, 3, 4};
    std::vector<int> idx(p.begin(), p.begin() + k);
    do {
      std::array<int, 5> row{0, 0, 0, 0, 0};
      std::copy(idx.begin(), idx.end(), row.begin());
      table.push_back(row);
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return table;
}

}  // namespace

uint32_t canonical_code(uint32_t packed, int k) {
  uint32_t best = ~0u;
  for (const auto& perm : permutations_of(k)) {
    uint32_t code = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        if (packed & (1u << (i * k + j))) code |= 1u << (perm[i] * k + perm[j]);
      }
    }
    best = std::min(best, code);
  }
  return best;
}

std::string graphlet_descriptor(uint32_t code, int k) {
  return "g" + std::to_string(k) + ":" + std::to_string(code);
}

namespace {

// ESU after Wernicke: each connected induced k-subset is produced exactly
// once, rooted at its minimum node.
struct EsuState {
  const Digraph& g;
  int k;
  const std::function<void(const int*, int)>& fn;
  std::vector<int> sub;
  std::vector<char> in_sub;
  std::vector<char> in_hood;  // in subgraph's exclusive neighborhood (or subgraph)

  EsuState(const Digraph& g_, int k_, const std::function<void(const int*, int)>& fn_)
      : g(g_), k(k_), fn(fn_),
        in_sub(static_cast<size_t>(g_.n), 0),
        in_hood(static_cast<size_t>(g_.n), 0) {}

  void extend(std::vector<int>& ext, int root) {
    if (static_cast<int>(sub.size()) == k) {
      fn(sub.data(), k);
      return;
    }
    while (!ext.empty()) {
      int w = ext.back();
      ext.pop_back();
      // Extension set grows by exclusive neighbors of w beyond the root.
      std::vector<int> next_ext = ext;
      std::vector<int> marked;
      for (int u : g.und[static_cast<size_t>(w)]) {
        if (u > root && !in_sub[static_cast<size_t>(u)] && !in_hood[static_cast<size_t>(u)]) {
          next_ext.push_back(u);
          in_hood[static_cast<size_t>(u)] = 1;
          marked.push_back(u);
        }
      }
      sub.push_back(w);
      in_sub[static_cast<size_t>(w)] = 1;
      extend(next_ext, root);
      in_sub[static_cast<size_t>(w)] = 0;
      sub.pop_back();
      for (int u : marked) in_hood[static_cast<size_t>(u)] = 0;
    }
  }
};

}  // namespace

void for_each_connected_subset(const Digraph& g, int k,
                               const std::function<void(const int*, int)>& fn) {
  if (k < 1 || k > g.n) return;
  for (int v = 0; v < g.n; ++v) {
    EsuState st(g, k, fn);
    st.sub.push_back(v);
    st.in_sub[static_cast<size_t>(v)] = 1;
    st.in_hood[static_cast<size_t>(v)] = 1;
    std::vector<int> ext;
    std::vector<int> marked;
    for (int u : g.und[static_cast<size_t>(v)]) {
      if (u > v) {
        ext.push_back(u);
        st.in_hood[static_cast<size_t>(u)] = 1;
      }
    }
    st.extend(ext, v);
  }
}

Digraph cfg_digraph(const Function& f) {
  Digraph g(static_cast<int>(f.blocks.size()));
  for (size_t i = 0; i < f.blocks.size(); ++i) {
    for (const auto& e : f.blocks[i].successors) {
      int j = f.block_index(e.target);
      if (j >= 0) g.add_edge(static_cast<int>(i), j);
    }
  }
  return g;
}

}  // namespace stylo

// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Graphlet support: connected induced k-subgraph enumeration over a CFG
// (k in 2..5) and exact canonical isomorphism codes. Canonicalization is
// exhaustive over node orders (at most 5! = 120), so equal codes mean
// isomorphic, full stop. Edge labels and self-loops are ignored in the
// graphlet view; connectivity is judged on the underlying undirected graph.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stylo/prog_model.hpp"

namespace stylo {

struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> out;  // sorted, deduplicated, no self-loops
  std::vector<std::vector<int>> und;  // undirected neighborhoods, sorted

  explicit Digraph(int nodes = 0) { init(nodes); }
  void init(int nodes);
  void add_edge(int u, int v);  // ignores self-loops and duplicates
  bool has_edge(int u, int v) const;
};

// Adjacency of the induced subgraph on nodes[0..k), packed row-major:
// bit i*k+j set iff nodes[i] -> nodes[j].
uint32_t pack_adjacency(const Digraph& g, const int* nodes, int k);

// Minimum packed adjacency over all k! relabelings. k in 1..5.
uint32_t canonical_code(uint32_t packed, int k);

std::string graphlet_descriptor(uint32_t code, int k);

// Invokes fn once for every k-subset of nodes whose induced subgraph is
// connected in the undirected sense (ESU enumeration, each subset once).
void for_each_connected_subset(const Digraph& g, int k,
                               const std::function<void(const int* nodes, int k)>& fn);

// CFG as a digraph: node i = f.blocks[i], arcs from successor edges with
// labels dropped and parallel edges merged.
Digraph cfg_digraph(const Function& f);

}  // namespace stylo

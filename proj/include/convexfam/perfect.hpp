// Copyright 2026 The convexfam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Clique and chromatic numbers, perfection tests, partitionable graphs,
// Meyniel graphs and critical edges.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexfam/bits.hpp"
#include "convexfam/cycles.hpp"
#include "convexfam/graph.hpp"
#include "convexfam/poset.hpp"

namespace convexfam {

/// Largest vertex count accepted by the exponential routines below.
inline constexpr int kExactColoringCap = 40;
inline constexpr int kBruteforcePerfectCap = 16;

namespace detail {

inline void max_clique_rec(const std::vector<Mask>& adj, int size, Mask cand, int& best) {
  if (cand == 0) {
    best = std::max(best, size);
    return;
  }
  if (size + popcount(cand) <= best) return;
  // Pivot on the candidate with most neighbours among candidates.
  int pivot = lowest(cand);
  int pivot_deg = -1;
  for_each_bit(cand, [&](int u) {
    int d = popcount(adj[u] & cand);
    if (d > pivot_deg) {
      pivot_deg = d;
      pivot = u;
    }
  });
  Mask branch = cand & ~adj[pivot];
  while (branch) {
    int v = lowest(branch);
    branch &= branch - 1;
    max_clique_rec(adj, size + 1, cand & adj[v], best);
    cand &= ~bit(v);
    if (size + popcount(cand) <= best) return;
  }
}

inline bool colorable_rec(const std::vector<Mask>& adj, const std::vector<int>& order,
                          std::size_t pos, std::vector<Mask>& classes, int k, int used) {
  if (pos == order.size()) return true;
  int v = order[pos];
  for (int c = 0; c < std::min(k, used + 1); ++c) {
    if (adj[v] & classes[c]) continue;
    classes[c] |= bit(v);
    bool ok = colorable_rec(adj, order, pos + 1, classes, k, std::max(used, c + 1));
    classes[c] &= ~bit(v);
    if (ok) return true;
  }
  return false;
}

inline void check_cap(Mask within, int cap, const char* what) {
  if (popcount(within) > cap)
    throw CapExceeded(std::string(what) + ": more than " + std::to_string(cap) + " vertices");
}

}  // namespace detail

inline int clique_number_on(const std::vector<Mask>& adj, Mask within) {
  detail::check_cap(within, kExactColoringCap, "clique_number");
  int best = 0;
  detail::max_clique_rec(adj, 0, within, best);
  return best;
}

inline bool is_k_colorable_on(const std::vector<Mask>& adj, Mask within, int k) {
  if (within == 0) return true;
  if (k <= 0) return false;
  // Highest degree first, a cheap and effective static order.
  std::vector<int> order;
  for_each_bit(within, [&](int v) { order.push_back(v); });
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(adj[a] & within) > popcount(adj[b] & within);
  });
  std::vector<Mask> classes(static_cast<std::size_t>(k), 0);
  return detail::colorable_rec(adj, order, 0, classes, k, 0);
}

inline int chromatic_number_on(const std::vector<Mask>& adj, Mask within) {
  detail::check_cap(within, kExactColoringCap, "chromatic_number");
  int k = clique_number_on(adj, within);
  while (!is_k_colorable_on(adj, within, k)) ++k;
  return k;
}

inline int clique_number(const Graph& g) { return clique_number_on(g.adjacency(), g.vertex_mask()); }
inline int chromatic_number(const Graph& g) {
  return chromatic_number_on(g.adjacency(), g.vertex_mask());
}

/// χ = ω on every induced subgraph, checked subset by subset.
inline bool is_perfect_bruteforce(const Graph& g) {
  detail::check_cap(g.vertex_mask(), kBruteforcePerfectCap, "is_perfect_bruteforce");
  const auto& adj = g.adjacency();
  for (Mask s = g.vertex_mask();; s = (s - 1) & g.vertex_mask()) {
    if (chromatic_number_on(adj, s) != clique_number_on(adj, s)) return false;
    if (s == 0) break;
  }
  return true;
}

inline std::vector<Mask> complement_adjacency(const std::vector<Mask>& adj, Mask within) {
  std::vector<Mask> out(adj.size(), 0);
  for_each_bit(within, [&](int v) { out[v] = within & ~adj[v] & ~bit(v); });
  return out;
}

/// No odd hole in the graph or its complement.
inline bool is_perfect_spgt_on(const std::vector<Mask>& adj, Mask within) {
  if (has_odd_hole_on(adj, within)) return false;
  return !has_odd_hole_on(complement_adjacency(adj, within), within);
}

inline bool is_perfect_spgt(const Graph& g) {
  return is_perfect_spgt_on(g.adjacency(), g.vertex_mask());
}

/// χ > ω while every single-vertex deletion has χ = ω.
inline bool is_partitionable(const Graph& g) {
  const auto& adj = g.adjacency();
  Mask all = g.vertex_mask();
  if (chromatic_number_on(adj, all) == clique_number_on(adj, all)) return false;
  bool ok = true;
  for_each_bit(all, [&](int v) {
    Mask s = all & ~bit(v);
    if (ok && chromatic_number_on(adj, s) != clique_number_on(adj, s)) ok = false;
  });
  return ok;
}

/// Every odd cycle of length at least 5 has two or more chords.
inline bool is_meyniel(const Graph& g) {
  const auto& adj = g.adjacency();
  bool violated = for_each_simple_cycle(adj, g.vertex_mask(), [&](const Cycle& c) {
    if (c.size() < 5 || c.size() % 2 == 0) return false;
    Mask on = 0;
    for (int v : c) on |= bit(v);
    int degree_sum = 0;
    for (int v : c) degree_sum += popcount(adj[v] & on);
    int chords = degree_sum / 2 - static_cast<int>(c.size());
    return chords < 2;
  });
  return !violated;
}

/// Edges of a perfect graph whose deletion leaves an imperfect graph.
inline std::vector<VertexPair> critical_edges(const Graph& g) {
  if (!is_perfect_spgt(g)) throw std::invalid_argument("critical_edges: graph is not perfect");
  std::vector<VertexPair> out;
  Mask all_edges = full_mask(g.edge_count());
  for (int k = 0; k < g.edge_count(); ++k) {
    if (!is_perfect_spgt_on(g.spanning_adjacency(all_edges & ~bit(k)), g.vertex_mask()))
      out.push_back(g.edges()[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace convexfam

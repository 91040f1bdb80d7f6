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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convexfam/bits.hpp"
#include "convexfam/poset.hpp"

namespace convexfam {

using VertexPair = std::pair<int, int>;

/// Simple undirected graph on vertices 1..n (n ≤ 64).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n, 0) { check_size(n); }
  Graph(int n, const std::vector<VertexPair>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int n() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  Mask vertex_mask() const { return full_mask(n_); }

  /// Edges as (u, v) with u < v, sorted; position = edge id - 1.
  const std::vector<VertexPair>& edges() const { return edges_; }

  /// 0-based neighbour masks.
  const std::vector<Mask>& adjacency() const { return adj_; }
  Mask neighbors(int v) const { return adj_.at(v - 1); }
  bool adjacent(int u, int v) const { return (adj_.at(u - 1) >> (v - 1)) & 1; }

  void add_edge(int u, int v) {
    if (u < 1 || v < 1 || u > n_ || v > n_)
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") has an endpoint outside 1.." + std::to_string(n_));
    if (u == v) throw std::invalid_argument("loops are not allowed");
    if (u > v) std::swap(u, v);
    if (adjacent(u, v)) return;
    adj_[u - 1] |= bit(v - 1);
    adj_[v - 1] |= bit(u - 1);
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), VertexPair{u, v}), {u, v});
  }

  /// 1-based id of edge {u, v}, or 0 when absent.
  int edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), VertexPair{u, v});
    if (it == edges_.end() || *it != VertexPair{u, v}) return 0;
    return static_cast<int>(it - edges_.begin()) + 1;
  }

  /// Neighbour masks of the spanning subgraph keeping the given edge ids.
  std::vector<Mask> spanning_adjacency(Mask edge_subset) const {
    std::vector<Mask> a(n_, 0);
    for_each_bit(edge_subset, [&](int k) {
      auto [u, v] = edges_[k];
      a[u - 1] |= bit(v - 1);
      a[v - 1] |= bit(u - 1);
    });
    return a;
  }

  Graph spanning_subgraph(Mask edge_subset) const {
    Graph g(n_);
    for_each_bit(edge_subset, [&](int k) { g.add_edge(edges_[k].first, edges_[k].second); });
    return g;
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  static void check_size(int n) {
    if (n < 0 || n > kMaxGroundIds) throw std::invalid_argument("graph size must be in 0..64");
  }

  int n_ = 0;
  std::vector<Mask> adj_;
  std::vector<VertexPair> edges_;
};

enum class Loops { reject, allow };

/// Digraph on 1..n with at most one arc per ordered pair. Loops are only
/// accepted when constructed with Loops::allow (circulants with a generator
/// divisible by n need them).
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n, Loops loops = Loops::reject)
      : n_(n), loops_(loops), out_(n, 0), in_(n, 0) {
    if (n < 0 || n > kMaxGroundIds) throw std::invalid_argument("digraph size must be in 0..64");
  }
  Digraph(int n, const std::vector<VertexPair>& arcs, Loops loops = Loops::reject)
      : Digraph(n, loops) {
    for (auto [u, v] : arcs) add_arc(u, v);
  }

  int n() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int edge_count() const { return arc_count(); }
  Mask vertex_mask() const { return full_mask(n_); }
  const std::vector<VertexPair>& arcs() const { return arcs_; }
  const std::vector<VertexPair>& edges() const { return arcs_; }
  const std::vector<Mask>& out_adjacency() const { return out_; }
  const std::vector<Mask>& in_adjacency() const { return in_; }
  Mask out_neighbors(int v) const { return out_.at(v - 1); }
  Mask in_neighbors(int v) const { return in_.at(v - 1); }
  bool has_arc(int u, int v) const { return (out_.at(u - 1) >> (v - 1)) & 1; }
  bool has_loops() const {
    for (int v = 1; v <= n_; ++v)
      if (has_arc(v, v)) return true;
    return false;
  }

  void add_arc(int u, int v) {
    if (u < 1 || v < 1 || u > n_ || v > n_)
      throw std::invalid_argument("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") has an endpoint outside 1.." + std::to_string(n_));
    if (u == v && loops_ == Loops::reject) throw std::invalid_argument("loops are not allowed");
    if (has_arc(u, v)) return;
    out_[u - 1] |= bit(v - 1);
    in_[v - 1] |= bit(u - 1);
    arcs_.insert(std::lower_bound(arcs_.begin(), arcs_.end(), VertexPair{u, v}), {u, v});
  }

  void remove_arc(int u, int v) {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), VertexPair{u, v});
    if (it == arcs_.end() || *it != VertexPair{u, v})
      throw std::invalid_argument("arc (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") not present");
    arcs_.erase(it);
    out_[u - 1] &= ~bit(v - 1);
    in_[v - 1] &= ~bit(u - 1);
  }

  /// Out-neighbour masks of the spanning subdigraph keeping the given arc ids.
  std::vector<Mask> spanning_out(Mask arc_subset) const {
    std::vector<Mask> a(n_, 0);
    for_each_bit(arc_subset, [&](int k) { a[arcs_[k].first - 1] |= bit(arcs_[k].second - 1); });
    return a;
  }

  Digraph spanning_subgraph(Mask arc_subset) const {
    Digraph d(n_, loops_);
    for_each_bit(arc_subset, [&](int k) { d.add_arc(arcs_[k].first, arcs_[k].second); });
    return d;
  }

  Loops loop_policy() const { return loops_; }

  bool operator==(const Digraph& o) const { return n_ == o.n_ && arcs_ == o.arcs_; }

 private:
  int n_ = 0;
  Loops loops_ = Loops::reject;
  std::vector<Mask> out_, in_;
  std::vector<VertexPair> arcs_;
};

template <>
struct ground_traits<Graph> {
  static constexpr const char* name = "graph";
  static bool allows(Order o) { return o == Order::vertex || o == Order::edge; }
  static PosetShape shape(const Graph& g, Order o) {
    if (o == Order::vertex) return PosetShape::vertex_order(g.n());
    return PosetShape::edge_order(g.n(), g.edge_count());
  }
};

template <>
struct ground_traits<Digraph> {
  static constexpr const char* name = "digraph";
  static bool allows(Order o) { return o == Order::vertex || o == Order::edge; }
  static PosetShape shape(const Digraph& g, Order o) {
    if (o == Order::vertex) return PosetShape::vertex_order(g.n());
    return PosetShape::edge_order(g.n(), g.arc_count());
  }
};

// ---------------------------------------------------------------------------
// Subgraphs

namespace detail {
inline void check_vertex_subset(Mask s, int n) {
  if (!is_subset(s, full_mask(n)))
    throw std::invalid_argument("vertex subset has ids outside 1.." + std::to_string(n));
}
}  // namespace detail

/// Subgraph induced by s, relabeled to 1..|s| in increasing id order.
inline Graph induced_subgraph(const Graph& g, Mask s) {
  detail::check_vertex_subset(s, g.n());
  auto ids = mask_ids(s);
  std::vector<int> pos(g.n() + 1, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i) + 1;
  Graph h(static_cast<int>(ids.size()));
  for (auto [u, v] : g.edges())
    if (pos[u] && pos[v]) h.add_edge(pos[u], pos[v]);
  return h;
}

inline Digraph induced_subgraph(const Digraph& g, Mask s) {
  detail::check_vertex_subset(s, g.n());
  auto ids = mask_ids(s);
  std::vector<int> pos(g.n() + 1, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i) + 1;
  Digraph h(static_cast<int>(ids.size()), g.loop_policy());
  for (auto [u, v] : g.arcs())
    if (pos[u] && pos[v]) h.add_arc(pos[u], pos[v]);
  return h;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<int>& ids) {
  return induced_subgraph(g, mask_from_ids(ids, g.n()));
}
inline Digraph induced_subgraph(const Digraph& g, const std::vector<int>& ids) {
  return induced_subgraph(g, mask_from_ids(ids, g.n()));
}

// ---------------------------------------------------------------------------
// Connectivity on masks (adjacency indexed 0-based, restricted to `within`)

/// Vertices reachable from `start` (a single-bit mask) inside `within`.
inline Mask reach(const std::vector<Mask>& adj, Mask within, Mask start) {
  Mask seen = start, frontier = start;
  while (frontier) {
    Mask next = 0;
    for_each_bit(frontier, [&](int k) { next |= adj[k]; });
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

/// Connected on `within`; the empty and one-vertex sets count as connected.
inline bool is_connected_on(const std::vector<Mask>& adj, Mask within) {
  if (popcount(within) <= 1) return true;
  return reach(adj, within, within & (~within + 1)) == within;
}

inline bool is_strongly_connected_on(const std::vector<Mask>& out, const std::vector<Mask>& in,
                                     Mask within) {
  if (popcount(within) <= 1) return true;
  Mask root = within & (~within + 1);
  return reach(out, within, root) == within && reach(in, within, root) == within;
}

inline std::vector<Mask> reverse_adjacency(const std::vector<Mask>& out) {
  std::vector<Mask> in(out.size(), 0);
  for (std::size_t u = 0; u < out.size(); ++u)
    for_each_bit(out[u], [&](int v) { in[v] |= bit(static_cast<int>(u)); });
  return in;
}

inline bool is_connected(const Graph& g) { return is_connected_on(g.adjacency(), g.vertex_mask()); }

inline bool is_strongly_connected(const Digraph& d) {
  return is_strongly_connected_on(d.out_adjacency(), d.in_adjacency(), d.vertex_mask());
}

// ---------------------------------------------------------------------------
// Constructions

inline Graph complement(const Graph& g) {
  Graph h(g.n());
  for (int u = 1; u <= g.n(); ++u)
    for (int v = u + 1; v <= g.n(); ++v)
      if (!g.adjacent(u, v)) h.add_edge(u, v);
  return h;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g = path_graph(n);
  g.add_edge(n, 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

/// Parts {1..a} and {a+1..a+b}.
inline Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int u = 1; u <= a; ++u)
    for (int v = a + 1; v <= a + b; ++v) g.add_edge(u, v);
  return g;
}

/// Vertices are the edges of g (by edge id); adjacent when they share an end.
inline Graph line_graph(const Graph& g) {
  const auto& e = g.edges();
  Graph h(g.edge_count());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (e[i].first == e[j].first || e[i].first == e[j].second || e[i].second == e[j].first ||
          e[i].second == e[j].second)
        h.add_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
  return h;
}

/// Disjoint union; h is relabeled to g.n()+1..g.n()+h.n().
inline Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.n() + h.n());
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(u + g.n(), v + g.n());
  return out;
}

/// Skeleton of the 3-cube: vertices are 3-bit words + 1, adjacent at Hamming distance 1.
inline Graph cube() {
  Graph g(8);
  for (int x = 0; x < 8; ++x)
    for (int b = 0; b < 3; ++b)
      if (int y = x ^ (1 << b); x < y) g.add_edge(x + 1, y + 1);
  return g;
}

/// A 10-cycle (1..10, in order) and a 5-cycle (11..15, in order) where the
/// c-th 5-cycle vertex is joined to the opposite 10-cycle vertices c and c+5.
inline Graph wrochna() {
  Graph g(15);
  for (int i = 1; i <= 10; ++i) g.add_edge(i, i % 10 + 1);
  for (int c = 1; c <= 5; ++c) g.add_edge(10 + c, 10 + c % 5 + 1);
  for (int c = 1; c <= 5; ++c) {
    g.add_edge(10 + c, c);
    g.add_edge(10 + c, c + 5);
  }
  return g;
}

/// Power of a cycle: i ~ j iff their cyclic distance is at most k.
inline Graph cycle_power(int n, int k) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int s = 1; s <= k; ++s)
      if (int j = (i + s) % n; j != i) g.add_edge(i + 1, j + 1);
  return g;
}

/// The 5-cycle 1..5 plus the chord (1,3); the chord is its unique critical edge.
inline Graph house_with_chord() {
  return Graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 3}});
}

/// Icosahedron on the 12 points (0,±1,±φ) and cyclic shifts; adjacent at distance 2.
inline Graph icosahedron() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<std::array<double, 3>> p;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      p.push_back({0, s1 * 1.0, s2 * phi});
      p.push_back({s1 * 1.0, s2 * phi, 0});
      p.push_back({s2 * phi, 0, s1 * 1.0});
    }
  Graph g(12);
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) {
      double d2 = 0;
      for (int k = 0; k < 3; ++k) d2 += (p[i][k] - p[j][k]) * (p[i][k] - p[j][k]);
      if (std::abs(d2 - 4.0) < 1e-9) g.add_edge(i + 1, j + 1);
    }
  return g;
}

/// Icosidodecahedron as the medial graph of the icosahedron: one vertex per
/// icosahedron edge, two adjacent when the edges bound a common triangle.
inline Graph icosidodecahedron() {
  Graph ico = icosahedron();
  const auto& e = ico.edges();
  Graph g(static_cast<int>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      auto [a, b] = e[i];
      auto [c, d] = e[j];
      int shared = 0, x = 0, y = 0;
      if (a == c) shared = a, x = b, y = d;
      else if (a == d) shared = a, x = b, y = c;
      else if (b == c) shared = b, x = a, y = d;
      else if (b == d) shared = b, x = a, y = c;
      if (shared && ico.adjacent(x, y))
        g.add_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  return g;
}

inline Digraph directed_cycle(int n) {
  if (n < 2) throw std::invalid_argument("directed cycle needs at least 2 vertices");
  Digraph d(n);
  for (int v = 1; v <= n; ++v) d.add_arc(v, v % n + 1);
  return d;
}

inline Digraph directed_path(int n) {
  Digraph d(n);
  for (int v = 1; v < n; ++v) d.add_arc(v, v + 1);
  return d;
}

/// Directed cycles 1→2→…→a→1 and 1→a+1→…→a+b-1→1 sharing vertex 1.
inline Digraph cycles_sharing_vertex(int a, int b) {
  Digraph d(a + b - 1);
  for (int v = 1; v < a; ++v) d.add_arc(v, v + 1);
  d.add_arc(a, 1);
  int prev = 1;
  for (int v = a + 1; v <= a + b - 1; ++v) {
    d.add_arc(prev, v);
    prev = v;
  }
  d.add_arc(prev, 1);
  return d;
}

}  // namespace convexfam

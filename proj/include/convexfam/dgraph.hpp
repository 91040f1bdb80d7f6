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

// d-graphs: complete graphs whose edges are coloured by colours 1..d.
// Π/Δ detection, complementary connectivity (CC), the CIS property,
// substitution, colour projection and the fixtures built from them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "convexfam/bits.hpp"
#include "convexfam/graph.hpp"
#include "convexfam/poset.hpp"

namespace convexfam {

/// (u, v, colour) with u < v, 1-based.
using ColoredEdge = std::tuple<int, int, int>;

class DGraph {
 public:
  DGraph() = default;

  /// Every pair gets colour `fill`.
  DGraph(int n, int d, int fill = 1) : n_(n), d_(d) {
    if (n < 0 || n > kMaxGroundIds) throw std::invalid_argument("d-graph size must be in 0..64");
    if (d < 1) throw std::invalid_argument("d-graph needs at least one colour");
    check_color(fill);
    color_.assign(static_cast<std::size_t>(n) * n, 0);
    comp_.assign(static_cast<std::size_t>(d), std::vector<Mask>(static_cast<std::size_t>(n), 0));
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) set_color(u, v, fill);
  }

  /// Requires every unordered pair exactly once.
  static DGraph from_edges(int n, int d, const std::vector<ColoredEdge>& edges) {
    if (n < 0 || n > kMaxGroundIds) throw std::invalid_argument("d-graph size must be in 0..64");
    std::size_t pairs = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    if (edges.size() != pairs)
      throw std::invalid_argument("a complete colouring of " + std::to_string(n) +
                                  " vertices needs " + std::to_string(pairs) + " edges, got " +
                                  std::to_string(edges.size()));
    DGraph g(n, d, 1);
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    for (auto [u, v, c] : edges) {
      g.check_pair(u, v);
      auto& s = seen[g.slot(std::min(u, v), std::max(u, v))];
      if (s)
        throw std::invalid_argument("pair (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") coloured twice");
      s = 1;
      g.set_color(u, v, c);
    }
    return g;
  }

  int n() const { return n_; }
  int d() const { return d_; }
  Mask vertex_mask() const { return full_mask(n_); }

  int color(int u, int v) const {
    check_pair(u, v);
    return color_[slot(u, v)];
  }

  void set_color(int u, int v, int c) {
    check_pair(u, v);
    check_color(c);
    int old = color_[slot(u, v)];
    if (old) {
      comp_[old - 1][u - 1] &= ~bit(v - 1);
      comp_[old - 1][v - 1] &= ~bit(u - 1);
    }
    color_[slot(u, v)] = color_[slot(v, u)] = static_cast<std::uint8_t>(c);
    comp_[c - 1][u - 1] |= bit(v - 1);
    comp_[c - 1][v - 1] |= bit(u - 1);
  }

  /// Adjacency masks (0-based) of the chromatic component of colour c.
  const std::vector<Mask>& component(int c) const {
    check_color(c);
    return comp_[c - 1];
  }

  std::vector<ColoredEdge> edges() const {
    std::vector<ColoredEdge> out;
    for (int u = 1; u <= n_; ++u)
      for (int v = u + 1; v <= n_; ++v) out.emplace_back(u, v, color(u, v));
    return out;
  }

  /// Colours with at least one edge.
  int used_colors() const {
    int k = 0;
    for (const auto& c : comp_)
      k += std::any_of(c.begin(), c.end(), [](Mask m) { return m != 0; });
    return k;
  }

  bool operator==(const DGraph& o) const {
    return n_ == o.n_ && d_ == o.d_ && color_ == o.color_;
  }

 private:
  std::size_t slot(int u, int v) const {
    return static_cast<std::size_t>(u - 1) * n_ + (v - 1);
  }
  void check_pair(int u, int v) const {
    if (u < 1 || v < 1 || u > n_ || v > n_ || u == v)
      throw std::invalid_argument("pair (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") is not an edge of K_" + std::to_string(n_));
  }
  void check_color(int c) const {
    if (c < 1 || c > d_)
      throw std::invalid_argument("colour " + std::to_string(c) + " outside 1.." +
                                  std::to_string(d_));
  }

  int n_ = 0;
  int d_ = 1;
  std::vector<std::uint8_t> color_;
  std::vector<std::vector<Mask>> comp_;
};

template <>
struct ground_traits<DGraph> {
  static constexpr const char* name = "d-graph";
  static bool allows(Order o) { return o == Order::vertex; }
  static PosetShape shape(const DGraph& g, Order) { return PosetShape::vertex_order(g.n()); }
};

/// Induced colouring on S, relabelled to 1..|S| in increasing id order.
inline DGraph sub_dgraph(const DGraph& g, Mask s) {
  detail::check_vertex_subset(s, g.n());
  auto ids = mask_ids(s);
  DGraph h(static_cast<int>(ids.size()), g.d());
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      h.set_color(static_cast<int>(i) + 1, static_cast<int>(j) + 1, g.color(ids[i], ids[j]));
  return h;
}

inline DGraph sub_dgraph(const DGraph& g, const std::vector<int>& ids) {
  return sub_dgraph(g, mask_from_ids(ids, g.n()));
}

// ---------------------------------------------------------------------------
// Π and Δ

/// Four vertices inside `within` spanning a Π: two colours, each a P4.
inline std::optional<Mask> find_pi_on(const DGraph& g, Mask within) {
  auto ids = mask_ids(within);
  const std::size_t k = ids.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c)
        for (std::size_t e = c + 1; e < k; ++e) {
          int v[4] = {ids[a], ids[b], ids[c], ids[e]};
          int deg[2][4] = {}, first = 0, second = 0;
          bool ok = true;
          for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j) {
              int cc = g.color(v[i], v[j]);
              if (!first || cc == first) {
                first = cc;
                ++deg[0][i];
                ++deg[0][j];
              } else if (!second || cc == second) {
                second = cc;
                ++deg[1][i];
                ++deg[1][j];
              } else {
                ok = false;
              }
            }
          if (!ok || !second) continue;
          for (auto& d : deg) {
            int ones = 0, twos = 0;
            for (int x : d) {
              ones += x == 1;
              twos += x == 2;
            }
            ok = ok && ones == 2 && twos == 2;
          }
          if (ok) return bit(v[0] - 1) | bit(v[1] - 1) | bit(v[2] - 1) | bit(v[3] - 1);
        }
  return std::nullopt;
}

/// Three vertices inside `within` forming a triangle with three colours.
inline std::optional<Mask> find_delta_on(const DGraph& g, Mask within) {
  auto ids = mask_ids(within);
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      for (std::size_t c = b + 1; c < ids.size(); ++c) {
        int x = g.color(ids[a], ids[b]), y = g.color(ids[b], ids[c]),
            z = g.color(ids[a], ids[c]);
        if (x != y && y != z && x != z)
          return bit(ids[a] - 1) | bit(ids[b] - 1) | bit(ids[c] - 1);
      }
  return std::nullopt;
}

inline std::optional<Mask> contains_pi(const DGraph& g) { return find_pi_on(g, g.vertex_mask()); }
inline std::optional<Mask> contains_delta(const DGraph& g) {
  return find_delta_on(g, g.vertex_mask());
}

/// The element is itself a Π or a Δ.
inline bool is_pi_or_delta_on(const DGraph& g, Mask s) {
  if (popcount(s) == 4) return find_pi_on(g, s).has_value();
  if (popcount(s) == 3) return find_delta_on(g, s).has_value();
  return false;
}

// ---------------------------------------------------------------------------
// Complementary connectivity

/// Every colour's complement is connected on S; fewer than two vertices
/// are not CC by convention.
inline bool is_cc_on(const DGraph& g, Mask s) {
  if (popcount(s) < 2) return false;
  std::vector<Mask> co(static_cast<std::size_t>(g.n()), 0);
  for (int c = 1; c <= g.d(); ++c) {
    const auto& comp = g.component(c);
    for_each_bit(s, [&](int v) { co[v] = s & ~comp[v] & ~bit(v); });
    if (!is_connected_on(co, s)) return false;
  }
  return true;
}

inline bool is_cc(const DGraph& g) { return is_cc_on(g, g.vertex_mask()); }

// ---------------------------------------------------------------------------
// CIS

/// One maximal independent set per colour; the CIS property asks that the
/// sets always share a vertex.
struct Selection {
  std::vector<Mask> sets;  // sets[c-1] is maximal independent in colour c

  Mask intersection(Mask all) const {
    Mask s = all;
    for (Mask m : sets) s &= m;
    return s;
  }
};

struct CisResult {
  bool cis = true;
  std::optional<Selection> witness;

  explicit operator bool() const { return cis; }
};

inline constexpr std::uint64_t kMaxIndependentSets = 200'000;

/// Maximal independent sets of the graph `adj` restricted to s
/// (Bron–Kerbosch with pivoting on the complement).
inline std::vector<Mask> maximal_independent_sets(const std::vector<Mask>& adj, Mask s,
                                                  std::uint64_t cap = kMaxIndependentSets) {
  std::vector<Mask> out;
  if (s == 0) {
    out.push_back(0);
    return out;
  }
  // Neighbourhood in the complement restricted to s.
  auto co = [&](int v) { return s & ~adj[v] & ~bit(v); };
  std::function<void(Mask, Mask, Mask)> rec = [&](Mask r, Mask p, Mask x) {
    if (p == 0 && x == 0) {
      if (out.size() >= cap) throw CapExceeded("too many maximal independent sets");
      out.push_back(r);
      return;
    }
    int pivot = lowest(p | x);
    int best = -1;
    for_each_bit(p | x, [&](int u) {
      int deg = popcount(co(u) & p);
      if (deg > best) {
        best = deg;
        pivot = u;
      }
    });
    Mask branch = p & ~co(pivot);
    for_each_bit(branch, [&](int v) {
      rec(r | bit(v), p & co(v), x & co(v));
      p &= ~bit(v);
      x |= bit(v);
    });
  };
  rec(0, s, 0);
  std::sort(out.begin(), out.end(), mask_lex_less);
  return out;
}

/// CIS test on the sub-d-graph induced by s. The null d-graph counts as CIS.
inline CisResult is_cis_on(const DGraph& g, Mask s) {
  CisResult res;
  if (s == 0) return res;
  std::vector<std::vector<Mask>> mis;
  for (int c = 1; c <= g.d(); ++c) mis.push_back(maximal_independent_sets(g.component(c), s));
  // Colours with fewer choices first; the running intersection prunes early.
  std::vector<int> order(static_cast<std::size_t>(g.d()));
  for (int c = 0; c < g.d(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mis[a].size() < mis[b].size(); });
  std::vector<Mask> chosen(static_cast<std::size_t>(g.d()), 0);
  std::function<bool(std::size_t, Mask)> dfs = [&](std::size_t pos, Mask inter) {
    if (inter == 0) {
      for (std::size_t q = pos; q < order.size(); ++q) chosen[order[q]] = mis[order[q]].front();
      return true;
    }
    if (pos == order.size()) return false;
    for (Mask m : mis[order[pos]]) {
      chosen[order[pos]] = m;
      if (dfs(pos + 1, inter & m)) return true;
    }
    return false;
  };
  if (dfs(0, s)) {
    res.cis = false;
    res.witness = Selection{chosen};
  }
  return res;
}

inline CisResult is_cis(const DGraph& g) { return is_cis_on(g, g.vertex_mask()); }

// ---------------------------------------------------------------------------
// Substitution and projection

/// g1(v -> g2): v is removed, the other vertices of g1 keep their order as
/// 1..n1-1, and the vertices of g2 follow as n1..n1+n2-1. Each new vertex
/// meets w with the colour that v had towards w.
inline DGraph substitute(const DGraph& g1, int v, const DGraph& g2) {
  if (v < 1 || v > g1.n())
    throw std::invalid_argument("substitute: vertex " + std::to_string(v) + " not in 1.." +
                                std::to_string(g1.n()));
  int n1 = g1.n() - 1;
  DGraph out(n1 + g2.n(), std::max(g1.d(), g2.d()));
  std::vector<int> old_id;
  for (int w = 1; w <= g1.n(); ++w)
    if (w != v) old_id.push_back(w);
  for (int a = 0; a < n1; ++a)
    for (int b = a + 1; b < n1; ++b) out.set_color(a + 1, b + 1, g1.color(old_id[a], old_id[b]));
  for (int x = 1; x <= g2.n(); ++x) {
    for (int a = 0; a < n1; ++a) out.set_color(a + 1, n1 + x, g1.color(old_id[a], v));
    for (int y = x + 1; y <= g2.n(); ++y) out.set_color(n1 + x, n1 + y, g2.color(x, y));
  }
  return out;
}

/// Merges colours: colour c becomes the 1-based index of the block holding it.
inline DGraph project(const DGraph& g, const std::vector<std::vector<int>>& blocks) {
  if (blocks.size() < 2 || static_cast<int>(blocks.size()) > g.d())
    throw std::invalid_argument("projection needs between 2 and d blocks");
  std::vector<int> to(static_cast<std::size_t>(g.d()) + 1, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("projection block is empty");
    for (int c : blocks[b]) {
      if (c < 1 || c > g.d() || to[c])
        throw std::invalid_argument("projection blocks must partition the colours 1..d");
      to[c] = static_cast<int>(b) + 1;
    }
  }
  for (int c = 1; c <= g.d(); ++c)
    if (!to[c]) throw std::invalid_argument("projection blocks must cover every colour");
  DGraph out(g.n(), static_cast<int>(blocks.size()));
  for (auto [u, v, c] : g.edges()) out.set_color(u, v, to[c]);
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures

/// Colour 1: 12, 23, 34. Colour 2: 24, 41, 13.
inline DGraph pi_dgraph(int d = 2) {
  DGraph g(4, d, 2);
  g.set_color(1, 2, 1);
  g.set_color(2, 3, 1);
  g.set_color(3, 4, 1);
  return g;
}

/// Colours 1, 2, 3 on 12, 23, 31 (or the given three colours).
inline DGraph delta_dgraph(int d = 3, int c12 = 1, int c23 = 2, int c31 = 3) {
  DGraph g(3, d, c12);
  g.set_color(2, 3, c23);
  g.set_color(3, 1, c31);
  return g;
}

/// Bull: colour 1 on 12, 23, 34, 25, 35; colour 2 elsewhere.
inline DGraph bull_dgraph(int d = 2) {
  DGraph g(5, d, 2);
  for (auto [u, v] : std::vector<VertexPair>{{1, 2}, {2, 3}, {3, 4}, {2, 5}, {3, 5}})
    g.set_color(u, v, 1);
  return g;
}

/// Π with v4 replaced by a second Π (vertices 4..7 are v1'..v4').
inline DGraph pi_sub_pi() { return substitute(pi_dgraph(), 4, pi_dgraph()); }

/// Bull with v5 replaced by Π (vertices 5..8 are v1'..v4').
inline DGraph bull_sub_pi() { return substitute(bull_dgraph(), 5, pi_dgraph()); }

/// Bull with v5 replaced by a Δ whose edges 5-6, 6-7, 7-5 get the given colours.
inline DGraph bull_sub_delta(int c56 = 3, int c67 = 4, int c75 = 5) {
  int d = std::max({2, c56, c67, c75});
  return substitute(bull_dgraph(d), 5, delta_dgraph(d, c56, c67, c75));
}

/// Π plus a vertex joined to all four by colour `apex`.
inline DGraph pi_with_apex(int apex = 1, int d = 2) {
  return substitute(DGraph(2, d, apex), 2, pi_dgraph(d));
}

/// 2-graph of the line graph of K_{n,n}: cell (i,j) is vertex (i-1)n+j;
/// colour 1 when two cells share a row or a column.
inline DGraph line_knn_2graph(int n) {
  DGraph g(n * n, 2, 2);
  for (int a = 0; a < n * n; ++a)
    for (int b = a + 1; b < n * n; ++b)
      if (a / n == b / n || a % n == b % n) g.set_color(a + 1, b + 1, 1);
  return g;
}

// ---------------------------------------------------------------------------
// Search for a CIS d-graph containing Δ

struct DeltaSearchReport {
  int n_max = 0;
  bool complete = true;
  std::uint64_t colorings = 0;
  std::optional<DGraph> found;
};

/// Every 3-colouring of K_n (3 <= n <= n_max) with a Δ on vertices 1, 2, 3
/// coloured 1, 2, 3; stops at `budget` colourings.
inline DeltaSearchReport delta_conjecture_search(int n_max, std::uint64_t budget = 10'000'000) {
  DeltaSearchReport rep;
  rep.n_max = n_max;
  for (int n = 3; n <= n_max && !rep.found; ++n) {
    DGraph g = delta_dgraph(3);
    DGraph base(n, 3, 1);
    for (int u = 1; u <= 3; ++u)
      for (int v = u + 1; v <= 3; ++v) base.set_color(u, v, g.color(u, v));
    std::vector<VertexPair> free;
    for (int u = 1; u <= n; ++u)
      for (int v = std::max(u + 1, 4); v <= n; ++v) free.emplace_back(u, v);
    std::vector<int> digits(free.size(), 0);
    while (true) {
      if (rep.colorings >= budget) {
        rep.complete = false;
        return rep;
      }
      ++rep.colorings;
      for (std::size_t i = 0; i < free.size(); ++i)
        base.set_color(free[i].first, free[i].second, digits[i] + 1);
      if (is_cis(base)) {
        rep.found = base;
        break;
      }
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == 3) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return rep;
}

}  // namespace convexfam

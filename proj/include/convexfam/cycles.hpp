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

// Cycle enumeration on bitmask adjacency: chordless (induced) cycles, all
// simple cycles of an undirected graph, and simple directed cycles.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexfam/bits.hpp"
#include "convexfam/graph.hpp"
#include "convexfam/poset.hpp"

namespace convexfam {

/// Vertex sequence of a cycle, 0-based, starting at its smallest vertex
/// and oriented so that the second vertex is smaller than the last.
using Cycle = std::vector<int>;

namespace detail {

template <class Visit>
struct InducedCycleWalk {
  const std::vector<Mask>& adj;
  Mask allowed;  // vertices above the start that lie in the subgraph
  int start;
  int max_len;
  Visit& visit;
  Cycle path;
  bool stop = false;

  // interior = path vertices other than the start and the current end.
  void extend(int end, Mask used, Mask interior) {
    if (stop) return;
    Mask cand = adj[end] & allowed & ~used;
    for_each_bit(cand, [&](int y) {
      if (stop || (adj[y] & interior)) return;
      if ((adj[y] >> start) & 1) {
        if (path.size() >= 2 && path[1] < y) {
          path.push_back(y);
          if (visit(path)) stop = true;
          path.pop_back();
        }
        return;
      }
      if (static_cast<int>(path.size()) + 1 >= max_len) return;
      path.push_back(y);
      extend(y, used | bit(y), path.size() > 2 ? interior | bit(end) : interior);
      path.pop_back();
    });
  }
};

}  // namespace detail

/// Calls visit(cycle) for each chordless cycle of length 3..max_len inside
/// `within`, each exactly once. visit returns true to stop early.
/// Returns true when stopped early.
template <class Visit>
bool for_each_induced_cycle(const std::vector<Mask>& adj, Mask within, Visit&& visit,
                            int max_len = kMaxGroundIds) {
  bool stopped = false;
  for_each_bit(within, [&](int s) {
    if (stopped) return;
    Mask allowed = within & ~full_mask(s + 1);
    detail::InducedCycleWalk<std::remove_reference_t<Visit>> walk{adj, allowed, s, max_len,
                                                                   visit, {s}};
    for_each_bit(adj[s] & allowed, [&](int p1) {
      if (walk.stop) return;
      walk.path = {s, p1};
      walk.extend(p1, bit(s) | bit(p1), 0);
    });
    stopped = walk.stop;
  });
  return stopped;
}

/// All chordless cycles of g, 1-based, capped at `cap` cycles.
inline std::vector<std::vector<int>> induced_cycles(const Graph& g,
                                                    std::uint64_t cap = 1'000'000) {
  std::vector<std::vector<int>> out;
  for_each_induced_cycle(g.adjacency(), g.vertex_mask(), [&](const Cycle& c) {
    if (out.size() >= cap)
      throw CapExceeded("more than " + std::to_string(cap) + " induced cycles");
    std::vector<int> ids;
    for (int v : c) ids.push_back(v + 1);
    out.push_back(std::move(ids));
    return false;
  });
  return out;
}

inline bool has_induced_cycle_of_length(const std::vector<Mask>& adj, Mask within, int len) {
  return for_each_induced_cycle(
      adj, within, [&](const Cycle& c) { return static_cast<int>(c.size()) == len; }, len);
}

/// Ternary: no chordless cycle whose length is a multiple of 3.
inline bool is_ternary_on(const std::vector<Mask>& adj, Mask within) {
  return !for_each_induced_cycle(adj, within,
                                 [](const Cycle& c) { return c.size() % 3 == 0; });
}

inline bool is_ternary(const Graph& g) { return is_ternary_on(g.adjacency(), g.vertex_mask()); }

/// Odd hole: chordless odd cycle of length at least 5.
inline bool has_odd_hole_on(const std::vector<Mask>& adj, Mask within) {
  return for_each_induced_cycle(adj, within,
                                [](const Cycle& c) { return c.size() >= 5 && c.size() % 2 == 1; });
}

/// Simple cycles (not necessarily chordless) of length ≥ 3, each once.
template <class Visit>
bool for_each_simple_cycle(const std::vector<Mask>& adj, Mask within, Visit&& visit) {
  bool stop = false;
  Cycle path;
  std::function<void(int, Mask, int, Mask)> dfs = [&](int s, Mask allowed, int end, Mask used) {
    for_each_bit(adj[end] & allowed & ~used, [&](int y) {
      if (stop) return;
      path.push_back(y);
      if (((adj[y] >> s) & 1) && path.size() >= 3 && path[1] < y && visit(path)) stop = true;
      if (!stop) dfs(s, allowed, y, used | bit(y));
      path.pop_back();
    });
  };
  for_each_bit(within, [&](int s) {
    if (stop) return;
    Mask allowed = within & ~full_mask(s + 1);
    path = {s};
    dfs(s, allowed, s, bit(s));
  });
  return stop;
}

/// Simple directed cycles (loops count as length 1), each reported once
/// starting from its smallest vertex.
template <class Visit>
bool for_each_directed_cycle(const std::vector<Mask>& out, Mask within, Visit&& visit) {
  bool stop = false;
  Cycle path;
  std::function<void(int, Mask, int, Mask)> dfs = [&](int s, Mask allowed, int end, Mask used) {
    if ((out[end] >> s) & 1) {
      if (visit(path)) {
        stop = true;
        return;
      }
    }
    for_each_bit(out[end] & allowed & ~used, [&](int y) {
      if (stop) return;
      path.push_back(y);
      dfs(s, allowed, y, used | bit(y));
      path.pop_back();
    });
  };
  for_each_bit(within, [&](int s) {
    if (stop) return;
    path = {s};
    dfs(s, within & ~full_mask(s + 1), s, bit(s));
  });
  return stop;
}

struct CycleParities {
  bool has_cycle = false;
  bool has_even = false;
  bool has_odd = false;
};

inline CycleParities directed_cycle_parities(const Digraph& d) {
  CycleParities p;
  for_each_directed_cycle(d.out_adjacency(), d.vertex_mask(), [&](const Cycle& c) {
    p.has_cycle = true;
    (c.size() % 2 == 0 ? p.has_even : p.has_odd) = true;
    return p.has_even && p.has_odd;
  });
  return p;
}

}  // namespace convexfam

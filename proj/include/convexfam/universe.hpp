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

// Enumerators for audit universes: one representative per isomorphism class
// where the families are invariant, plus seeded random samplers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "convexfam/dgraph.hpp"
#include "convexfam/game_form.hpp"
#include "convexfam/graph.hpp"
#include "convexfam/matrix_game.hpp"

namespace convexfam {

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Slot of each ordered (or unordered, i<j) pair in the bit code.
struct PairIndex {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> slot;  // slot[i*n+j]
  int n = 0;

  PairIndex(int n_, bool directed) : slot(static_cast<std::size_t>(n_) * n_, -1), n(n_) {
    for (int i = 0; i < n; ++i)
      for (int j = directed ? 0 : i + 1; j < n; ++j)
        if (i != j) {
          slot[i * n + j] = static_cast<int>(pairs.size());
          pairs.emplace_back(i, j);
        }
    if (!directed)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) slot[i * n + j] = slot[j * n + i];
  }
};

// True when no vertex permutation maps the code to a smaller one.
inline bool is_canonical_code(std::uint64_t code, const PairIndex& ix,
                              const std::vector<std::vector<int>>& perms) {
  for (const auto& p : perms) {
    std::uint64_t img = 0;
    for (std::size_t k = 0; k < ix.pairs.size(); ++k)
      if ((code >> k) & 1) img |= std::uint64_t{1} << ix.slot[p[ix.pairs[k].first] * ix.n + p[ix.pairs[k].second]];
    if (img < code) return false;
  }
  return true;
}

}  // namespace detail

/// One graph per isomorphism class on 0..n_max vertices, by size then code.
inline std::vector<Graph> graphs_up_to_iso(int n_max) {
  std::vector<Graph> out;
  for (int n = 0; n <= n_max; ++n) {
    detail::PairIndex ix(n, false);
    auto perms = detail::all_permutations(n);
    std::uint64_t codes = std::uint64_t{1} << ix.pairs.size();
    for (std::uint64_t code = 0; code < codes; ++code) {
      if (!detail::is_canonical_code(code, ix, perms)) continue;
      Graph g(n);
      for (std::size_t k = 0; k < ix.pairs.size(); ++k)
        if ((code >> k) & 1) g.add_edge(ix.pairs[k].first + 1, ix.pairs[k].second + 1);
      out.push_back(std::move(g));
    }
  }
  return out;
}

inline std::vector<Digraph> digraphs_up_to_iso(int n_max) {
  std::vector<Digraph> out;
  for (int n = 0; n <= n_max; ++n) {
    detail::PairIndex ix(n, true);
    auto perms = detail::all_permutations(n);
    std::uint64_t codes = std::uint64_t{1} << ix.pairs.size();
    for (std::uint64_t code = 0; code < codes; ++code) {
      if (!detail::is_canonical_code(code, ix, perms)) continue;
      Digraph d(n);
      for (std::size_t k = 0; k < ix.pairs.size(); ++k)
        if ((code >> k) & 1) d.add_arc(ix.pairs[k].first + 1, ix.pairs[k].second + 1);
      out.push_back(std::move(d));
    }
  }
  return out;
}

/// Complete colourings with colours 1..d on 0..n_max vertices, one per class
/// under vertex permutations (colours keep their names).
inline std::vector<DGraph> dgraphs_up_to_iso(int n_max, int d) {
  std::vector<DGraph> out;
  for (int n = 0; n <= n_max; ++n) {
    detail::PairIndex ix(n, false);
    auto perms = detail::all_permutations(n);
    std::size_t m = ix.pairs.size();
    std::vector<int> col(m, 0), img(m);
    while (true) {
      bool canonical = true;
      for (const auto& p : perms) {
        for (std::size_t k = 0; k < m; ++k)
          img[ix.slot[p[ix.pairs[k].first] * n + p[ix.pairs[k].second]]] = col[k];
        if (std::lexicographical_compare(img.begin(), img.end(), col.begin(), col.end())) {
          canonical = false;
          break;
        }
      }
      if (canonical) {
        DGraph g(n, d, 1);
        for (std::size_t k = 0; k < m; ++k)
          g.set_color(ix.pairs[k].first + 1, ix.pairs[k].second + 1, col[k] + 1);
        out.push_back(std::move(g));
      }
      std::size_t k = m;
      while (k > 0 && col[k - 1] == d - 1) col[--k] = 0;
      if (k == 0) break;
      ++col[k - 1];
    }
  }
  return out;
}

/// Matrices with entries 0..alphabet-1 and 1..max_lines rows and columns whose
/// rows and columns are both in lexicographic order. Every matrix has such a
/// line permutation, so this covers every class under row/column permutation.
inline std::vector<MatrixGame> doubly_lexical_matrices(int max_lines, int alphabet) {
  std::vector<MatrixGame> out;
  for (int r = 1; r <= max_lines; ++r)
    for (int c = 1; c <= max_lines; ++c) {
      std::uint64_t row_codes = 1;
      for (int j = 0; j < c; ++j) row_codes *= static_cast<std::uint64_t>(alphabet);
      auto digit = [&](std::uint64_t code, int j) {
        for (int k = c - 1; k > j; --k) code /= static_cast<std::uint64_t>(alphabet);
        return static_cast<int>(code % static_cast<std::uint64_t>(alphabet));
      };
      std::vector<std::uint64_t> rows(static_cast<std::size_t>(r), 0);
      while (true) {
        bool cols_sorted = true;
        for (int j = 0; j + 1 < c && cols_sorted; ++j)
          for (int i = 0; i < r; ++i) {
            int a = digit(rows[i], j), b = digit(rows[i], j + 1);
            if (a != b) {
              cols_sorted = a < b;
              break;
            }
          }
        if (cols_sorted) {
          MatrixGame m(r, c);
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = digit(rows[i], j);
          out.push_back(std::move(m));
        }
        // Next nondecreasing row tuple.
        int k = r - 1;
        while (k >= 0 && rows[k] == row_codes - 1) --k;
        if (k < 0) break;
        ++rows[k];
        for (int i = k + 1; i < r; ++i) rows[i] = rows[k];
      }
    }
  return out;
}

/// Every bimatrix game with entries 0..alphabet-1 and 1..max_lines rows/columns.
inline std::vector<BimatrixGame> all_bimatrices(int max_lines, int alphabet) {
  std::vector<BimatrixGame> out;
  for (int r = 1; r <= max_lines; ++r)
    for (int c = 1; c <= max_lines; ++c) {
      int cells = 2 * r * c;
      std::vector<int> v(static_cast<std::size_t>(cells), 0);
      while (true) {
        Grid<double> a(r, c), b(r, c);
        for (int k = 0; k < r * c; ++k) {
          a(k / c, k % c) = v[k];
          b(k / c, k % c) = v[r * c + k];
        }
        out.emplace_back(std::move(a), std::move(b));
        int k = cells;
        while (k > 0 && v[k - 1] == alphabet - 1) v[--k] = 0;
        if (k == 0) break;
        ++v[k - 1];
      }
    }
  return out;
}

namespace detail {

// Relabel outcomes by first appearance in reading order.
inline void first_appearance(std::vector<int>& cells, int outcomes) {
  std::vector<int> map(static_cast<std::size_t>(outcomes), -1);
  int next = 0;
  for (int& x : cells) {
    if (map[x] < 0) map[x] = next++;
    x = map[x];
  }
}

}  // namespace detail

/// Game forms with 1..max_lines rows/columns and at most `outcomes` outcomes,
/// one per class under row, column and outcome permutations.
inline std::vector<GameForm> game_forms_up_to_iso(int max_lines, int outcomes) {
  std::vector<GameForm> out;
  for (int r = 1; r <= max_lines; ++r)
    for (int c = 1; c <= max_lines; ++c) {
      auto rp = detail::all_permutations(r), cp = detail::all_permutations(c);
      int n = r * c;
      // Restricted growth strings: labels by first appearance.
      std::vector<int> v(static_cast<std::size_t>(n), 0), img(static_cast<std::size_t>(n));
      while (true) {
        bool canonical = true;
        for (std::size_t a = 0; a < rp.size() && canonical; ++a)
          for (std::size_t b = 0; b < cp.size(); ++b) {
            for (int i = 0; i < r; ++i)
              for (int j = 0; j < c; ++j) img[i * c + j] = v[rp[a][i] * c + cp[b][j]];
            detail::first_appearance(img, outcomes);
            if (std::lexicographical_compare(img.begin(), img.end(), v.begin(), v.end())) {
              canonical = false;
              break;
            }
          }
        if (canonical) {
          std::vector<std::vector<int>> rows(static_cast<std::size_t>(r));
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) rows[i].push_back(v[i * c + j] + 1);
          out.push_back(GameForm::from_ints(rows));
        }
        // Next restricted growth string with values below `outcomes`.
        int k = n - 1;
        for (; k > 0; --k) {
          int prefix_max = *std::max_element(v.begin(), v.begin() + k);
          if (v[k] <= prefix_max && v[k] + 1 < outcomes) break;
        }
        if (k <= 0) break;
        ++v[k];
        std::fill(v.begin() + k + 1, v.end(), 0);
      }
    }
  return out;
}

// ---- samplers ----

/// Uniform labelled graph on n vertices with at most max_edges edges (redrawn
/// until it fits).
inline Graph random_graph(int n, int max_edges, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  while (true) {
    Graph g(n);
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (coin(rng)) g.add_edge(u, v);
    if (g.edge_count() <= max_edges) return g;
  }
}

inline Digraph random_digraph(int n, int max_arcs, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  while (true) {
    Digraph d(n);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (u != v && coin(rng)) d.add_arc(u, v);
    if (d.arc_count() <= max_arcs) return d;
  }
}

inline BimatrixGame random_bimatrix(int rows, int cols, int alphabet, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, alphabet - 1);
  Grid<double> a(rows, cols), b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = pick(rng);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = pick(rng);
  return {a, b};
}

}  // namespace convexfam

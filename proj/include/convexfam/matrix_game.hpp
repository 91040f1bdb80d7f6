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

// Matrix games (saddle points) and bimatrix games (Nash equilibria).

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "convexfam/grid.hpp"

namespace convexfam {

using MatrixGame = Grid<double>;

/// Two payoff grids of equal shape: `a` for the row player, `b` for the column player.
struct BimatrixGame {
  Grid<double> a;
  Grid<double> b;

  BimatrixGame() = default;
  BimatrixGame(Grid<double> a_, Grid<double> b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw std::invalid_argument("bimatrix payoff grids differ in shape");
  }

  static BimatrixGame zero_sum(const Grid<double>& a) {
    Grid<double> b(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) b(i, j) = -a(i, j);
    return {a, b};
  }

  int rows() const { return a.rows(); }
  int cols() const { return a.cols(); }
  BimatrixGame sub(Mask r, Mask c) const { return {a.sub(r, c), b.sub(r, c)}; }
  bool operator==(const BimatrixGame&) const = default;
};

template <>
struct ground_traits<BimatrixGame> {
  static constexpr const char* name = "bimatrix";
  static bool allows(Order o) { return o == Order::line; }
  static PosetShape shape(const BimatrixGame& g, Order) {
    return PosetShape::line_order(g.rows(), g.cols());
  }
};

// ---- saddle points ----

/// Cells of the submatrix on rows `r` and columns `c` that are minimal in
/// their row and maximal in their column (non-strict). Row-major order.
template <class T>
std::vector<Cell> saddle_points_on(const Grid<T>& m, Mask r, Mask c) {
  std::vector<Cell> out;
  for_each_bit(r, [&](int i) {
    T lo = std::numeric_limits<T>::max();
    for_each_bit(c, [&](int j) { lo = std::min(lo, m(i, j)); });
    for_each_bit(c, [&](int j) {
      if (m(i, j) != lo) return;
      bool colmax = true;
      for_each_bit(r, [&](int k) { colmax = colmax && m(k, j) <= lo; });
      if (colmax) out.push_back({i, j});
    });
  });
  return out;
}

template <class T>
bool has_sp_on(const Grid<T>& m, Mask r, Mask c) {
  // A SP exists iff maxmin over rows equals minmax over columns.
  if (r == 0 || c == 0) return false;
  T maxmin = std::numeric_limits<T>::lowest();
  for_each_bit(r, [&](int i) {
    T lo = std::numeric_limits<T>::max();
    for_each_bit(c, [&](int j) { lo = std::min(lo, m(i, j)); });
    maxmin = std::max(maxmin, lo);
  });
  T minmax = std::numeric_limits<T>::max();
  for_each_bit(c, [&](int j) {
    T hi = std::numeric_limits<T>::lowest();
    for_each_bit(r, [&](int i) { hi = std::max(hi, m(i, j)); });
    minmax = std::min(minmax, hi);
  });
  return maxmin == minmax;
}

template <class T>
std::vector<Cell> saddle_points(const Grid<T>& m) {
  return saddle_points_on(m, m.row_mask(), m.col_mask());
}

template <class T>
bool has_sp(const Grid<T>& m) {
  return has_sp_on(m, m.row_mask(), m.col_mask());
}

/// SP-freeness of a 2x2 matrix via its diagonal intervals: SP-free iff the
/// closed value ranges of the two diagonals are disjoint. Returns true when a SP exists.
template <class T>
bool sp_2x2_criterion(const Grid<T>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("sp_2x2_criterion needs a 2x2 matrix");
  T lo1 = std::min(m(0, 0), m(1, 1)), hi1 = std::max(m(0, 0), m(1, 1));
  T lo2 = std::min(m(0, 1), m(1, 0)), hi2 = std::max(m(0, 1), m(1, 0));
  bool disjoint = hi1 < lo2 || hi2 < lo1;
  return !disjoint;
}

/// Every 2x2 submatrix of the selected lines has a SP. Vacuous below 2x2.
template <class T>
bool all_2x2_have_sp_on(const Grid<T>& m, Mask r, Mask c) {
  auto rows = mask_ids(r), cols = mask_ids(c);
  for (std::size_t i1 = 0; i1 < rows.size(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < rows.size(); ++i2)
      for (std::size_t j1 = 0; j1 < cols.size(); ++j1)
        for (std::size_t j2 = j1 + 1; j2 < cols.size(); ++j2) {
          int a = rows[i1] - 1, b = rows[i2] - 1, x = cols[j1] - 1, y = cols[j2] - 1;
          T lo1 = std::min(m(a, x), m(b, y)), hi1 = std::max(m(a, x), m(b, y));
          T lo2 = std::min(m(a, y), m(b, x)), hi2 = std::max(m(a, y), m(b, x));
          if (hi1 < lo2 || hi2 < lo1) return false;
        }
  return true;
}

/// Absolutely determined: every submatrix has a SP. By the 2x2 reduction this is
/// decided on 2x2 submatrices only. The empty matrix is a member.
template <class T>
bool is_absolutely_determined_on(const Grid<T>& m, Mask r, Mask c) {
  return all_2x2_have_sp_on(m, r, c);
}

template <class T>
bool is_absolutely_determined(const Grid<T>& m) {
  return is_absolutely_determined_on(m, m.row_mask(), m.col_mask());
}

// ---- Nash equilibria ----

/// Cells where `a` is maximal in its column and `b` is maximal in its row.
inline std::vector<Cell> nash_equilibria_on(const BimatrixGame& g, Mask r, Mask c) {
  std::vector<Cell> out;
  for_each_bit(r, [&](int i) {
    for_each_bit(c, [&](int j) {
      bool ok = true;
      for_each_bit(r, [&](int k) { ok = ok && g.a(k, j) <= g.a(i, j); });
      for_each_bit(c, [&](int l) { ok = ok && g.b(i, l) <= g.b(i, j); });
      if (ok) out.push_back({i, j});
    });
  });
  return out;
}

inline bool has_ne_on(const BimatrixGame& g, Mask r, Mask c) {
  // Row-best-responses of b, then check the column max of a.
  bool found = false;
  for_each_bit(r, [&](int i) {
    if (found) return;
    double best = std::numeric_limits<double>::lowest();
    for_each_bit(c, [&](int j) { best = std::max(best, g.b(i, j)); });
    for_each_bit(c, [&](int j) {
      if (found || g.b(i, j) != best) return;
      bool colmax = true;
      for_each_bit(r, [&](int k) { colmax = colmax && g.a(k, j) <= g.a(i, j); });
      found = colmax;
    });
  });
  return found;
}

inline std::vector<Cell> nash_equilibria(const BimatrixGame& g) {
  return nash_equilibria_on(g, g.a.row_mask(), g.a.col_mask());
}

inline bool has_ne(const BimatrixGame& g) { return has_ne_on(g, g.a.row_mask(), g.a.col_mask()); }

/// A 3x3 NE-free game whose 2x2 subgames all have a NE.
inline BimatrixGame make_ne_free_3x3() {
  Grid<double> b{{3, 2, 1}, {2, 1, 3}, {1, 3, 2}};
  // Columns of a, written row by row.
  Grid<double> a{{2, 3, 1}, {3, 1, 2}, {1, 2, 3}};
  return {a, b};
}

/// NE-free, and deleting any single row or column creates a NE.
inline bool is_locally_minimal_ne_free(const BimatrixGame& g) {
  Mask r = g.a.row_mask(), c = g.a.col_mask();
  if (r == 0 || c == 0 || has_ne_on(g, r, c)) return false;
  bool ok = true;
  for_each_bit(r, [&](int i) { ok = ok && has_ne_on(g, r & ~bit(i), c); });
  for_each_bit(c, [&](int j) { ok = ok && has_ne_on(g, r, c & ~bit(j)); });
  return ok;
}

/// Permutations certifying local minimality of a NE-free square game.
/// sigma[i] is the 1-based column of row i+1's unique b-maximum; delta[j] the
/// 1-based row of column j+1's unique a-maximum.
struct PermutationWitness {
  std::vector<int> sigma;
  std::vector<int> delta;
  bool operator==(const PermutationWitness&) const = default;
};

namespace detail {

// Index of the unique maximum, or -1 when the maximum is tied.
template <class F>
int unique_argmax(int len, F at) {
  int best = 0, count = 1;
  for (int k = 1; k < len; ++k) {
    if (at(k) > at(best)) best = k, count = 1;
    else if (at(k) == at(best)) ++count;
  }
  return count == 1 ? best : -1;
}

// Exactly one entry of the line exceeds position p.
template <class F>
bool second_largest(int len, int p, F at) {
  int greater = 0;
  for (int k = 0; k < len; ++k) greater += at(k) > at(p);
  return greater == 1;
}

}  // namespace detail

/// Structural test for a locally minimal NE-free game: square k x k, a(delta(j), j)
/// the unique column maximum and a second largest in its row, b(i, sigma(i))
/// the unique row maximum and a second largest in its column, sigma and delta
/// permutations with disjoint graphs.
inline std::optional<PermutationWitness> find_permutation_witness(const BimatrixGame& g) {
  int k = g.rows();
  if (k == 0 || g.cols() != k) return std::nullopt;
  PermutationWitness w{std::vector<int>(k), std::vector<int>(k)};
  std::vector<bool> seen_s(k), seen_d(k);
  for (int i = 0; i < k; ++i) {
    int j = detail::unique_argmax(k, [&](int l) { return g.b(i, l); });
    if (j < 0 || seen_s[j]) return std::nullopt;
    if (!detail::second_largest(k, i, [&](int l) { return g.a(l, j); })) return std::nullopt;
    seen_s[j] = true;
    w.sigma[i] = j + 1;
  }
  for (int j = 0; j < k; ++j) {
    int i = detail::unique_argmax(k, [&](int l) { return g.a(l, j); });
    if (i < 0 || seen_d[i]) return std::nullopt;
    if (!detail::second_largest(k, j, [&](int l) { return g.b(i, l); })) return std::nullopt;
    seen_d[i] = true;
    w.delta[j] = i + 1;
  }
  for (int i = 0; i < k; ++i)
    if (w.delta[w.sigma[i] - 1] == i + 1) return std::nullopt;
  return w;
}

// ---- fixtures ----

/// 4x4 SP-free matrix: shrinking while SP-free can reach rows/columns {3,4}
/// but not rows/columns {1,2}.
inline MatrixGame sp_fixture_4x4() {
  return {{0, 1, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 1}, {1, 1, 1, 0}};
}

/// Two saddle points in column 1; deleting column 1 leaves an SP-free matrix.
inline MatrixGame two_sp_fixture_2x3() { return {{0, 1, 0}, {0, 0, 1}}; }

/// Locally minimal NE-free 4x4 game that still contains a smaller NE-free subgame.
inline BimatrixGame locally_minimal_ne_free_4x4() {
  Grid<double> a{{0, 2, 0, 0}, {0, 0, 0, 2}, {1, 0, 0, 0}, {0, 0, 1, 1}};
  Grid<double> b{{2, 0, 0, 0}, {0, 0, 1, 0}, {0, 2, 0, 0}, {0, 0, 0, 2}};
  return {a, b};
}

}  // namespace convexfam

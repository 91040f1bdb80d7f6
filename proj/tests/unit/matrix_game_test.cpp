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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "convexfam/matrix_game.hpp"

namespace convexfam {
namespace {

using IntGrid = Grid<int>;

IntGrid random_grid(int r, int c, int alphabet, std::mt19937_64& rng) {
  IntGrid g(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) g(i, j) = static_cast<int>(rng() % alphabet);
  return g;
}

// A cell is a SP iff its value equals both the row minimum and the column maximum.
template <class T>
std::vector<Cell> sp_by_definition(const Grid<T>& m) {
  std::vector<Cell> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      bool ok = true;
      for (int l = 0; l < m.cols(); ++l) ok = ok && m(i, j) <= m(i, l);
      for (int k = 0; k < m.rows(); ++k) ok = ok && m(i, j) >= m(k, j);
      if (ok) out.push_back({i, j});
    }
  return out;
}

// Every submatrix (all row and column subsets) has a SP.
bool every_submatrix_has_sp(const IntGrid& m) {
  for (Mask r = 1; r <= m.row_mask(); ++r)
    for (Mask c = 1; c <= m.col_mask(); ++c)
      if (sp_by_definition(m.sub(r, c)).empty()) return false;
  return true;
}

TEST(SaddlePoints, Examples) {
  EXPECT_TRUE(saddle_points(sp_fixture_4x4()).empty());
  EXPECT_FALSE(has_sp(sp_fixture_4x4()));
  EXPECT_FALSE(has_sp(MatrixGame{{0, 1}, {1, 0}}));
  MatrixGame row{{3, 1, 2, 1}};
  EXPECT_EQ(saddle_points(row), (std::vector<Cell>{{0, 1}, {0, 3}}));
  EXPECT_FALSE(has_sp(MatrixGame()));
}

TEST(SaddlePoints, MaxminMinmaxAgreesWithDefinition) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 20000; ++round) {
    int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    IntGrid m = random_grid(r, c, 1 + static_cast<int>(rng() % 4), rng);
    auto def = sp_by_definition(m);
    EXPECT_EQ(saddle_points(m), def);
    EXPECT_EQ(has_sp(m), !def.empty());
    for (const Cell& s : def) EXPECT_EQ(m(s.row, s.col), m(def[0].row, def[0].col));
  }
}

TEST(SaddlePoints, TwoByTwoCriterion) {
  EXPECT_FALSE(sp_2x2_criterion(MatrixGame{{0, 1}, {1, 0}}));
  EXPECT_TRUE(sp_2x2_criterion(MatrixGame{{1, 1}, {1, 1}}));
  EXPECT_FALSE(sp_2x2_criterion(MatrixGame{{0, 2}, {3, 1}}));
  EXPECT_THROW(sp_2x2_criterion(MatrixGame{{0, 1, 2}, {1, 0, 2}}), std::invalid_argument);
  for (int code = 0; code < 256; ++code) {
    IntGrid m{{code & 3, (code >> 2) & 3}, {(code >> 4) & 3, (code >> 6) & 3}};
    EXPECT_EQ(sp_2x2_criterion(m), !sp_by_definition(m).empty()) << code;
  }
}

TEST(SaddlePoints, ShapleyTwoByTwoReduction) {
  std::mt19937_64 rng(11);
  int covered = 0;
  for (int round = 0; round < 10000; ++round) {
    int r = 1 + static_cast<int>(rng() % 6), c = 1 + static_cast<int>(rng() % 6);
    IntGrid m = random_grid(r, c, 5, rng);
    if (all_2x2_have_sp_on(m, m.row_mask(), m.col_mask())) {
      ++covered;
      EXPECT_TRUE(has_sp(m));
    }
  }
  EXPECT_GT(covered, 100);
}

TEST(SaddlePoints, AbsolutelyDeterminedMatchesAllSubmatrices) {
  std::mt19937_64 rng(5);
  int yes = 0;
  for (int round = 0; round < 3000; ++round) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
    IntGrid m = random_grid(r, c, 3, rng);
    bool want = every_submatrix_has_sp(m);
    yes += want;
    EXPECT_EQ(is_absolutely_determined(m), want);
  }
  EXPECT_GT(yes, 100);
}

TEST(SaddlePoints, TwoSaddlePointFixture) {
  MatrixGame m = two_sp_fixture_2x3();
  EXPECT_EQ(saddle_points(m), (std::vector<Cell>{{0, 0}, {1, 0}}));
  EXPECT_FALSE(has_sp_on(m, m.row_mask(), mask_from_ids({2, 3}, 3)));
}

// Rows/columns reachable from the full matrix by single-line deletions that stay SP-free.
std::set<std::pair<Mask, Mask>> sp_free_reachable(const MatrixGame& m) {
  std::set<std::pair<Mask, Mask>> seen;
  std::vector<std::pair<Mask, Mask>> stack{{m.row_mask(), m.col_mask()}};
  while (!stack.empty()) {
    auto [r, c] = stack.back();
    stack.pop_back();
    if (!seen.insert({r, c}).second) continue;
    auto try_step = [&](Mask r2, Mask c2) {
      if (r2 && c2 && sp_by_definition(m.sub(r2, c2)).empty()) stack.push_back({r2, c2});
    };
    for_each_bit(r, [&](int i) { try_step(r & ~bit(i), c); });
    for_each_bit(c, [&](int j) { try_step(r, c & ~bit(j)); });
  }
  return seen;
}

TEST(SaddlePoints, FourByFourFixtureDeletions) {
  MatrixGame m = sp_fixture_4x4();
  Mask all = m.row_mask();
  for (int k = 0; k < 4; ++k) {
    bool creates = k >= 2;
    EXPECT_EQ(has_sp_on(m, all & ~bit(k), all), creates) << "row " << k + 1;
    EXPECT_EQ(has_sp_on(m, all, all & ~bit(k)), creates) << "col " << k + 1;
  }
  auto reach = sp_free_reachable(m);
  Mask m1 = mask_from_ids({1, 2}, 4), m2 = mask_from_ids({3, 4}, 4);
  EXPECT_TRUE(reach.count({m2, m2}));
  EXPECT_FALSE(reach.count({m1, m1}));
  EXPECT_FALSE(has_sp_on(m, m1, m1));
  EXPECT_FALSE(has_sp_on(m, m2, m2));
}

TEST(SaddlePoints, SpFreeShrinksBySingleLine) {
  // Every SP-free matrix larger than 2x2 over {0,1,2} up to 3x4 keeps an SP-free
  // matrix after some single-line deletion.
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 4; ++c) {
      if (r * c <= 4) continue;
      int cells = r * c;
      int total = 1;
      for (int k = 0; k < cells; ++k) total *= 3;
      for (int code = 0; code < total; ++code) {
        IntGrid m(r, c);
        int x = code;
        for (int k = 0; k < cells; ++k, x /= 3) m(k / c, k % c) = x % 3;
        if (has_sp(m)) continue;
        bool step = false;
        for (int i = 0; i < r && !step; ++i)
          step = r > 1 && !has_sp_on(m, m.row_mask() & ~bit(i), m.col_mask());
        for (int j = 0; j < c && !step; ++j)
          step = c > 1 && !has_sp_on(m, m.row_mask(), m.col_mask() & ~bit(j));
        ASSERT_TRUE(step) << r << "x" << c << " code " << code;
      }
    }
}

// ---- bimatrix games ----

std::vector<Cell> ne_by_definition(const BimatrixGame& g) {
  std::vector<Cell> out;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      bool ok = true;
      for (int k = 0; k < g.rows(); ++k) ok = ok && g.a(k, j) <= g.a(i, j);
      for (int l = 0; l < g.cols(); ++l) ok = ok && g.b(i, l) <= g.b(i, j);
      if (ok) out.push_back({i, j});
    }
  return out;
}

// Local minimality by deleting each line and rebuilding the subgame.
bool locally_minimal_by_copies(const BimatrixGame& g) {
  if (g.rows() == 0 || !ne_by_definition(g).empty()) return false;
  for (int i = 0; i < g.rows(); ++i)
    if (g.rows() == 1 || ne_by_definition(g.sub(g.a.row_mask() & ~bit(i), g.a.col_mask())).empty())
      return false;
  for (int j = 0; j < g.cols(); ++j)
    if (g.cols() == 1 || ne_by_definition(g.sub(g.a.row_mask(), g.a.col_mask() & ~bit(j))).empty())
      return false;
  return true;
}

BimatrixGame random_tie_free(int r, int c, std::mt19937_64& rng) {
  // Each column of a and each row of b is a random permutation of distinct values.
  Grid<double> a(r, c), b(r, c);
  for (int j = 0; j < c; ++j) {
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    for (int i = 0; i < r; ++i) a(i, j) = p[i];
  }
  for (int i = 0; i < r; ++i) {
    std::vector<int> p(c);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    for (int j = 0; j < c; ++j) b(i, j) = p[j];
  }
  return {a, b};
}

TEST(Nash, Examples) {
  EXPECT_TRUE(nash_equilibria(BimatrixGame::zero_sum(sp_fixture_4x4())).empty());
  BimatrixGame one(Grid<double>{{5}}, Grid<double>{{-1}});
  EXPECT_EQ(nash_equilibria(one), (std::vector<Cell>{{0, 0}}));
  EXPECT_THROW(BimatrixGame(Grid<double>{{1, 2}}, Grid<double>{{1}, {2}}), std::invalid_argument);
}

TEST(Nash, ZeroSumNashEqualsSaddlePoints) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 5000; ++round) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
    IntGrid m = random_grid(r, c, 3, rng);
    Grid<double> d(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) d(i, j) = m(i, j);
    BimatrixGame g = BimatrixGame::zero_sum(d);
    EXPECT_EQ(nash_equilibria(g), saddle_points(d));
    EXPECT_EQ(nash_equilibria(g), ne_by_definition(g));
    EXPECT_EQ(has_ne(g), !ne_by_definition(g).empty());
  }
}

TEST(Nash, DerivedThreeByThree) {
  BimatrixGame g = make_ne_free_3x3();
  EXPECT_TRUE(nash_equilibria(g).empty());
  Mask all = g.a.row_mask();
  for (int k = 0; k < 3; ++k) {
    EXPECT_TRUE(has_ne_on(g, all & ~bit(k), all)) << "row " << k + 1;
    EXPECT_TRUE(has_ne_on(g, all, all & ~bit(k))) << "col " << k + 1;
  }
  EXPECT_EQ(nash_equilibria_on(g, mask_from_ids({2, 3}, 3), all), (std::vector<Cell>{{2, 1}}));
  for (Mask r = 0; r <= all; ++r)
    for (Mask c = 0; c <= all; ++c)
      if (popcount(r) == 2 && popcount(c) == 2) {
        EXPECT_TRUE(has_ne_on(g, r, c));
      }
  EXPECT_TRUE(is_locally_minimal_ne_free(g));
  auto w = find_permutation_witness(g);
  ASSERT_TRUE(w.has_value());
  // sigma from b's row maxima, delta from a's column maxima.
  EXPECT_EQ(w->sigma, (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(w->delta, (std::vector<int>{2, 1, 3}));
}

TEST(Nash, MatchingPennies) {
  Grid<double> a{{1, 0}, {0, 1}};
  Grid<double> b{{0, 1}, {1, 0}};
  BimatrixGame g(a, b);
  EXPECT_TRUE(is_locally_minimal_ne_free(g));
  EXPECT_TRUE(locally_minimal_by_copies(g));
  EXPECT_TRUE(find_permutation_witness(g).has_value());
}

TEST(Nash, PermutationWitnessMatchesBruteForce) {
  std::mt19937_64 rng(41);
  int positives = 0;
  for (int round = 0; round < 20000; ++round) {
    int k = 2 + static_cast<int>(rng() % 3);
    int c = rng() % 4 == 0 ? k + 1 : k;
    BimatrixGame g = random_tie_free(k, c, rng);
    bool brute = locally_minimal_by_copies(g);
    EXPECT_EQ(is_locally_minimal_ne_free(g), brute);
    EXPECT_EQ(find_permutation_witness(g).has_value(), brute);
    positives += brute;
  }
  EXPECT_GT(positives, 50);
}

TEST(Nash, GamesWithNashFailBothChecks) {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 2000; ++round) {
    BimatrixGame g = random_tie_free(3, 3, rng);
    if (!has_ne(g)) continue;
    EXPECT_FALSE(is_locally_minimal_ne_free(g));
    EXPECT_FALSE(find_permutation_witness(g).has_value());
  }
}

TEST(Nash, LocallyMinimalButNotMinimal) {
  BimatrixGame g = locally_minimal_ne_free_4x4();
  EXPECT_TRUE(locally_minimal_by_copies(g));
  EXPECT_TRUE(is_locally_minimal_ne_free(g));
  EXPECT_TRUE(find_permutation_witness(g).has_value());
  int smaller = 0;
  for (Mask r = 1; r <= g.a.row_mask(); ++r)
    for (Mask c = 1; c <= g.a.col_mask(); ++c)
      if ((r != g.a.row_mask() || c != g.a.col_mask()) && ne_by_definition(g.sub(r, c)).empty())
        ++smaller;
  EXPECT_GT(smaller, 0);
}

}  // namespace
}  // namespace convexfam

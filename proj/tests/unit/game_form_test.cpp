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

#include <random>
#include <set>
#include <vector>

#include "convexfam/game_form.hpp"

namespace convexfam {
namespace {

// Decodes `code` as a base-`k` grid of outcomes in reading order.
GameForm decode(int r, int c, int k, long code) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(r), std::vector<int>(c));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j, code /= k) rows[i][j] = static_cast<int>(code % k);
  return GameForm::from_ints(rows);
}

long power(int b, int e) {
  long p = 1;
  while (e-- > 0) p *= b;
  return p;
}

std::vector<Mask> minimal_sets(std::vector<Mask> sets) {
  std::vector<Mask> out;
  for (Mask s : sets) {
    bool minimal = true;
    for (Mask t : sets) minimal = minimal && !(t != s && is_subset(t, s));
    if (minimal && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Tight iff the minimal row supports are exactly the minimal transversals of the column supports.
bool tight_by_duality(const GameForm& f) {
  std::vector<Mask> rs, cs;
  Mask used = 0;
  for (int i = 0; i < f.rows(); ++i) {
    Mask s = 0;
    for (int j = 0; j < f.cols(); ++j) s |= bit(f(i, j));
    rs.push_back(s);
    used |= s;
  }
  for (int j = 0; j < f.cols(); ++j) {
    Mask s = 0;
    for (int i = 0; i < f.rows(); ++i) s |= bit(f(i, j));
    cs.push_back(s);
  }
  std::vector<Mask> transversals;
  for (Mask t = 0; t <= used; ++t) {
    if (!is_subset(t, used)) continue;
    bool hits = true;
    for (Mask s : cs) hits = hits && (s & t) != 0;
    if (hits) transversals.push_back(t);
  }
  return minimal_sets(rs) == minimal_sets(transversals);
}

bool every_subform_tight(const GameForm& f) {
  for (Mask r = 1; r <= f.row_mask(); ++r)
    for (Mask c = 1; c <= f.col_mask(); ++c)
      if (!is_tight(f.sub(r, c)).tight) return false;
  return true;
}

// Canonical 2x2 form under row swap, column swap and outcome renaming.
GameForm canonical_2x2(const GameForm& f) {
  std::vector<GameForm> variants;
  for (int rs = 0; rs < 2; ++rs)
    for (int cs = 0; cs < 2; ++cs) {
      std::vector<std::vector<int>> rows(2, std::vector<int>(2));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rows[i][j] = f(i ^ rs, j ^ cs);
      variants.push_back(GameForm::from_ints(rows));
    }
  return *std::min_element(variants.begin(), variants.end(), [](const auto& a, const auto& b) {
    return a.grid().to_rows() < b.grid().to_rows();
  });
}

FamilyPredicate<GameForm> not_tight_family() {
  return {"not-tight", [](const GameForm& g, const PosetElement& e) {
            return e.rows != 0 && !is_tight_on(g, e.rows, e.cols).tight;
          }};
}

TEST(Tightness, GoldenLabels) {
  for (const auto& g : {g1(), g2(), g3(), g4(), g5(), g6()}) EXPECT_TRUE(is_tight(g).tight);
  for (const auto& g : {g7(), g8(), g9()}) EXPECT_FALSE(is_tight(g).tight);
  auto r = is_tight(g7());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, bit(0));
  EXPECT_EQ(g7().label(0), "w1");
}

TEST(Tightness, Trivial) {
  EXPECT_TRUE(is_tight(GameForm::from_ints({{7, 7, 7}, {7, 7, 7}})).tight);
  EXPECT_TRUE(is_tight(GameForm::from_ints({{1, 2, 3}})).tight);
  EXPECT_FALSE(is_tight(GameForm()).tight);
}

TEST(Tightness, LabelsAndSubforms) {
  GameForm f = GameForm::from_labels({{"x", "y"}, {"y", "z"}});
  EXPECT_EQ(f.outcome_count(), 3);
  EXPECT_EQ(f.sub(bit(1), f.col_mask()).to_labels(), (std::vector<std::vector<std::string>>{{"y", "z"}}));
  EXPECT_THROW(GameForm::from_labels({{"x", "y"}, {"z"}}), std::invalid_argument);
}

TEST(Tightness, CapRefusal) {
  std::vector<int> row;
  for (int k = 0; k < GameForm::kMaxOutcomes + 1; ++k) row.push_back(k);
  EXPECT_THROW(is_tight(GameForm::from_ints({row})), CapExceeded);
}

TEST(Tightness, AgreesWithDualHypergraphs) {
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      long total = power(4, r * c);
      for (long code = 0; code < total; ++code) {
        GameForm f = decode(r, c, 4, code);
        auto res = is_tight_on(f, f.row_mask(), f.col_mask());
        ASSERT_EQ(res.tight, tight_by_duality(f)) << r << "x" << c << " code " << code;
        ASSERT_EQ(res.tight, !res.witness.has_value());
      }
    }
}

TEST(TotalTightness, TwoByTwoCriterion) {
  for (long code = 0; code < 256; ++code) {
    GameForm f = decode(2, 2, 4, code);
    bool constant_line = f(0, 0) == f(0, 1) || f(1, 0) == f(1, 1) || f(0, 0) == f(1, 0) ||
                         f(0, 1) == f(1, 1);
    EXPECT_EQ(is_tight(f).tight, constant_line);
    EXPECT_EQ(is_totally_tight(f), constant_line);
    EXPECT_EQ(not_tight_2x2_type(f).has_value(), !constant_line);
  }
}

TEST(TotalTightness, MatchesAllSubforms) {
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      long total = power(3, r * c);
      for (long code = 0; code < total; ++code) {
        GameForm f = decode(r, c, 3, code);
        ASSERT_EQ(is_totally_tight(f), every_subform_tight(f)) << r << "x" << c << " " << code;
      }
    }
  EXPECT_TRUE(is_totally_tight(g3()));
  EXPECT_TRUE(is_totally_tight(GameForm()));
}

TEST(TotalTightness, Catalog) {
  auto cat = not_tight_2x2_catalog();
  ASSERT_EQ(cat.size(), 3u);
  EXPECT_EQ(not_tight_2x2_type(cat[0]), NotTight2x2::diag2);
  EXPECT_EQ(not_tight_2x2_type(cat[1]), NotTight2x2::diag3);
  EXPECT_EQ(not_tight_2x2_type(cat[2]), NotTight2x2::diag4);
  EXPECT_EQ(not_tight_2x2_type(g7()), NotTight2x2::diag2);
  EXPECT_EQ(to_string(NotTight2x2::diag3), "diag-3");
  EXPECT_THROW(not_tight_2x2_type(g8()), std::invalid_argument);
  // Every not-tight 2x2 form is a catalog form up to swaps and renaming.
  std::set<std::vector<std::vector<int>>> canon;
  for (const auto& f : cat) canon.insert(canonical_2x2(f).grid().to_rows());
  for (long code = 0; code < 256; ++code) {
    GameForm f = decode(2, 2, 4, code);
    auto t = not_tight_2x2_type(f);
    if (!t) continue;
    auto cf = canonical_2x2(f).grid().to_rows();
    ASSERT_TRUE(canon.count(cf)) << code;
    EXPECT_EQ(cf, canonical_2x2(cat[static_cast<int>(*t)]).grid().to_rows());
  }
}

TEST(MergeOutcomes, Basics) {
  GameForm g = g2();
  std::vector<std::vector<int>> id;
  for (int k = 0; k < g.outcome_count(); ++k) id.push_back({k});
  EXPECT_EQ(merge_outcomes(g, id).grid(), g.grid());
  GameForm all = merge_outcomes(g, {{0, 1, 2, 3}});
  EXPECT_EQ(all.outcome_count(), 1);
  EXPECT_TRUE(is_tight(all).tight);
  EXPECT_THROW(merge_outcomes(g, {{0, 1}, {1, 2, 3}}), std::invalid_argument);
  EXPECT_THROW(merge_outcomes(g, {{0, 1}, {2}}), std::invalid_argument);
  EXPECT_THROW(merge_outcomes(g, {{0, 1, 2, 3, 4}}), std::invalid_argument);
}

TEST(MergeOutcomes, TwoBlockPartitionsOfG5StayTight) {
  GameForm g = g5();
  int k = g.outcome_count();
  ASSERT_EQ(k, 6);
  for (Mask a = 1; a + 1 < bit(k); ++a) {
    std::vector<std::vector<int>> blocks(2);
    for (int o = 0; o < k; ++o) blocks[(a >> o) & 1].push_back(o);
    EXPECT_TRUE(is_tight(merge_outcomes(g, blocks)).tight) << a;
  }
}

TEST(MergeOutcomes, PreservesTightness) {
  std::mt19937_64 rng(7);
  int tight = 0;
  for (int round = 0; round < 3000; ++round) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
    GameForm f = decode(r, c, 5, static_cast<long>(rng() % power(5, r * c)));
    if (!is_tight(f).tight) continue;
    ++tight;
    std::vector<std::vector<int>> blocks(3);
    for (int o = 0; o < f.outcome_count(); ++o) blocks[rng() % 3].push_back(o);
    std::erase_if(blocks, [](const auto& b) { return b.empty(); });
    EXPECT_TRUE(is_tight(merge_outcomes(f, blocks)).tight);
  }
  EXPECT_GT(tight, 100);
}

TEST(Fixtures, AbFormDeletions) {
  GameForm f = ab_form_4x4();
  EXPECT_FALSE(is_tight(f).tight);
  Mask all = f.row_mask();
  for (int k = 0; k < 4; ++k) {
    bool tight_after = k == 3;
    EXPECT_EQ(is_tight_on(f, all & ~bit(k), all).tight, tight_after) << "row " << k + 1;
    EXPECT_EQ(is_tight_on(f, all, all & ~bit(k)).tight, tight_after) << "col " << k + 1;
  }
}

TEST(Fixtures, LocallyMinimalTight) {
  GameForm f = locally_minimal_tight_4x4();
  EXPECT_TRUE(tight_by_duality(f));
  for (int k = 0; k < 4; ++k) {
    EXPECT_FALSE(tight_by_duality(f.sub(f.row_mask() & ~bit(k), f.col_mask()))) << "row " << k + 1;
    EXPECT_FALSE(tight_by_duality(f.sub(f.row_mask(), f.col_mask() & ~bit(k)))) << "col " << k + 1;
  }
}

TEST(Fixtures, TightnessIsNotHereditary) {
  // The a/b form without its last row is tight yet has a not-tight 2x2 subform.
  GameForm f = ab_form_4x4();
  Mask three = mask_from_ids({1, 2, 3}, 4);
  EXPECT_TRUE(is_tight_on(f, three, f.col_mask()).tight);
  EXPECT_FALSE(is_totally_tight_on(f, three, f.col_mask()));
  // g3 is totally tight, so deleting its last column keeps it tight.
  EXPECT_TRUE(is_tight(g3().sub(g3().row_mask(), mask_from_ids({1, 2}, 3))).tight);
}

TEST(NotTightFamily, MinimaAreCatalogForms) {
  auto fam = not_tight_family();
  std::set<NotTight2x2> seen;
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c) {
      long total = power(4, r * c);
      for (long code = 0; code < total; code += 13) {
        GameForm f = decode(r, c, 4, code);
        GroundPoset<GameForm> p(f, Order::line);
        auto rep = classify(fam, p);
        EXPECT_TRUE(rep.strongly_convex.holds) << r << "x" << c << " " << code;
        EXPECT_EQ(rep.minima, rep.local_minima);
        for (const auto& m : rep.minima) {
          ASSERT_EQ(popcount(m.rows), 2);
          ASSERT_EQ(popcount(m.cols), 2);
          auto t = not_tight_2x2_type(f.sub(m.rows, m.cols));
          ASSERT_TRUE(t.has_value());
          seen.insert(*t);
        }
      }
    }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(NotTightFamily, AbFormIsNotWeaklyHereditary) {
  GameForm f = ab_form_4x4();
  GroundPoset<GameForm> p(f, Order::line);
  auto rep = classify(not_tight_family(), p);
  EXPECT_TRUE(rep.strongly_convex.holds);
  EXPECT_FALSE(rep.weakly_hereditary.holds);
}

}  // namespace
}  // namespace convexfam

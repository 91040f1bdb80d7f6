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
#include <vector>

#include "convexfam/dgraph.hpp"

namespace convexfam {
namespace {

DGraph random_dgraph(int n, int d, std::mt19937_64& rng) {
  DGraph g(n, d, 1);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.set_color(u, v, 1 + static_cast<int>(rng() % d));
  return g;
}

// CIS straight from the definition: list maximal independent sets per
// colour by checking every subset, then try every selection.
bool cis_by_definition(const DGraph& g) {
  int n = g.n();
  if (n == 0) return true;
  std::vector<std::vector<Mask>> mis(static_cast<std::size_t>(g.d()));
  for (int c = 1; c <= g.d(); ++c) {
    auto independent = [&](Mask s) {
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
          if (((s >> (u - 1)) & 1) && ((s >> (v - 1)) & 1) && g.color(u, v) == c) return false;
      return true;
    };
    for (Mask s = 0; s <= g.vertex_mask(); ++s) {
      if (!independent(s)) continue;
      bool maximal = true;
      for (int v = 0; v < n && maximal; ++v)
        if (!((s >> v) & 1) && independent(s | bit(v))) maximal = false;
      if (maximal) mis[c - 1].push_back(s);
    }
  }
  std::vector<std::size_t> idx(mis.size(), 0);
  while (true) {
    Mask inter = g.vertex_mask();
    for (std::size_t c = 0; c < mis.size(); ++c) inter &= mis[c][idx[c]];
    if (inter == 0) return false;
    std::size_t c = 0;
    while (c < idx.size() && ++idx[c] == mis[c].size()) idx[c++] = 0;
    if (c == idx.size()) return true;
  }
}

bool cc_by_definition(const DGraph& g) {
  if (g.n() < 2) return false;
  for (int c = 1; c <= g.d(); ++c) {
    std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 1; w <= g.n(); ++w)
        if (w != u && !seen[w] && g.color(u, w) != c) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    for (int w = 1; w <= g.n(); ++w)
      if (!seen[w]) return false;
  }
  return true;
}

TEST(DGraph, CompleteColouringIsEnforced) {
  EXPECT_THROW(DGraph::from_edges(3, 2, {{1, 2, 1}, {2, 3, 2}}), std::invalid_argument);
  EXPECT_THROW(DGraph::from_edges(3, 2, {{1, 2, 1}, {2, 1, 2}, {2, 3, 1}}),
               std::invalid_argument);
  EXPECT_THROW(DGraph::from_edges(3, 2, {{1, 2, 1}, {1, 3, 3}, {2, 3, 1}}),
               std::invalid_argument);
  DGraph g = DGraph::from_edges(3, 3, {{1, 2, 1}, {2, 3, 2}, {1, 3, 3}});
  EXPECT_EQ(g, delta_dgraph());
}

TEST(DGraph, SubDgraph) {
  DGraph pi = pi_dgraph();
  DGraph three = sub_dgraph(pi, std::vector<int>{1, 2, 3});
  EXPECT_EQ(three.n(), 3);
  EXPECT_EQ(three.used_colors(), 2);
  EXPECT_EQ(sub_dgraph(pi, pi.vertex_mask()), pi);
  EXPECT_EQ(sub_dgraph(bull_dgraph(), std::vector<int>{1, 2, 3, 4}), pi_dgraph());
  EXPECT_THROW(sub_dgraph(pi, std::vector<int>{5}), std::invalid_argument);
}

TEST(DGraph, PiAndDelta) {
  EXPECT_TRUE(contains_pi(pi_dgraph()).has_value());
  EXPECT_TRUE(contains_delta(delta_dgraph()).has_value());
  EXPECT_FALSE(contains_pi(DGraph(6, 3, 2)).has_value());
  EXPECT_FALSE(contains_delta(DGraph(6, 3, 2)).has_value());
  EXPECT_FALSE(contains_delta(pi_dgraph(5)).has_value());
}

TEST(DGraph, ComplementaryConnectivity) {
  EXPECT_TRUE(is_cc(pi_dgraph()));
  EXPECT_TRUE(is_cc(delta_dgraph()));
  EXPECT_TRUE(is_cc(pi_dgraph(4)));
  EXPECT_FALSE(is_cc(DGraph(0, 2)));
  EXPECT_FALSE(is_cc(DGraph(1, 2)));
  for (int c = 1; c <= 3; ++c) EXPECT_FALSE(is_cc(DGraph(2, 3, c)));
  EXPECT_TRUE(is_cc(pi_sub_pi()));
  EXPECT_TRUE(is_cc(bull_dgraph()));
  // Deleting v1, v2 or v3 from Π(v4 -> Π') destroys CC.
  for (int v = 1; v <= 3; ++v)
    EXPECT_FALSE(is_cc(sub_dgraph(pi_sub_pi(), pi_sub_pi().vertex_mask() & ~bit(v - 1)))) << v;
}

TEST(DGraph, CisFixtures) {
  EXPECT_FALSE(is_cis(pi_dgraph()));
  EXPECT_FALSE(is_cis(delta_dgraph()));
  EXPECT_TRUE(is_cis(bull_dgraph()));
  EXPECT_TRUE(is_cis(DGraph(0, 2)));
  EXPECT_TRUE(is_cis(DGraph(1, 2)));

  DGraph bp = bull_sub_pi();
  auto r = is_cis(bp);
  ASSERT_FALSE(r.cis);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->intersection(bp.vertex_mask()), Mask{0});
  // The selection from the construction: {v1,v4,v1',v4'} is maximal
  // independent in colour 1, {v2,v3,v2',v3'} in colour 2.
  Mask s1 = mask_from_ids({1, 4, 5, 8}, 8);
  Mask s2 = mask_from_ids({2, 3, 6, 7}, 8);
  auto mis1 = maximal_independent_sets(bp.component(1), bp.vertex_mask());
  auto mis2 = maximal_independent_sets(bp.component(2), bp.vertex_mask());
  EXPECT_NE(std::find(mis1.begin(), mis1.end(), s1), mis1.end());
  EXPECT_NE(std::find(mis2.begin(), mis2.end(), s2), mis2.end());
  for (int v = 5; v <= 8; ++v)
    EXPECT_TRUE(is_cis(sub_dgraph(bp, bp.vertex_mask() & ~bit(v - 1)))) << v;
}

TEST(DGraph, BullWithDeltaInEachColouring) {
  for (auto [a, b, c] : std::vector<std::tuple<int, int, int>>{{1, 2, 3}, {1, 3, 4}, {3, 4, 5}}) {
    DGraph g = bull_sub_delta(a, b, c);
    EXPECT_EQ(g.n(), 7);
    EXPECT_FALSE(is_cis(g));
    for (int v = 5; v <= 7; ++v)
      EXPECT_TRUE(is_cis(sub_dgraph(g, g.vertex_mask() & ~bit(v - 1)))) << a << b << c << v;
  }
}

TEST(DGraph, LineGraphOfK33) {
  DGraph l = line_knn_2graph(3);
  EXPECT_EQ(l.n(), 9);
  EXPECT_TRUE(is_cis(l));
  for (int v = 1; v <= 9; ++v) EXPECT_FALSE(is_cis(sub_dgraph(l, l.vertex_mask() & ~bit(v - 1))));
}

TEST(DGraph, PredicatesMatchDefinitions) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 600; ++round) {
    int n = static_cast<int>(rng() % 7);
    int d = 1 + static_cast<int>(rng() % 3);
    DGraph g = random_dgraph(n, d, rng);
    auto r = is_cis(g);
    EXPECT_EQ(r.cis, cis_by_definition(g));
    if (!r.cis) {
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_EQ(r.witness->intersection(g.vertex_mask()), Mask{0});
    }
    EXPECT_EQ(is_cc(g), cc_by_definition(g));
  }
}

TEST(DGraph, SubstitutionClosure) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 300; ++round) {
    DGraph a = random_dgraph(2 + static_cast<int>(rng() % 4), 3, rng);
    DGraph b = random_dgraph(2 + static_cast<int>(rng() % 3), 3, rng);
    int v = 1 + static_cast<int>(rng() % a.n());
    DGraph s = substitute(a, v, b);
    EXPECT_EQ(s.n(), a.n() + b.n() - 1);
    if (is_cc(a) && is_cc(b)) {
      EXPECT_TRUE(is_cc(s));
    }
    if (is_cis(a) && is_cis(b)) {
      EXPECT_TRUE(is_cis(s));
    }
    // Both parts survive as induced sub-d-graphs.
    EXPECT_EQ(sub_dgraph(s, full_mask(s.n()) & ~full_mask(a.n() - 1)), b);
  }
  DGraph one(1, 2);
  EXPECT_EQ(substitute(pi_dgraph(), 4, one), pi_dgraph());
  EXPECT_THROW(substitute(pi_dgraph(), 5, one), std::invalid_argument);
}

TEST(DGraph, ProjectionMonotonicity) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 300; ++round) {
    DGraph g = random_dgraph(2 + static_cast<int>(rng() % 5), 4, rng);
    int split = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> blocks(2);
    for (int c = 1; c <= 4; ++c) blocks[c <= split ? 0 : 1].push_back(c);
    DGraph p = project(g, blocks);
    if (is_cis(g)) {
      EXPECT_TRUE(is_cis(p));
    }
    EXPECT_FALSE(contains_delta(p).has_value());
  }
  EXPECT_EQ(project(delta_dgraph(), {{1}, {2}, {3}}), delta_dgraph());
  EXPECT_THROW(project(delta_dgraph(), {{1}, {2}}), std::invalid_argument);
  EXPECT_THROW(project(delta_dgraph(), {{1, 2, 3}}), std::invalid_argument);
}

TEST(DGraph, PiDeltaFreeEquivalence) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 300; ++round) {
    DGraph g = random_dgraph(1 + static_cast<int>(rng() % 5), 3, rng);
    bool free = !contains_pi(g) && !contains_delta(g);
    bool no_cc = true, all_cis = true;
    for (Mask s = 0; s <= g.vertex_mask(); ++s) {
      no_cc = no_cc && !is_cc_on(g, s);
      all_cis = all_cis && is_cis_on(g, s).cis;
      if (s == g.vertex_mask()) break;
    }
    EXPECT_EQ(free, no_cc);
    EXPECT_EQ(free, all_cis);
  }
}

TEST(DGraph, NotCcFamilyOnPiWithApex) {
  DGraph g = pi_with_apex(1);
  GroundPoset<DGraph> pos(g, Order::vertex);
  FamilyPredicate<DGraph> not_cc{"not-cc", [](const DGraph& gr, const PosetElement& e) {
                                   return !is_cc_on(gr, e.vertices);
                                 }};
  auto r = classify(not_cc, pos);
  EXPECT_TRUE(r.strongly_convex.holds);
  EXPECT_FALSE(r.weakly_hereditary.holds);
  ASSERT_EQ(r.minima.size(), 1u);
  EXPECT_EQ(r.minima[0].vertices, Mask{0});
}

TEST(DGraph, CcFamilyOnPiSubPiIsNotStronglyConvex) {
  DGraph g = pi_sub_pi();
  GroundPoset<DGraph> pos(g, Order::vertex);
  FamilyPredicate<DGraph> cc{"cc", [](const DGraph& gr, const PosetElement& e) {
                               return is_cc_on(gr, e.vertices);
                             }};
  auto r = classify(cc, pos);
  EXPECT_TRUE(r.convex.holds);
  EXPECT_FALSE(r.strongly_convex.holds);
  for (const auto& m : r.minima) EXPECT_TRUE(is_pi_or_delta_on(g, m.vertices));
}

TEST(DGraph, SmallDeltaSearchFindsNothing) {
  auto rep = delta_conjecture_search(5);
  EXPECT_TRUE(rep.complete);
  EXPECT_FALSE(rep.found.has_value());
  EXPECT_EQ(rep.colorings, 1u + 27u + 2187u);
  auto cut = delta_conjecture_search(6, 100);
  EXPECT_FALSE(cut.complete);
}

}  // namespace
}  // namespace convexfam

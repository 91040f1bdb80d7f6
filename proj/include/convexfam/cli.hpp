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

// Command-line front end: fixture verification bundles, registry audits,
// classification of user-supplied grounds and registry listing.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "convexfam/io.hpp"

namespace convexfam::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// One named assertion inside a verification bundle.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  bool undecided = false;
};

struct Bundle {
  std::string name;
  std::string summary;
  bool slow = false;
  std::function<std::vector<Check>(std::uint64_t budget)> run;
};

namespace detail {

inline Check check(std::string name, bool pass, std::string detail = "") {
  return {std::move(name), pass, std::move(detail), false};
}

inline std::string ids_text(Mask m) {
  std::string s = "{";
  for (int id : mask_ids(m)) s += (s.size() > 1 ? "," : "") + std::to_string(id);
  return s + "}";
}

// Kernel-lessness via the budgeted search; undecided is reported as such.
inline Check kernel_less_check(const std::string& name, const Digraph& d, std::uint64_t budget) {
  auto r = find_kernel(d, budget);
  Check c = check(name, r.status == SearchStatus::none,
                  "search " + std::string(to_string(r.status)) + " after " + std::to_string(r.nodes) +
                      " nodes");
  c.undecided = r.status == SearchStatus::undecided;
  return c;
}

inline Graph without_edge(const Graph& g, int id) {
  return g.spanning_subgraph(full_mask(g.edge_count()) & ~bit(id - 1));
}

inline std::vector<Check> circulant43_bundle(std::uint64_t budget) {
  std::vector<Check> out;
  Digraph g = circulant(43, {1, 7, 8});
  out.push_back(check("G43(1,7,8) has 43 vertices and 129 arcs", g.n() == 43 && g.arc_count() == 129));
  const std::vector<std::pair<int, std::vector<int>>> kernels = {
      {1, {1, 5, 10, 14, 16, 19, 25, 28, 30, 34, 39, 43}},
      {7, {7, 9, 11, 13, 22, 24, 26, 28, 37, 39, 41, 43}},
      {8, {3, 5, 8, 14, 17, 19, 23, 28, 32, 34, 37, 43}}};
  for (const auto& [head, k] : kernels) {
    Digraph d = g;
    d.remove_arc(43, head);
    Mask km = mask_from_ids(k, 43);
    out.push_back(check("K" + std::to_string(head) + " is a kernel of G43 minus arc (43," +
                            std::to_string(head) + ")",
                        is_kernel(d, km), "K" + std::to_string(head) + " = " + ids_text(km)));
  }
  out.push_back(kernel_less_check("G43(1,7,8) is kernel-less", g, budget));
  return out;
}

inline std::vector<Check> g16_bundle(std::uint64_t budget) {
  std::vector<Check> out;
  Digraph g = circulant(16, {1, 7, 8});
  out.push_back(kernel_less_check("G16(1,7,8) is kernel-less", g, budget));
  Digraph minus16 = delete_vertex(g, 16);
  auto all = KernelSearch(minus16, budget).all_kernels();
  out.push_back(check("G16 minus vertex 16 has the unique kernel {9,11,13,15}",
                      all == std::vector<Mask>{mask_from_ids({9, 11, 13, 15}, 15)},
                      std::to_string(all.size()) + " kernel(s)"));
  Digraph mirrored = delete_vertex(circulant(16, {15, 9, 8}), 16);
  out.push_back(check("{1,3,5,7} is a kernel of the mirrored circulant minus vertex 16",
                      is_kernel(mirrored, std::vector<int>{1, 3, 5, 7})));
  int with = 0;
  bool undecided = false;
  for (int v = 1; v <= 16; ++v) {
    auto r = find_kernel(delete_vertex(g, v), budget);
    with += r.status == SearchStatus::found;
    undecided = undecided || r.status == SearchStatus::undecided;
  }
  Check c = check("every single-vertex deletion has a kernel", with == 16,
                  std::to_string(with) + " of 16");
  c.undecided = undecided;
  out.push_back(c);
  return out;
}

inline std::vector<Check> circulants_bundle(std::uint64_t budget) {
  std::vector<Check> out;
  for (int n = 3; n <= 21; ++n) {
    Digraph d = circulant(n, {1, 7, 8}, Loops::allow);
    auto r = find_kernel(d, budget);
    bool want = n % 3 == 0;
    Check c = check("G" + std::to_string(n) + "(1,7,8) " + (want ? "has a kernel" : "is kernel-less"),
                    r.status == (want ? SearchStatus::found : SearchStatus::none),
                    "search " + std::string(to_string(r.status)));
    c.undecided = r.status == SearchStatus::undecided;
    out.push_back(c);
  }
  return out;
}

inline std::vector<Check> wrochna_bundle(std::uint64_t) {
  std::vector<Check> out;
  Graph g = wrochna();
  out.push_back(check("15 vertices and 25 edges", g.n() == 15 && g.edge_count() == 25));
  out.push_back(check("the graph is ternary", is_ternary(g)));
  int non_ternary = 0;
  for (int id = 1; id <= g.edge_count(); ++id) non_ternary += !is_ternary(without_edge(g, id));
  out.push_back(check("every single-edge deletion is non-ternary", non_ternary == g.edge_count(),
                      std::to_string(non_ternary) + " of " + std::to_string(g.edge_count())));
  GroundPoset<Graph> poset(g, Order::edge);
  auto cert = certify_not_convex(find_family<Graph>("ternary"), poset, poset.top());
  out.push_back(check("the ternary family in edge order is not convex on this ground",
                      cert.has_value(),
                      cert ? "local minimum " + describe(cert->local_minimum) + " above member " +
                                 describe(cert->member_below)
                           : ""));
  return out;
}

inline std::vector<Check> induced_six_cycle_bundle(const Graph& g, int n, int m, bool has_six) {
  std::vector<Check> out;
  out.push_back(check(std::to_string(n) + " vertices and " + std::to_string(m) + " edges",
                      g.n() == n && g.edge_count() == m));
  out.push_back(check(has_six ? "the graph has an induced 6-cycle" : "the graph has no induced 6-cycle",
                      has_induced_cycle_of_length(g.adjacency(), g.vertex_mask(), 6) == has_six));
  int hits = 0;
  for (int id = 1; id <= g.edge_count(); ++id) {
    Graph h = without_edge(g, id);
    hits += has_induced_cycle_of_length(h.adjacency(), h.vertex_mask(), 6);
  }
  out.push_back(check("every single-edge deletion has an induced 6-cycle", hits == g.edge_count(),
                      std::to_string(hits) + " of " + std::to_string(g.edge_count())));
  return out;
}

inline std::vector<Check> icosidodecahedron_bundle(std::uint64_t) {
  Graph g = icosidodecahedron();
  auto out = induced_six_cycle_bundle(g, 30, 60, false);
  bool regular = true;
  for (int v = 1; v <= g.n(); ++v) regular = regular && popcount(g.neighbors(v)) == 4;
  out.push_back(check("every vertex has degree 4", regular));
  out.push_back(check("the graph has triangles",
                      has_induced_cycle_of_length(g.adjacency(), g.vertex_mask(), 3)));
  out.push_back(check("the graph has an induced 9-cycle",
                      has_induced_cycle_of_length(g.adjacency(), g.vertex_mask(), 9)));
  return out;
}

// Line subsets reachable from the full matrix by single deletions inside the SP-free family.
inline std::set<std::pair<Mask, Mask>> sp_free_reach(const MatrixGame& m) {
  std::set<std::pair<Mask, Mask>> seen;
  std::vector<std::pair<Mask, Mask>> stack{{m.row_mask(), m.col_mask()}};
  while (!stack.empty()) {
    auto [r, c] = stack.back();
    stack.pop_back();
    if (!seen.insert({r, c}).second) continue;
    auto push = [&](Mask r2, Mask c2) {
      if (r2 && c2 && !has_sp_on(m, r2, c2)) stack.emplace_back(r2, c2);
    };
    for_each_bit(r, [&](int i) { push(r & ~bit(i), c); });
    for_each_bit(c, [&](int j) { push(r, c & ~bit(j)); });
  }
  return seen;
}

inline std::vector<Check> sp_fixture_bundle(std::uint64_t) {
  std::vector<Check> out;
  MatrixGame m = sp_fixture_4x4();
  Mask all = m.row_mask();
  out.push_back(check("the matrix is SP-free", !has_sp(m)));
  for (int k = 1; k <= 4; ++k) {
    bool want = k >= 3;
    bool row = has_sp_on(m, all & ~bit(k - 1), all), col = has_sp_on(m, all, all & ~bit(k - 1));
    out.push_back(check("deleting row " + std::to_string(k) + (want ? " creates" : " keeps no") + " SP",
                        row == want));
    out.push_back(check("deleting column " + std::to_string(k) + (want ? " creates" : " keeps no") +
                            " SP",
                        col == want));
  }
  auto reach = sp_free_reach(m);
  Mask m1 = mask_from_ids({1, 2}, 4), m2 = mask_from_ids({3, 4}, 4);
  out.push_back(check("an SP-free reduction chain reaches rows and columns {3,4}",
                      reach.count({m2, m2}) == 1));
  out.push_back(check("no SP-free reduction chain reaches rows and columns {1,2}",
                      reach.count({m1, m1}) == 0));
  return out;
}

inline std::vector<Check> two_sp_bundle(std::uint64_t) {
  std::vector<Check> out;
  MatrixGame m = two_sp_fixture_2x3();
  auto sp = saddle_points(m);
  out.push_back(check("the matrix has two saddle points", sp.size() == 2));
  out.push_back(check("both saddle points lie in column 1",
                      sp.size() == 2 && sp[0].col == 0 && sp[1].col == 0));
  out.push_back(check("deleting column 1 leaves an SP-free matrix",
                      !has_sp_on(m, m.row_mask(), m.col_mask() & ~bit(0))));
  return out;
}

inline std::vector<Check> ne_free_3x3_bundle(std::uint64_t) {
  std::vector<Check> out;
  BimatrixGame g = make_ne_free_3x3();
  Mask all = g.a.row_mask();
  out.push_back(check("the game is NE-free", !has_ne(g)));
  int creating = 0;
  for (int k = 0; k < 3; ++k) {
    creating += has_ne_on(g, all & ~bit(k), all);
    creating += has_ne_on(g, all, all & ~bit(k));
  }
  out.push_back(check("each of the 6 line deletions creates a NE", creating == 6,
                      std::to_string(creating) + " of 6"));
  auto ne = nash_equilibria_on(g, all & ~bit(0), all);
  out.push_back(check("deleting row 1 makes cell (3,2) a NE",
                      std::find(ne.begin(), ne.end(), Cell{2, 1}) != ne.end()));
  int with_ne = 0;
  for (Mask r = 0; r <= all; ++r)
    for (Mask c = 0; c <= all; ++c)
      if (popcount(r) == 2 && popcount(c) == 2) with_ne += has_ne_on(g, r, c);
  out.push_back(check("all 9 2x2 subgames have a NE", with_ne == 9, std::to_string(with_ne) + " of 9"));
  out.push_back(check("the game is locally minimal NE-free", is_locally_minimal_ne_free(g)));
  auto w = find_permutation_witness(g);
  std::string detail;
  if (w) {
    detail = "sigma =";
    for (int s : w->sigma) detail += " " + std::to_string(s);
    detail += ", delta =";
    for (int d : w->delta) detail += " " + std::to_string(d);
  }
  out.push_back(check("a permutation witness exists", w.has_value(), detail));
  return out;
}

inline std::vector<Check> ne_free_4x4_bundle(std::uint64_t) {
  std::vector<Check> out;
  BimatrixGame g = locally_minimal_ne_free_4x4();
  out.push_back(check("the game is locally minimal NE-free", is_locally_minimal_ne_free(g)));
  GroundPoset<BimatrixGame> poset(g, Order::line);
  auto cert = certify_not_convex(find_family<BimatrixGame>("ne-free"), poset, poset.top());
  out.push_back(check("an NE-free subgame lies below it, so NE-free games are not convex",
                      cert.has_value(), cert ? "member " + describe(cert->member_below) : ""));
  return out;
}

inline std::vector<Check> game_forms_bundle(std::uint64_t) {
  std::vector<Check> out;
  const std::vector<std::pair<std::string, GameForm>> forms = {
      {"g1", g1()}, {"g2", g2()}, {"g3", g3()}, {"g4", g4()}, {"g5", g5()},
      {"g6", g6()}, {"g7", g7()}, {"g8", g8()}, {"g9", g9()}};
  for (std::size_t k = 0; k < forms.size(); ++k) {
    bool want = k < 6;
    out.push_back(check(forms[k].first + (want ? " is tight" : " is not tight"),
                        is_tight(forms[k].second).tight == want));
  }
  return out;
}

inline std::vector<Check> ab_form_bundle(std::uint64_t) {
  std::vector<Check> out;
  GameForm f = ab_form_4x4();
  Mask all = f.row_mask();
  out.push_back(check("the form is not tight", !is_tight(f).tight));
  for (int k = 1; k <= 4; ++k) {
    bool want = k == 4;
    out.push_back(check("deleting row " + std::to_string(k) + (want ? " makes it tight" : " keeps it not tight"),
                        is_tight_on(f, all & ~bit(k - 1), all).tight == want));
    out.push_back(check("deleting column " + std::to_string(k) +
                            (want ? " makes it tight" : " keeps it not tight"),
                        is_tight_on(f, all, all & ~bit(k - 1)).tight == want));
  }
  return out;
}

inline std::vector<Check> tight_4x4_bundle(std::uint64_t) {
  std::vector<Check> out;
  GameForm f = locally_minimal_tight_4x4();
  out.push_back(check("the form is tight", is_tight(f).tight));
  GroundPoset<GameForm> poset(f, Order::line);
  auto cert = certify_not_convex(find_family<GameForm>("tight"), poset, poset.top());
  out.push_back(check("every line deletion is not tight while a 1x1 subform is tight",
                      cert.has_value(), cert ? "member " + describe(cert->member_below) : ""));
  return out;
}

inline std::vector<Check> pi_sub_pi_bundle(std::uint64_t) {
  std::vector<Check> out;
  DGraph g = pi_sub_pi();
  out.push_back(check("the d-graph is CC", is_cc(g)));
  auto rep = classify(find_family<DGraph>("cc"), GroundPoset<DGraph>(g, Order::vertex));
  out.push_back(check("CC is convex on this ground", rep.convex.holds));
  std::string w;
  for (const auto& e : rep.strongly_convex.witness) w += (w.empty() ? "" : " above ") + describe(e);
  out.push_back(check("CC is not strongly convex on this ground", !rep.strongly_convex.holds, w));
  return out;
}

inline std::vector<Check> substituted_bundle(const DGraph& g, int first, int last) {
  std::vector<Check> out;
  out.push_back(check("the d-graph is not CIS", !is_cis(g).cis));
  int restored = 0;
  for (int v = first; v <= last; ++v) restored += is_cis(sub_dgraph(g, g.vertex_mask() & ~bit(v - 1))).cis;
  int count = last - first + 1;
  out.push_back(check("deleting any substituted vertex restores CIS", restored == count,
                      std::to_string(restored) + " of " + std::to_string(count)));
  return out;
}

inline std::vector<Check> line_k33_bundle(std::uint64_t) {
  std::vector<Check> out;
  DGraph g = line_knn_2graph(3);
  out.push_back(check("the 2-graph has 9 vertices", g.n() == 9));
  out.push_back(check("the 2-graph is CIS", is_cis(g).cis));
  int broken = 0;
  for (int v = 1; v <= g.n(); ++v) broken += !is_cis(sub_dgraph(g, g.vertex_mask() & ~bit(v - 1))).cis;
  out.push_back(check("every single-vertex deletion is not CIS", broken == 9,
                      std::to_string(broken) + " of 9"));
  return out;
}

template <class G>
std::vector<Check> not_convex_bundle(const G& g, Order order, const std::string& family,
                                     const std::string& what) {
  auto rep = classify(find_family<G>(family), GroundPoset<G>(g, order));
  std::string w;
  for (const auto& e : rep.convex.witness) w += describe(e);
  return {check(what, !rep.convex.holds, w.empty() ? "" : "local minimum " + w + " is not a minimum")};
}

}  // namespace detail

inline const std::vector<Bundle>& bundles() {
  using namespace detail;
  static const std::vector<Bundle> all = {
      {"circulant43", "kernels K1, K7, K8 of G43(1,7,8) minus one arc, and kernel-lessness", false,
       circulant43_bundle},
      {"g16", "G16(1,7,8): kernel-less, every vertex deletion has a kernel", false, g16_bundle},
      {"circulants", "G_n(1,7,8) for n in 3..21 has a kernel iff 3 divides n", false,
       circulants_bundle},
      {"wrochna", "ternary graph whose every edge deletion is non-ternary", false, wrochna_bundle},
      {"cube", "cube skeleton: induced 6-cycles before and after any edge deletion", false,
       [](std::uint64_t) { return induced_six_cycle_bundle(cube(), 8, 12, true); }},
      {"icosidodecahedron", "icosidodecahedron: induced 6-cycle after any edge deletion", true,
       icosidodecahedron_bundle},
      {"c10-squared", "square of the 10-cycle is a local minimum of chi > omega, vertex order",
       false,
       [](std::uint64_t) {
         auto out = not_convex_bundle(cycle_power(10, 2), Order::vertex, "chi-exceeds-omega",
                                      "chi > omega is not convex in vertex order on this ground");
         out.push_back(check("the graph is partitionable", is_partitionable(cycle_power(10, 2))));
         return out;
       }},
      {"cycles-sharing-vertex", "two directed 3-cycles sharing a vertex", false,
       [](std::uint64_t) {
         return not_convex_bundle(cycles_sharing_vertex(3, 3), Order::vertex, "strongly-connected",
                                  "strong connectivity is not convex in vertex order on this ground");
       }},
      {"sp-fixture-4x4", "4x4 SP-free matrix and its SP-free reduction chains", false,
       sp_fixture_bundle},
      {"two-sp-fixture-2x3", "2x3 matrix with two saddle points", false, two_sp_bundle},
      {"ne-free-3x3", "3x3 locally minimal NE-free game", false, ne_free_3x3_bundle},
      {"locally-minimal-ne-free-4x4", "4x4 locally minimal NE-free game above an NE-free 2x2", false,
       ne_free_4x4_bundle},
      {"game-forms", "tightness of g1..g9", false, game_forms_bundle},
      {"ab-form-4x4", "4x4 form that becomes tight only after deleting its last line", false,
       ab_form_bundle},
      {"locally-minimal-tight-4x4", "4x4 tight form whose line deletions are all not tight", false,
       tight_4x4_bundle},
      {"pi-sub-pi", "Pi substituted into Pi breaks strong convexity of CC", false, pi_sub_pi_bundle},
      {"bull-sub-pi", "bull with Pi substituted: not CIS, restored by any substituted-vertex deletion",
       false, [](std::uint64_t) { return substituted_bundle(bull_sub_pi(), 5, 8); }},
      {"bull-sub-delta",
       "bull with Delta substituted: not CIS, restored by any substituted-vertex deletion", false,
       [](std::uint64_t) { return substituted_bundle(bull_sub_delta(), 5, 7); }},
      {"line-k33-2graph", "2-graph of the line graph of K3,3: CIS, every vertex deletion not CIS",
       false, line_k33_bundle},
  };
  return all;
}

inline const Bundle& find_bundle(const std::string& name) {
  std::string known;
  for (const auto& b : bundles()) {
    if (b.name == name) return b;
    known += (known.empty() ? "" : ", ") + b.name;
  }
  throw std::invalid_argument("unknown fixture '" + name + "' (known: " + known + ")");
}

// ---------------------------------------------------------------------------
// Running commands

struct Settings {
  std::string format = "text";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultKernelBudget;
  bool slow = false;
  bool timings = false;
};

namespace detail {

inline std::string yes_no(std::optional<bool> v) { return v ? (*v ? "true" : "false") : "-"; }

inline std::string elements_text(const std::vector<PosetElement>& es, const char* sep = " ") {
  std::string s;
  for (const auto& e : es) s += (s.empty() ? "" : sep) + describe(e);
  return s.empty() ? "none" : s;
}

inline int worse(int a, int b) {
  auto rank = [](int x) { return x == kExitFail ? 3 : x == kExitBudget ? 2 : x == kExitUsage ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

inline std::string status_word(int code) {
  switch (code) {
    case kExitPass: return "pass";
    case kExitFail: return "fail";
    case kExitBudget: return "undecided";
    default: return "error";
  }
}

inline int run_verify(const Settings& s, const std::vector<std::string>& names, bool all,
                      std::ostream& out, Json& results) {
  std::vector<const Bundle*> todo;
  if (all) {
    for (const auto& b : bundles()) todo.push_back(&b);
  } else {
    for (const auto& n : names) {
      const Bundle& b = find_bundle(n);
      if (b.slow && !s.slow)
        throw std::invalid_argument("fixture '" + n + "' is long-running; pass --slow to run it");
      todo.push_back(&b);
    }
  }
  int code = kExitPass;
  for (const Bundle* b : todo) {
    Json jb = {{"fixture", b->name}, {"summary", b->summary}};
    if (b->slow && !s.slow) {
      jb["skipped"] = "long-running; pass --slow";
      if (s.format == "text") out << "verify " << b->name << ": skipped (long-running; pass --slow)\n";
      results.push_back(jb);
      continue;
    }
    auto checks = b->run(s.budget);
    int bcode = kExitPass;
    Json jc = Json::array();
    if (s.format == "text") out << "verify " << b->name << ": " << b->summary << "\n";
    for (const auto& c : checks) {
      int ccode = c.pass ? kExitPass : c.undecided ? kExitBudget : kExitFail;
      bcode = worse(bcode, ccode);
      jc.push_back({{"name", c.name}, {"pass", c.pass}, {"undecided", c.undecided}, {"detail", c.detail}});
      if (s.format == "text") {
        out << "  " << (c.pass ? "PASS" : c.undecided ? "UNDECIDED" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
      }
    }
    jb["checks"] = jc;
    jb["status"] = status_word(bcode);
    if (s.format == "text") out << "  result: " << status_word(bcode) << "\n";
    results.push_back(jb);
    code = worse(code, bcode);
  }
  return code;
}

inline std::string bounds_text(const Bounds& b, Kind k) {
  std::ostringstream os;
  switch (k) {
    case Kind::graph:
    case Kind::digraph: os << "n<=" << b.n; break;
    case Kind::dgraph: os << "n<=" << b.n << " d=" << b.d; break;
    case Kind::matrix: os << "up to " << b.max_lines << "x" << b.max_lines << ", alphabet " << b.alphabet; break;
    case Kind::bimatrix: os << "up to " << b.max_lines << "x" << b.max_lines << ", alphabet " << b.alphabet; break;
    case Kind::gameform: os << "up to " << b.max_lines << "x" << b.max_lines << ", outcomes<=" << b.outcomes; break;
  }
  if (b.samples) os << ", " << b.samples << " samples of size " << b.sample_size;
  return os.str();
}

inline int audit_code(const AuditReport& r) {
  if (r.has_mismatch()) return kExitFail;
  return r.ok() ? kExitPass : kExitBudget;
}

inline void audit_text(const AuditReport& r, std::ostream& out) {
  out << "audit " << r.entry << " (" << to_string(r.kind) << ", " << to_string(r.order) << " order)\n";
  out << "  universe: " << bounds_text(r.bounds, r.kind) << "; " << r.grounds << " grounds, "
      << r.elements << " elements\n";
  for (const auto& p : r.properties) {
    out << "  " << std::left << std::setw(18) << to_string(p.property) << " expected "
        << std::setw(5) << yes_no(p.expected.value) << " observed " << std::setw(5)
        << yes_no(p.observed) << " " << to_string(p.status) << "\n";
    if (!p.ground.empty()) {
      out << "      first failure on " << p.ground << "\n";
      out << "      witness " << elements_text(p.witness) << (p.implied ? " (implied by a weaker failure)" : "")
          << "\n";
    }
    if (!p.note.empty()) out << "      note: " << p.note << "\n";
  }
  out << "  minima checked: " << r.minima_checked << ", shape errors: " << r.shape_error_count << "\n";
  for (const auto& e : r.shape_errors) out << "      shape error: " << e << "\n";
  for (const auto& u : r.undecided) out << "      undecided: " << u << "\n";
  if (r.partial) out << "  partial: some grounds could not be scanned\n";
  out << "  result: " << status_word(audit_code(r)) << "\n";
}

inline int run_audit(const Settings& s, const std::string& family, std::optional<Order> order,
                     const AuditOptions& base, std::ostream& out, Json& results) {
  int code = kExitPass;
  for (const auto& entry : find_entries(family, order)) {
    AuditOptions opt = base;
    opt.jobs = s.jobs;
    opt.seed = s.seed;
    opt.kernel_budget = s.budget;
    AuditReport r = audit_family(entry, opt);
    results.push_back(to_json(r));
    if (s.format == "text") audit_text(r, out);
    code = worse(code, audit_code(r));
  }
  return code;
}

inline std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

template <class G>
int classify_ground(const Settings& s, const std::string& text, Order order, const std::string& family,
                    std::ostream& out, Json& results) {
  G ground = read_ground<G>(text);
  if (!ground_traits<G>::allows(order))
    throw std::invalid_argument(std::string(ground_traits<G>::name) + " grounds do not support " +
                                std::string(to_string(order)) + " order");
  auto pred = find_family<G>(family, FamilyOptions{s.budget});
  GroundPoset<G> poset(ground, order);
  ScanLimits limits;
  limits.jobs = s.jobs;
  ClassificationReport rep = classify(pred, poset, limits);
  Json j = classification_json(ground, rep);
  j["ground"] = to_json(ground);
  results.push_back(j);
  if (s.format == "text") {
    out << "classify " << family << " on " << ground_label(ground) << " (" << to_string(order)
        << " order)\n";
    out << "  elements: " << rep.element_count << "\n";
    out << "  minima: " << elements_text(rep.minima) << "\n";
    out << "  local minima: " << elements_text(rep.local_minima) << "\n";
    auto line = [&](const char* name, const Verdict& v) {
      out << "  " << std::left << std::setw(18) << name << " " << (v.holds ? "true" : "false");
      if (!v.holds) out << "  witness " << elements_text(v.witness, " > ");
      out << "\n";
    };
    line("convex", rep.convex);
    line("strongly_convex", rep.strongly_convex);
    line("weakly_hereditary", rep.weakly_hereditary);
    line("hereditary", rep.hereditary);
  }
  return kExitPass;
}

inline int run_classify(const Settings& s, const std::string& path, Kind kind, Order order,
                        const std::string& family, std::ostream& out, Json& results) {
  std::string text = read_input(path);
  switch (kind) {
    case Kind::graph: return classify_ground<Graph>(s, text, order, family, out, results);
    case Kind::digraph: return classify_ground<Digraph>(s, text, order, family, out, results);
    case Kind::dgraph: return classify_ground<DGraph>(s, text, order, family, out, results);
    case Kind::matrix: return classify_ground<MatrixGame>(s, text, order, family, out, results);
    case Kind::bimatrix: return classify_ground<BimatrixGame>(s, text, order, family, out, results);
    case Kind::gameform: return classify_ground<GameForm>(s, text, order, family, out, results);
  }
  return kExitUsage;
}

inline int run_list(const Settings& s, std::ostream& out, Json& results) {
  Json fixtures = Json::array();
  for (const auto& b : bundles())
    fixtures.push_back({{"name", b.name}, {"summary", b.summary}, {"slow", b.slow}});
  results.push_back({{"registry", registry_json()}, {"fixtures", fixtures}});
  if (s.format == "text") {
    out << "registry entries (expected convex / strongly convex / weakly hereditary / hereditary):\n";
    for (const auto& e : list_families()) {
      out << "  " << std::left << std::setw(36) << e.id() << std::setw(9) << to_string(e.kind);
      for (Property p : kProperties) {
        const auto& x = e.expected[p];
        out << " " << std::setw(6) << (yes_no(x.value) + (x.value && x.source == Source::unverified ? "?" : ""));
      }
      out << " " << e.expected_minima << "\n";
    }
    out << "  ('?' marks a verdict whose evidence is out of scope and is not audited)\n";
    out << "fixtures for verify:\n";
    for (const auto& b : bundles())
      out << "  " << std::left << std::setw(28) << b.name << b.summary << (b.slow ? " [--slow]" : "") << "\n";
  }
  return kExitPass;
}

inline unsigned default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

}  // namespace detail

/// Runs the tool on argv; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify families of subobjects by convexity and heredity", "convexfam"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  s.jobs = detail::default_jobs();
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", s.jobs, "Worker threads (CONVEXFAM_JOBS overrides)")->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "Seed for sampled grounds");
  app.add_option("--budget", s.budget, "Node cap for each kernel search")->check(CLI::PositiveNumber);
  app.add_flag("--slow", s.slow, "Allow long-running fixtures");
  app.add_flag("--timings", s.timings, "Report wall-clock time (output is then not reproducible)");

  auto* list = app.add_subcommand("list", "List registry entries and verification fixtures");
  bool registry_only = false;
  list->add_flag("--registry-json", registry_only, "Print only the registry document (the golden file)");

  auto* verify = app.add_subcommand("verify", "Run the check bundle of one or more fixtures");
  std::vector<std::string> fixture_names;
  bool verify_all = false;
  verify->add_option("fixture", fixture_names, "Fixture names (see 'list')");
  verify->add_flag("--all", verify_all, "Run every fixture (long-running ones need --slow)");

  auto* audit = app.add_subcommand("audit", "Re-derive a registry entry's verdicts over its universe");
  std::string family;
  std::string order_text;
  AuditOptions aopt;
  int samples = -1;
  bool no_fixtures = false, no_enumeration = false;
  audit->add_option("family", family, "Family name, optionally as family:order")->required();
  audit->add_option("--order", order_text, "vertex, edge or line")->check(CLI::IsMember({"vertex", "edge", "line"}));
  audit->add_option("--n", aopt.bounds.n, "Largest vertex count enumerated")->check(CLI::PositiveNumber);
  audit->add_option("--d", aopt.bounds.d, "Colour count of d-graphs")->check(CLI::PositiveNumber);
  audit->add_option("--max", aopt.bounds.max_lines, "Largest row and column count")->check(CLI::PositiveNumber);
  audit->add_option("--alphabet", aopt.bounds.alphabet, "Payoff values 0..alphabet-1")->check(CLI::PositiveNumber);
  audit->add_option("--outcomes", aopt.bounds.outcomes, "Largest outcome count of game forms")->check(CLI::PositiveNumber);
  audit->add_option("--samples", samples, "Seeded random grounds on top of the enumeration")->check(CLI::NonNegativeNumber);
  audit->add_option("--sample-size", aopt.bounds.sample_size, "Size of each sampled ground")->check(CLI::PositiveNumber);
  audit->add_option("--fixture", aopt.only_fixture, "Audit only this named fixture ground");
  audit->add_flag("--no-fixtures", no_fixtures, "Skip the named fixture grounds");
  audit->add_flag("--no-enumeration", no_enumeration, "Skip the enumerated universe");

  auto* cls = app.add_subcommand("classify", "Classify a family on a ground read from a file");
  std::string path, kind_text, cls_order, cls_family;
  cls->add_option("file", path, "Input file, or - for standard input")->required();
  cls->add_option("--kind", kind_text, "graph, digraph, dgraph, matrix, bimatrix or gameform")
      ->required()
      ->check(CLI::IsMember({"graph", "digraph", "dgraph", "matrix", "bimatrix", "gameform"}));
  cls->add_option("--order", cls_order, "vertex, edge or line")->check(CLI::IsMember({"vertex", "edge", "line"}));
  cls->add_option("--family", cls_family, "Family name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitPass : kExitUsage;
  }
  if (const char* env = std::getenv("CONVEXFAM_JOBS")) {
    try {
      long v = std::stol(env);
      if (v < 1) throw std::out_of_range("jobs");
      s.jobs = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      err << "error: CONVEXFAM_JOBS must be a positive integer, got '" << env << "'\n";
      return kExitUsage;
    }
  }

  Json args = Json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  std::string name = app.get_subcommands().front()->get_name();
  Json results = Json::array();
  auto start = std::chrono::steady_clock::now();
  int code = kExitPass;
  std::string error;
  try {
    if (name == "list" && registry_only) {
      out << registry_json().dump(2) << "\n";
      return kExitPass;
    } else if (name == "list") {
      code = detail::run_list(s, out, results);
    } else if (name == "verify") {
      if (fixture_names.empty() && !verify_all)
        throw std::invalid_argument("name a fixture or pass --all (see 'convexfam list')");
      code = detail::run_verify(s, fixture_names, verify_all, out, results);
    } else if (name == "audit") {
      std::optional<Order> order;
      if (!order_text.empty()) order = parse_order(order_text);
      if (samples >= 0) {
        aopt.bounds.samples = samples;
        aopt.has_samples = true;
      }
      aopt.fixtures = !no_fixtures;
      aopt.enumerate = !no_enumeration;
      code = detail::run_audit(s, family, order, aopt, out, results);
    } else {
      Kind kind = parse_kind(kind_text);
      Order order = cls_order.empty()
                        ? (kind == Kind::graph || kind == Kind::digraph ? Order::vertex
                           : kind == Kind::dgraph                       ? Order::vertex
                                                                        : Order::line)
                        : parse_order(cls_order);
      code = detail::run_classify(s, path, kind, order, cls_family, out, results);
    }
  } catch (const BudgetExhausted& e) {
    code = kExitBudget;
    error = e.what();
  } catch (const std::exception& e) {
    code = kExitUsage;
    error = e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (s.format == "json") {
    Json report = {{"command", {{"name", name}, {"args", args}}}, {"results", results}};
    if (!error.empty()) report["error"] = error;
    if (s.timings) report["timings"] = {{"seconds", seconds}};
    report["status"] = detail::status_word(code);
    report["exit_status"] = code;
    out << report.dump(2) << "\n";
  } else {
    if (!error.empty()) err << "error: " << error << "\n";
    if (s.timings) out << "time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
    if (name != "list") out << "status: " << detail::status_word(code) << " (exit " << code << ")\n";
  }
  return code;
}

}  // namespace convexfam::cli

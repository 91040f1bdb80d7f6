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

// The catalog of (family, order) pairs with their expected classification,
// and the audit that re-derives those verdicts over a bounded universe.

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "convexfam/families.hpp"
#include "convexfam/universe.hpp"

namespace convexfam {

enum class Kind { graph, digraph, dgraph, matrix, bimatrix, gameform };

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::graph: return "graph";
    case Kind::digraph: return "digraph";
    case Kind::dgraph: return "dgraph";
    case Kind::matrix: return "matrix";
    case Kind::bimatrix: return "bimatrix";
    case Kind::gameform: return "gameform";
  }
  return "?";
}

inline Kind parse_kind(std::string_view s) {
  for (Kind k : {Kind::graph, Kind::digraph, Kind::dgraph, Kind::matrix, Kind::bimatrix, Kind::gameform})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown object kind '" + std::string(s) +
                              "' (expected graph, digraph, dgraph, matrix, bimatrix or gameform)");
}

enum class Property { convex, strongly_convex, weakly_hereditary, hereditary };

inline constexpr std::array<Property, 4> kProperties{Property::convex, Property::strongly_convex,
                                                     Property::weakly_hereditary, Property::hereditary};

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::convex: return "convex";
    case Property::strongly_convex: return "strongly_convex";
    case Property::weakly_hereditary: return "weakly_hereditary";
    case Property::hereditary: return "hereditary";
  }
  return "?";
}

enum class Source { audited, unverified };

inline std::string_view to_string(Source s) { return s == Source::audited ? "audited" : "unverified"; }

/// Claimed verdict. No value means the claim is not made at all.
struct Expectation {
  std::optional<bool> value;
  Source source = Source::audited;
  bool operator==(const Expectation&) const = default;
};

namespace expect {
inline constexpr Expectation yes{true, Source::audited};
inline constexpr Expectation no{false, Source::audited};
inline constexpr Expectation unverified_no{false, Source::unverified};
inline constexpr Expectation unstated{std::nullopt, Source::unverified};
}  // namespace expect

struct Expected {
  Expectation convex, strongly_convex, weakly_hereditary, hereditary;

  const Expectation& operator[](Property p) const {
    switch (p) {
      case Property::convex: return convex;
      case Property::strongly_convex: return strongly_convex;
      case Property::weakly_hereditary: return weakly_hereditary;
      default: return hereditary;
    }
  }
  bool operator==(const Expected&) const = default;

  /// Stated values never contradict hereditary ⇒ weakly ⇒ strongly ⇒ convex.
  bool respects_chain() const {
    std::array<std::optional<bool>, 4> v{convex.value, strongly_convex.value, weakly_hereditary.value,
                                         hereditary.value};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (v[i] == false && v[j] == true) return false;
    return true;
  }
};

/// Shape every minimum must have, checked element by element.
enum class MinimaShape {
  unstated,
  bottom,
  spanning_tree,
  non_adjacent_pair,
  induced_ternary_cycle,
  ternary_cycle_plus_isolated,
  odd_hole_or_antihole,
  odd_hole_plus_isolated,
  missing_arc_pair,
  odd_directed_cycle_plus_isolated,
  pi_or_delta,
  two_by_two,
  single_cell,
};

enum class LocalMinimaShape { unstated, partitionable, permutation_witness };

inline std::string_view to_string(MinimaShape s) {
  switch (s) {
    case MinimaShape::unstated: return "unstated";
    case MinimaShape::bottom: return "bottom";
    case MinimaShape::spanning_tree: return "spanning_tree";
    case MinimaShape::non_adjacent_pair: return "non_adjacent_pair";
    case MinimaShape::induced_ternary_cycle: return "induced_ternary_cycle";
    case MinimaShape::ternary_cycle_plus_isolated: return "ternary_cycle_plus_isolated";
    case MinimaShape::odd_hole_or_antihole: return "odd_hole_or_antihole";
    case MinimaShape::odd_hole_plus_isolated: return "odd_hole_plus_isolated";
    case MinimaShape::missing_arc_pair: return "missing_arc_pair";
    case MinimaShape::odd_directed_cycle_plus_isolated: return "odd_directed_cycle_plus_isolated";
    case MinimaShape::pi_or_delta: return "pi_or_delta";
    case MinimaShape::two_by_two: return "two_by_two";
    case MinimaShape::single_cell: return "single_cell";
  }
  return "?";
}

inline std::string_view to_string(LocalMinimaShape s) {
  switch (s) {
    case LocalMinimaShape::unstated: return "unstated";
    case LocalMinimaShape::partitionable: return "partitionable";
    case LocalMinimaShape::permutation_witness: return "permutation_witness";
  }
  return "?";
}

/// Universe size bounds; which fields apply depends on the object kind.
struct Bounds {
  int n = 0;            // vertices (graphs, digraphs, d-graphs)
  int d = 0;            // colours (d-graphs)
  int max_lines = 0;    // rows and columns (matrices, bimatrices, game forms)
  int alphabet = 0;     // payoff values 0..alphabet-1
  int outcomes = 0;     // outcome count (game forms)
  int samples = 0;      // extra seeded random grounds
  int sample_size = 0;  // vertices or lines of each sampled ground
  bool operator==(const Bounds&) const = default;
};

struct FamilyEntry {
  std::string family;
  Kind kind = Kind::graph;
  Order order = Order::vertex;
  Expected expected;
  MinimaShape minima = MinimaShape::unstated;
  LocalMinimaShape local_minima = LocalMinimaShape::unstated;
  std::string expected_minima;
  std::string anchor;
  Bounds bounds;
  std::vector<std::string> fixtures;
  std::string note;

  std::string id() const { return family + ":" + std::string(to_string(order)); }
};

// ---------------------------------------------------------------------------
// The catalog

namespace detail {

inline Bounds default_bounds(Kind k) {
  switch (k) {
    case Kind::graph: return {.n = 6, .samples = 20, .sample_size = 7};
    case Kind::digraph: return {.n = 4, .samples = 20, .sample_size = 5};
    case Kind::dgraph: return {.n = 5, .d = 3};
    case Kind::matrix: return {.max_lines = 4, .alphabet = 3};
    case Kind::bimatrix: return {.max_lines = 2, .alphabet = 3, .samples = 2000, .sample_size = 3};
    case Kind::gameform: return {.max_lines = 3, .outcomes = 4};
  }
  return {};
}

struct EntrySpec {
  const char* family;
  Kind kind;
  Order order;
  Expected expected;
  MinimaShape minima;
  LocalMinimaShape local;
  const char* minima_text;
  const char* anchor;
  std::vector<std::string> fixtures;
  const char* note;
};

}  // namespace detail

inline const std::vector<FamilyEntry>& list_families() {
  using namespace expect;
  using detail::EntrySpec;
  using K = Kind;
  using O = Order;
  using M = MinimaShape;
  using L = LocalMinimaShape;
  static const std::vector<FamilyEntry> entries = [] {
    const Expected all_yes{yes, yes, yes, yes};
    const Expected all_no{no, no, no, no};
    const Expected strong_not_wh{yes, yes, no, no};
    const Expected wh_not_hered{yes, yes, yes, no};
    const Expected convex_not_strong{yes, no, no, no};
    std::vector<EntrySpec> specs{
        {"connected", K::graph, O::vertex, strong_not_wh, M::bottom, L::unstated, "the null graph",
         "connected graphs, vertex order", {}, ""},
        {"connected", K::graph, O::edge, wh_not_hered, M::spanning_tree, L::unstated,
         "spanning trees", "connected graphs, edge order", {}, ""},
        {"disconnected", K::graph, O::vertex, strong_not_wh, M::non_adjacent_pair, L::unstated,
         "two non-adjacent vertices", "disconnected graphs, vertex order", {}, ""},
        {"disconnected", K::graph, O::edge, all_yes, M::bottom, L::unstated,
         "the edge-free graph on all vertices", "disconnected graphs, edge order", {}, ""},
        {"ternary", K::graph, O::vertex, all_yes, M::bottom, L::unstated, "the null graph",
         "ternary graphs, vertex order", {}, ""},
        {"ternary", K::graph, O::edge, all_no, M::unstated, L::unstated, "",
         "ternary graphs, edge order", {"wrochna"},
         "the 15-vertex ternary graph whose every edge deletion is non-ternary is a local "
         "minimum above the edge-free graph"},
        {"non-ternary", K::graph, O::vertex, wh_not_hered, M::induced_ternary_cycle, L::unstated,
         "induced cycles of length divisible by 3", "non-ternary graphs, vertex order", {}, ""},
        {"non-ternary", K::graph, O::edge, wh_not_hered, M::ternary_cycle_plus_isolated, L::unstated,
         "a cycle of length divisible by 3 plus isolated vertices", "non-ternary graphs, edge order",
         {}, "refuted: on n=6 a chord can make an intermediate graph ternary, so weak heredity fails"},
        {"perfect", K::graph, O::vertex, all_yes, M::bottom, L::unstated, "the null graph",
         "perfect graphs, vertex order", {}, ""},
        {"perfect", K::graph, O::edge, {unverified_no, unverified_no, unverified_no, no}, M::unstated,
         L::unstated, "", "perfect graphs, edge order", {"house-with-chord"},
         "non-convexity rests on critically perfect graphs whose construction is out of scope"},
        {"imperfect", K::graph, O::vertex, wh_not_hered, M::odd_hole_or_antihole, L::unstated,
         "odd holes and odd antiholes", "imperfect graphs, vertex order", {}, ""},
        {"imperfect", K::graph, O::edge, wh_not_hered, M::odd_hole_plus_isolated, L::unstated,
         "odd hole plus isolated vertices", "imperfect graphs, edge order", {},
         "refuted: the audit finds grounds where every path down to an odd hole passes through "
         "perfect graphs"},
        {"chi-equals-omega", K::graph, O::vertex, {yes, unstated, unstated, no}, M::bottom,
         L::unstated, "the null graph", "graphs with chi = omega, vertex order", {}, ""},
        {"chi-equals-omega", K::graph, O::edge, {yes, unstated, unstated, no}, M::bottom,
         L::unstated, "the edge-free graph on all vertices", "graphs with chi = omega, edge order",
         {}, ""},
        {"chi-exceeds-omega", K::graph, O::vertex, all_no, M::odd_hole_or_antihole,
         L::partitionable, "odd holes and odd antiholes; local minima are the partitionable graphs",
         "graphs with chi > omega, vertex order", {"c10-squared"}, ""},
        {"chi-exceeds-omega", K::graph, O::edge, wh_not_hered, M::odd_hole_plus_isolated,
         L::unstated, "odd hole plus isolated vertices", "graphs with chi > omega, edge order", {},
         "refuted: the 5-wheel is a local minimum lying above a 5-cycle plus isolated vertex"},
        {"strongly-connected", K::digraph, O::vertex, all_no, M::bottom, L::unstated,
         "the null digraph", "strongly connected digraphs, vertex order",
         {"cycles-sharing-vertex"}, ""},
        {"strongly-connected", K::digraph, O::edge, wh_not_hered, M::unstated, L::unstated, "",
         "strongly connected digraphs, edge order", {}, ""},
        {"not-strongly-connected", K::digraph, O::vertex, strong_not_wh, M::missing_arc_pair,
         L::unstated, "two vertices missing an arc", "not strongly connected digraphs, vertex order",
         {}, ""},
        {"not-strongly-connected", K::digraph, O::edge, all_yes, M::bottom, L::unstated,
         "the arc-free digraph on all vertices", "not strongly connected digraphs, edge order", {},
         ""},
        {"kernel-less", K::digraph, O::vertex, all_no, M::unstated, L::unstated, "",
         "kernel-less digraphs, vertex order", {"G16(1,7,8)"}, ""},
        {"kernel-less", K::digraph, O::edge, all_no, M::odd_directed_cycle_plus_isolated,
         L::unstated, "odd directed cycle plus isolated vertices",
         "kernel-less digraphs, edge order", {"G43(1,7,8)"},
         "the 43-vertex circulant has 129 arcs, beyond the 64-arc edge-order limit, so it is "
         "checked by a direct local-minimality certificate"},
        {"with-kernel", K::digraph, O::vertex, strong_not_wh, M::bottom, L::unstated,
         "the null digraph", "digraphs with a kernel, vertex order", {}, ""},
        {"with-kernel", K::digraph, O::edge, strong_not_wh, M::bottom, L::unstated,
         "the arc-free digraph on all vertices", "digraphs with a kernel, edge order", {}, ""},
        {"cc", K::dgraph, O::vertex, convex_not_strong, M::pi_or_delta, L::unstated,
         "Pi and Delta", "complementary connected d-graphs", {"pi-sub-pi"}, ""},
        {"not-cc", K::dgraph, O::vertex, strong_not_wh, M::bottom, L::unstated,
         "the null d-graph", "not complementary connected d-graphs", {"pi-with-apex"}, ""},
        {"not-cis", K::dgraph, O::vertex, convex_not_strong, M::pi_or_delta, L::unstated,
         "Pi and Delta", "not CIS d-graphs", {"bull-sub-pi", "bull-sub-delta"}, ""},
        {"cis", K::dgraph, O::vertex, all_no, M::bottom, L::unstated, "the null d-graph",
         "CIS d-graphs", {"line-k33-2graph"}, ""},
        {"pi-delta-free", K::dgraph, O::vertex, all_yes, M::bottom, L::unstated, "the null d-graph",
         "Pi- and Delta-free d-graphs", {}, ""},
        {"sp-free", K::matrix, O::line, convex_not_strong, M::two_by_two, L::unstated,
         "SP-free 2x2 submatrices", "saddle point free matrices", {"sp-fixture-4x4"}, ""},
        {"has-sp", K::matrix, O::line, strong_not_wh, M::single_cell, L::unstated, "1x1 entries",
         "matrices with saddle points", {"two-sp-fixture-2x3"}, ""},
        {"absolutely-determined", K::matrix, O::line, all_yes, M::bottom, L::unstated,
         "the empty submatrix", "absolutely determined matrices", {}, ""},
        {"ne-free", K::bimatrix, O::line, all_no, M::unstated, L::permutation_witness,
         "local minima carry a permutation witness", "Nash equilibrium free bimatrix games",
         {"ne-free-3x3", "locally-minimal-ne-free-4x4"}, ""},
        {"has-ne", K::bimatrix, O::line, wh_not_hered, M::single_cell, L::unstated, "1x1 entries",
         "bimatrix games with Nash equilibria", {"zero-sum-two-sp-2x3"},
         "refuted: weak heredity fails on the zero-sum embedding of the two-saddle-point matrix"},
        {"not-tight", K::gameform, O::line, strong_not_wh, M::two_by_two, L::unstated,
         "the three not tight 2x2 forms", "not tight game forms", {"ab-form-4x4"}, ""},
        {"tight", K::gameform, O::line, all_no, M::single_cell, L::unstated, "1x1 forms",
         "tight game forms", {"locally-minimal-tight-4x4"}, ""},
        {"totally-tight", K::gameform, O::line, all_yes, M::bottom, L::unstated, "the empty form",
         "totally tight game forms", {}, ""},
        {"not-totally-tight", K::gameform, O::line, wh_not_hered, M::two_by_two, L::unstated,
         "the three not tight 2x2 forms", "not totally tight game forms", {}, ""},
    };
    std::vector<FamilyEntry> out;
    for (auto& s : specs)
      out.push_back({s.family, s.kind, s.order, s.expected, s.minima, s.local, s.minima_text,
                     s.anchor, detail::default_bounds(s.kind), s.fixtures, s.note});
    return out;
  }();
  return entries;
}

/// Entries matching `name`, given as "family" (every order) or "family:order".
inline std::vector<FamilyEntry> find_entries(std::string_view name,
                                             std::optional<Order> order = std::nullopt) {
  std::string fam(name);
  if (auto pos = fam.find(':'); pos != std::string::npos) {
    order = parse_order(fam.substr(pos + 1));
    fam = fam.substr(0, pos);
  }
  std::vector<FamilyEntry> out;
  for (const auto& e : list_families())
    if (e.family == fam && (!order || e.order == *order)) out.push_back(e);
  if (out.empty()) {
    std::string known;
    for (const auto& e : list_families()) known += (known.empty() ? "" : ", ") + e.id();
    throw std::invalid_argument("no registry entry '" + std::string(name) +
                                (order ? "' in " + std::string(to_string(*order)) + " order" : "'") +
                                " (known: " + known + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ground labels

namespace detail {

inline std::string fmt_value(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

template <class T, class F>
std::string fmt_rows(const Grid<T>& g, F cell) {
  std::string s = "[";
  for (int i = 0; i < g.rows(); ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < g.cols(); ++j) s += (j ? "," : "") + cell(g(i, j));
    s += "]";
  }
  return s + "]";
}

template <class Pairs>
std::string fmt_pairs(const Pairs& ps) {
  std::string s = "[";
  for (std::size_t k = 0; k < ps.size(); ++k)
    s += (k ? ",[" : "[") + std::to_string(ps[k].first) + "," + std::to_string(ps[k].second) + "]";
  return s + "]";
}

}  // namespace detail

inline std::string ground_label(const Graph& g) {
  return "n=" + std::to_string(g.n()) + " edges=" + detail::fmt_pairs(g.edges());
}
inline std::string ground_label(const Digraph& d) {
  return "n=" + std::to_string(d.n()) + " arcs=" + detail::fmt_pairs(d.arcs());
}
inline std::string ground_label(const DGraph& g) {
  std::string s = "n=" + std::to_string(g.n()) + " d=" + std::to_string(g.d()) + " colours=[";
  bool first = true;
  for (int u = 1; u <= g.n(); ++u)
    for (int v = u + 1; v <= g.n(); ++v) {
      s += (first ? "" : ",") + std::to_string(g.color(u, v));
      first = false;
    }
  return s + "]";
}
inline std::string ground_label(const MatrixGame& m) { return detail::fmt_rows(m, detail::fmt_value); }
inline std::string ground_label(const BimatrixGame& g) {
  return "a=" + ground_label(g.a) + " b=" + ground_label(g.b);
}
inline std::string ground_label(const GameForm& f) {
  return detail::fmt_rows(f.grid(), [&](int id) { return f.label(id); });
}

// ---------------------------------------------------------------------------
// Audit reports

/// What one ground contributed: per-property verdicts (absent when the ground
/// could not be decided) with witnesses, and shape-check failures.
struct GroundResult {
  std::string label;
  std::uint64_t elements = 0;
  std::array<std::optional<bool>, 4> holds;
  std::array<std::vector<PosetElement>, 4> witness;
  std::array<bool, 4> implied{};  // verdict follows from a failed weaker property
  std::uint64_t minima_checked = 0;
  std::vector<std::string> shape_errors;
  std::string note;
  bool undecided = false;
};

enum class Status { match, mismatch, unverified, unstated, inconclusive };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::match: return "match";
    case Status::mismatch: return "mismatch";
    case Status::unverified: return "unverified";
    case Status::unstated: return "unstated";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

struct PropertyAudit {
  Property property = Property::convex;
  Expectation expected;
  std::optional<bool> observed;
  Status status = Status::unstated;
  std::string ground;  // first ground where the property fails
  std::vector<PosetElement> witness;
  bool implied = false;
  std::string note;
};

struct AuditReport {
  std::string entry;
  Kind kind = Kind::graph;
  Order order = Order::vertex;
  Bounds bounds;
  std::uint64_t grounds = 0;
  std::uint64_t elements = 0;
  std::array<PropertyAudit, 4> properties;
  std::uint64_t minima_checked = 0;
  std::uint64_t shape_error_count = 0;
  std::vector<std::string> shape_errors;  // first few, in universe order
  std::vector<std::string> undecided;     // grounds the search could not settle
  bool partial = false;

  bool ok() const {
    for (const auto& p : properties)
      if (p.status == Status::mismatch || p.status == Status::inconclusive) return false;
    return shape_error_count == 0;
  }
  bool has_mismatch() const {
    for (const auto& p : properties)
      if (p.status == Status::mismatch) return true;
    return shape_error_count != 0;
  }
};

struct AuditOptions {
  // Fields left at zero fall back to the entry's defaults.
  Bounds bounds;
  bool has_samples = false;  // bounds.samples overrides even when zero
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::uint64_t kernel_budget = kDefaultKernelBudget;
  bool fixtures = true;
  bool enumerate = true;          // include the enumerated universe
  std::string only_fixture;       // restrict to one named fixture
  std::size_t max_shape_errors = 20;
};

inline Bounds effective_bounds(const FamilyEntry& e, const AuditOptions& o) {
  Bounds b = e.bounds;
  auto take = [](int& dst, int src) {
    if (src) dst = src;
  };
  take(b.n, o.bounds.n);
  take(b.d, o.bounds.d);
  take(b.max_lines, o.bounds.max_lines);
  take(b.alphabet, o.bounds.alphabet);
  take(b.outcomes, o.bounds.outcomes);
  take(b.sample_size, o.bounds.sample_size);
  if (o.has_samples || o.bounds.samples) b.samples = o.bounds.samples;
  return b;
}

// ---------------------------------------------------------------------------
// Universes

inline constexpr int kSampleEdgeCap = 16;
inline constexpr std::uint64_t kUniverseCap = std::uint64_t{1} << 22;

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

inline void refuse(bool over, const std::string& what) {
  if (over) throw CapExceeded("universe bound refused: " + what);
}

/// Refuses bounds whose enumeration would exceed the desk-scale caps.
inline void check_bounds(Kind k, Order o, const Bounds& b) {
  refuse(b.samples < 0 || b.samples > 100000, "samples must be in 0..100000");
  switch (k) {
    case Kind::graph:
      refuse(b.n < 0 || b.n > 6, "graphs are enumerated exhaustively for n <= 6");
      refuse(b.samples && (b.sample_size < 1 || b.sample_size > (o == Order::vertex ? 12 : 8)),
             "sampled graph size out of range");
      break;
    case Kind::digraph:
      refuse(b.n < 0 || b.n > 4, "digraphs are enumerated exhaustively for n <= 4");
      refuse(b.samples && (b.sample_size < 1 || b.sample_size > (o == Order::vertex ? 12 : 6)),
             "sampled digraph size out of range");
      break;
    case Kind::dgraph:
      refuse(b.n < 0 || b.n > 7 || b.d < 1 || b.d > 6, "d-graphs need n <= 7 and 1 <= d <= 6");
      refuse(checked_pow(static_cast<std::uint64_t>(b.d), static_cast<std::uint64_t>(b.n * (b.n - 1) / 2)) >
                 (std::uint64_t{1} << 20),
             "more than 2^20 colourings at the top size");
      break;
    case Kind::matrix:
      refuse(b.max_lines < 1 || b.max_lines > 6 || b.alphabet < 1, "matrices need 1 <= max <= 6");
      refuse(checked_pow(static_cast<std::uint64_t>(b.alphabet),
                         static_cast<std::uint64_t>(b.max_lines * b.max_lines)) > 50'000'000,
             "more than 5*10^7 matrices at the top size");
      break;
    case Kind::bimatrix:
      refuse(b.max_lines < 1 || b.max_lines > 6 || b.alphabet < 1, "bimatrices need 1 <= max <= 6");
      refuse(checked_pow(static_cast<std::uint64_t>(b.alphabet),
                         static_cast<std::uint64_t>(2 * b.max_lines * b.max_lines)) > kUniverseCap,
             "more than 2^22 bimatrix games at the top size");
      refuse(b.samples && (b.sample_size < 1 || b.sample_size > 8), "sampled game size out of range");
      break;
    case Kind::gameform: {
      refuse(b.max_lines < 1 || b.max_lines > 4 || b.outcomes < 1 ||
                 b.outcomes > GameForm::kMaxOutcomes,
             "game forms need 1 <= max <= 4 and 1 <= outcomes <= 20");
      int cells = b.max_lines * b.max_lines;
      refuse(checked_pow(static_cast<std::uint64_t>(std::min(b.outcomes, cells)),
                         static_cast<std::uint64_t>(cells)) > (std::uint64_t{1} << 20),
             "more than 2^20 labellings at the top size");
      break;
    }
  }
}

/// Enumerated universes are shared between entries of the same kind.
template <class G, class Make>
const std::vector<G>& cached(const std::string& key, Make make) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const std::vector<G>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const std::vector<G>>(make());
  return *slot;
}

template <class G>
struct Case {
  std::string label;
  G ground;
  std::function<GroundResult(const FamilyOptions&)> custom;
};

inline std::uint64_t sample_seed(std::uint64_t seed, const std::string& id) {
  std::seed_seq seq(id.begin(), id.end());
  std::array<std::uint32_t, 2> s{};
  seq.generate(s.begin(), s.end());
  return seed ^ (std::uint64_t{s[0]} << 32 | s[1]);
}

// ---- fixture grounds ----

inline GroundResult circulant43_certificate(const FamilyOptions& opt);

template <class G>
std::vector<Case<G>> fixture_cases(const std::vector<std::string>& names);

template <>
inline std::vector<Case<Graph>> fixture_cases<Graph>(const std::vector<std::string>& names) {
  std::vector<Case<Graph>> out;
  for (const auto& n : names) {
    if (n == "wrochna") out.push_back({n, wrochna(), {}});
    else if (n == "c10-squared") out.push_back({n, cycle_power(10, 2), {}});
    else if (n == "house-with-chord") out.push_back({n, house_with_chord(), {}});
    else if (n == "cube") out.push_back({n, cube(), {}});
    else throw std::invalid_argument("unknown graph fixture '" + n + "'");
  }
  return out;
}

template <>
inline std::vector<Case<Digraph>> fixture_cases<Digraph>(const std::vector<std::string>& names) {
  std::vector<Case<Digraph>> out;
  for (const auto& n : names) {
    if (n == "G16(1,7,8)") out.push_back({n, circulant(16, {1, 7, 8}), {}});
    else if (n == "cycles-sharing-vertex") out.push_back({n, cycles_sharing_vertex(3, 3), {}});
    else if (n == "G43(1,7,8)") out.push_back({n, Digraph(), circulant43_certificate});
    else throw std::invalid_argument("unknown digraph fixture '" + n + "'");
  }
  return out;
}

template <>
inline std::vector<Case<DGraph>> fixture_cases<DGraph>(const std::vector<std::string>& names) {
  std::vector<Case<DGraph>> out;
  for (const auto& n : names) {
    if (n == "pi-sub-pi") out.push_back({n, pi_sub_pi(), {}});
    else if (n == "pi-with-apex") out.push_back({n, pi_with_apex(), {}});
    else if (n == "bull-sub-pi") out.push_back({n, bull_sub_pi(), {}});
    else if (n == "bull-sub-delta") out.push_back({n, bull_sub_delta(), {}});
    else if (n == "line-k33-2graph") out.push_back({n, line_knn_2graph(3), {}});
    else if (n == "bull") out.push_back({n, bull_dgraph(), {}});
    else throw std::invalid_argument("unknown d-graph fixture '" + n + "'");
  }
  return out;
}

template <>
inline std::vector<Case<MatrixGame>> fixture_cases<MatrixGame>(const std::vector<std::string>& names) {
  std::vector<Case<MatrixGame>> out;
  for (const auto& n : names) {
    if (n == "sp-fixture-4x4") out.push_back({n, sp_fixture_4x4(), {}});
    else if (n == "two-sp-fixture-2x3") out.push_back({n, two_sp_fixture_2x3(), {}});
    else throw std::invalid_argument("unknown matrix fixture '" + n + "'");
  }
  return out;
}

template <>
inline std::vector<Case<BimatrixGame>> fixture_cases<BimatrixGame>(const std::vector<std::string>& names) {
  std::vector<Case<BimatrixGame>> out;
  for (const auto& n : names) {
    if (n == "ne-free-3x3") out.push_back({n, make_ne_free_3x3(), {}});
    else if (n == "locally-minimal-ne-free-4x4") out.push_back({n, locally_minimal_ne_free_4x4(), {}});
    else if (n == "zero-sum-two-sp-2x3")
      out.push_back({n, BimatrixGame::zero_sum(two_sp_fixture_2x3()), {}});
    else throw std::invalid_argument("unknown bimatrix fixture '" + n + "'");
  }
  return out;
}

template <>
inline std::vector<Case<GameForm>> fixture_cases<GameForm>(const std::vector<std::string>& names) {
  std::vector<Case<GameForm>> out;
  for (const auto& n : names) {
    if (n == "ab-form-4x4") out.push_back({n, ab_form_4x4(), {}});
    else if (n == "locally-minimal-tight-4x4") out.push_back({n, locally_minimal_tight_4x4(), {}});
    else throw std::invalid_argument("unknown game form fixture '" + n + "'");
  }
  return out;
}

template <class G>
std::vector<Case<G>> label_all(const std::vector<G>& grounds) {
  std::vector<Case<G>> out;
  out.reserve(grounds.size());
  for (const auto& g : grounds) out.push_back({ground_label(g), g, {}});
  return out;
}

template <class G>
std::vector<Case<G>> enumerated_cases(const FamilyEntry& e, const Bounds& b, std::uint64_t seed);

template <>
inline std::vector<Case<Graph>> enumerated_cases<Graph>(const FamilyEntry& e, const Bounds& b,
                                                        std::uint64_t seed) {
  auto out = label_all(cached<Graph>("graph:" + std::to_string(b.n), [&] { return graphs_up_to_iso(b.n); }));
  std::mt19937_64 rng(sample_seed(seed, e.id()));
  int cap = e.order == Order::edge ? kSampleEdgeCap : 64;
  for (int i = 0; i < b.samples; ++i) {
    Graph g = random_graph(b.sample_size, cap, rng);
    out.push_back({"sample " + ground_label(g), g, {}});
  }
  return out;
}

template <>
inline std::vector<Case<Digraph>> enumerated_cases<Digraph>(const FamilyEntry& e, const Bounds& b,
                                                            std::uint64_t seed) {
  auto out = label_all(
      cached<Digraph>("digraph:" + std::to_string(b.n), [&] { return digraphs_up_to_iso(b.n); }));
  std::mt19937_64 rng(sample_seed(seed, e.id()));
  int cap = e.order == Order::edge ? kSampleEdgeCap : 64;
  for (int i = 0; i < b.samples; ++i) {
    Digraph d = random_digraph(b.sample_size, cap, rng);
    out.push_back({"sample " + ground_label(d), d, {}});
  }
  return out;
}

template <>
inline std::vector<Case<DGraph>> enumerated_cases<DGraph>(const FamilyEntry&, const Bounds& b,
                                                          std::uint64_t) {
  return label_all(cached<DGraph>("dgraph:" + std::to_string(b.n) + ":" + std::to_string(b.d),
                                  [&] { return dgraphs_up_to_iso(b.n, b.d); }));
}

template <>
inline std::vector<Case<MatrixGame>> enumerated_cases<MatrixGame>(const FamilyEntry&, const Bounds& b,
                                                                  std::uint64_t) {
  return label_all(cached<MatrixGame>(
      "matrix:" + std::to_string(b.max_lines) + ":" + std::to_string(b.alphabet),
      [&] { return doubly_lexical_matrices(b.max_lines, b.alphabet); }));
}

template <>
inline std::vector<Case<BimatrixGame>> enumerated_cases<BimatrixGame>(const FamilyEntry& e,
                                                                      const Bounds& b,
                                                                      std::uint64_t seed) {
  auto out = label_all(cached<BimatrixGame>(
      "bimatrix:" + std::to_string(b.max_lines) + ":" + std::to_string(b.alphabet),
      [&] { return all_bimatrices(b.max_lines, b.alphabet); }));
  std::mt19937_64 rng(sample_seed(seed, e.id()));
  for (int i = 0; i < b.samples; ++i) {
    auto g = random_bimatrix(b.sample_size, b.sample_size, b.alphabet, rng);
    out.push_back({"sample " + ground_label(g), g, {}});
  }
  return out;
}

template <>
inline std::vector<Case<GameForm>> enumerated_cases<GameForm>(const FamilyEntry&, const Bounds& b,
                                                              std::uint64_t) {
  return label_all(cached<GameForm>(
      "gameform:" + std::to_string(b.max_lines) + ":" + std::to_string(b.outcomes),
      [&] { return game_forms_up_to_iso(b.max_lines, b.outcomes); }));
}

// ---- shape checks ----

// Vertices of `within` form one cycle (each of degree 2, connected, at least 3).
inline int cycle_length(const std::vector<Mask>& adj, Mask within) {
  int len = popcount(within);
  if (len < 3) return 0;
  bool ok = true;
  for_each_bit(within, [&](int v) { ok = ok && popcount(adj[v] & within) == 2; });
  return ok && is_connected_on(adj, within) ? len : 0;
}

inline Mask non_isolated(const std::vector<Mask>& adj) {
  Mask s = 0;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (adj[v]) s |= bit(static_cast<int>(v));
  return s;
}

inline bool shape_holds(const Graph& g, const PosetElement& e, MinimaShape s) {
  auto odd_long = [](int len) { return len >= 5 && len % 2 == 1; };
  switch (s) {
    case MinimaShape::spanning_tree:
      return popcount(e.edges) == std::max(0, g.n() - 1) &&
             is_connected_on(g.spanning_adjacency(e.edges), g.vertex_mask());
    case MinimaShape::non_adjacent_pair: {
      if (popcount(e.vertices) != 2) return false;
      auto ids = mask_ids(e.vertices);
      return !g.adjacent(ids[0], ids[1]);
    }
    case MinimaShape::induced_ternary_cycle: {
      int len = cycle_length(g.adjacency(), e.vertices);
      return len && len % 3 == 0;
    }
    case MinimaShape::ternary_cycle_plus_isolated: {
      auto adj = g.spanning_adjacency(e.edges);
      int len = cycle_length(adj, non_isolated(adj));
      return len && len % 3 == 0;
    }
    case MinimaShape::odd_hole_or_antihole:
      return odd_long(cycle_length(g.adjacency(), e.vertices)) ||
             odd_long(cycle_length(complement_adjacency(g.adjacency(), e.vertices), e.vertices));
    case MinimaShape::odd_hole_plus_isolated: {
      auto adj = g.spanning_adjacency(e.edges);
      return odd_long(cycle_length(adj, non_isolated(adj)));
    }
    default: return false;
  }
}

inline bool shape_holds(const Digraph& d, const PosetElement& e, MinimaShape s) {
  switch (s) {
    case MinimaShape::missing_arc_pair: {
      if (popcount(e.vertices) != 2) return false;
      auto ids = mask_ids(e.vertices);
      return !(d.has_arc(ids[0], ids[1]) && d.has_arc(ids[1], ids[0]));
    }
    case MinimaShape::odd_directed_cycle_plus_isolated: {
      auto out = d.spanning_out(e.edges);
      auto in = reverse_adjacency(out);
      Mask on = non_isolated(out) | non_isolated(in);
      bool ok = popcount(on) % 2 == 1;
      for_each_bit(on, [&](int v) { ok = ok && popcount(out[v]) == 1 && popcount(in[v]) == 1; });
      return ok && is_strongly_connected_on(out, in, on);
    }
    default: return false;
  }
}

inline bool shape_holds(const DGraph& g, const PosetElement& e, MinimaShape s) {
  return s == MinimaShape::pi_or_delta && is_pi_or_delta_on(g, e.vertices);
}

template <class G>
bool shape_holds(const G&, const PosetElement& e, MinimaShape s) {
  switch (s) {
    case MinimaShape::two_by_two: return popcount(e.rows) == 2 && popcount(e.cols) == 2;
    case MinimaShape::single_cell: return popcount(e.rows) == 1 && popcount(e.cols) == 1;
    default: return false;
  }
}

template <class G>
bool local_shape_holds(const G& g, const PosetElement& e, LocalMinimaShape s) {
  if constexpr (std::is_same_v<G, Graph>) {
    if (s == LocalMinimaShape::partitionable) return is_partitionable(induced_subgraph(g, e.vertices));
  }
  if constexpr (std::is_same_v<G, BimatrixGame>) {
    if (s == LocalMinimaShape::permutation_witness)
      return find_permutation_witness(g.sub(e.rows, e.cols)).has_value();
  }
  return false;
}

template <class G>
GroundResult run_case(const FamilyEntry& entry, const Case<G>& c, const FamilyOptions& fopt) {
  if (c.custom) {
    GroundResult r = c.custom(fopt);
    r.label = c.label;
    return r;
  }
  GroundResult r;
  r.label = c.label;
  auto pred = find_family<G>(entry.family, fopt);
  GroundPoset<G> poset(c.ground, entry.order);
  ScanLimits limits;
  try {
    if (poset.size() > limits.max_elements) {
      // Too large to classify: certify that the whole ground is a local
      // minimum with a member below it, which refutes every property.
      auto cert = certify_not_convex(pred, poset, poset.top(), {}, limits);
      r.elements = 0;
      if (!cert) {
        r.undecided = true;
        r.note = "poset too large to classify and the top element is no non-convexity certificate";
        return r;
      }
      for (std::size_t p = 0; p < 4; ++p) {
        r.holds[p] = false;
        r.witness[p] = {cert->local_minimum, cert->member_below};
        r.implied[p] = p != 0;
      }
      r.note = "top element is a local minimum with member " + describe(cert->member_below) + " below it";
      return r;
    }
    auto rep = classify(pred, poset, limits);
    r.elements = rep.element_count;
    const Verdict* v[4] = {&rep.convex, &rep.strongly_convex, &rep.weakly_hereditary, &rep.hereditary};
    for (std::size_t p = 0; p < 4; ++p) {
      r.holds[p] = v[p]->holds;
      r.witness[p] = v[p]->witness;
    }
    if (entry.minima != MinimaShape::unstated) {
      for (const auto& m : rep.minima) {
        ++r.minima_checked;
        bool ok = entry.minima == MinimaShape::bottom ? m == poset.bottom()
                                                      : shape_holds(c.ground, m, entry.minima);
        if (!ok) r.shape_errors.push_back(c.label + ": minimum " + describe(m) + " is not " + entry.expected_minima);
      }
    }
    if (entry.local_minima != LocalMinimaShape::unstated) {
      for (const auto& m : rep.local_minima) {
        ++r.minima_checked;
        if (!local_shape_holds(c.ground, m, entry.local_minima))
          r.shape_errors.push_back(c.label + ": local minimum " + describe(m) + " fails the " +
                                   (entry.local_minima == LocalMinimaShape::partitionable
                                        ? "partitionability check"
                                        : "permutation-witness check"));
      }
    }
  } catch (const BudgetExhausted& ex) {
    r = GroundResult{};
    r.label = c.label;
    r.undecided = true;
    r.note = ex.what();
  }
  return r;
}

inline AuditReport aggregate(const FamilyEntry& entry, const Bounds& b,
                             const std::vector<GroundResult>& results, std::size_t max_errors) {
  AuditReport rep;
  rep.entry = entry.id();
  rep.kind = entry.kind;
  rep.order = entry.order;
  rep.bounds = b;
  rep.grounds = results.size();
  for (std::size_t p = 0; p < 4; ++p) {
    auto& pa = rep.properties[p];
    pa.property = kProperties[p];
    pa.expected = entry.expected[kProperties[p]];
    bool all_true = true;
    for (const auto& r : results) {
      if (r.holds[p] == false) {
        if (!pa.observed.has_value()) {
          pa.observed = false;
          pa.ground = r.label;
          pa.witness = r.witness[p];
          pa.implied = r.implied[p];
          pa.note = r.note;
        }
      } else if (!r.holds[p]) {
        all_true = false;
      }
    }
    if (!pa.observed && all_true) pa.observed = true;
    if (!pa.expected.value) pa.status = Status::unstated;
    else if (pa.expected.source == Source::unverified) pa.status = Status::unverified;
    else if (!pa.observed) pa.status = Status::inconclusive;
    else pa.status = *pa.observed == *pa.expected.value ? Status::match : Status::mismatch;
  }
  for (const auto& r : results) {
    rep.elements += r.elements;
    rep.minima_checked += r.minima_checked;
    rep.shape_error_count += r.shape_errors.size();
    for (const auto& s : r.shape_errors)
      if (rep.shape_errors.size() < max_errors) rep.shape_errors.push_back(s);
    if (r.undecided) {
      rep.partial = true;
      rep.undecided.push_back(r.label + ": " + r.note);
    }
  }
  return rep;
}

template <class G>
AuditReport audit_kind(const FamilyEntry& entry, const AuditOptions& opt) {
  Bounds b = effective_bounds(entry, opt);
  check_bounds(entry.kind, entry.order, b);
  std::vector<Case<G>> cases;
  if (opt.only_fixture.empty() && opt.enumerate) cases = enumerated_cases<G>(entry, b, opt.seed);
  if (opt.fixtures || !opt.only_fixture.empty()) {
    auto names = entry.fixtures;
    if (!opt.only_fixture.empty()) {
      if (std::find(names.begin(), names.end(), opt.only_fixture) == names.end())
        throw std::invalid_argument("entry " + entry.id() + " has no fixture '" + opt.only_fixture + "'");
      names = {opt.only_fixture};
    }
    for (auto& c : fixture_cases<G>(names)) {
      c.label = "fixture " + c.label;
      cases.push_back(std::move(c));
    }
  }
  FamilyOptions fopt{opt.kernel_budget};
  std::vector<GroundResult> results(cases.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases.size();) {
      try {
        results[i] = run_case(entry, cases[i], fopt);
      } catch (...) {
        std::lock_guard lock(fail_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(cases.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(entry, b, results, opt.max_shape_errors);
}

}  // namespace detail

/// Classifies every ground of the entry's universe and compares the combined
/// verdicts with the expected ones. A property holds when it holds on every
/// ground; it fails as soon as one ground fails it.
inline AuditReport audit_family(const FamilyEntry& entry, const AuditOptions& opt = {}) {
  switch (entry.kind) {
    case Kind::graph: return detail::audit_kind<Graph>(entry, opt);
    case Kind::digraph: return detail::audit_kind<Digraph>(entry, opt);
    case Kind::dgraph: return detail::audit_kind<DGraph>(entry, opt);
    case Kind::matrix: return detail::audit_kind<MatrixGame>(entry, opt);
    case Kind::bimatrix: return detail::audit_kind<BimatrixGame>(entry, opt);
    case Kind::gameform: return detail::audit_kind<GameForm>(entry, opt);
  }
  throw std::logic_error("unhandled kind");
}

namespace detail {

/// G43(1,7,8) under the edge order: kernel-less, every single-arc deletion has
/// a kernel, and its generator-1 Hamiltonian cycle (odd) is a kernel-less
/// member strictly below it. So it is a local but not a global minimum.
inline GroundResult circulant43_certificate(const FamilyOptions& opt) {
  GroundResult r;
  Digraph g = circulant(43, {1, 7, 8});
  auto whole = find_kernel(g, opt.kernel_budget);
  auto undecided = [&](const std::string& what) {
    r.undecided = true;
    r.note = "kernel search undecided on " + what;
    return r;
  };
  if (whole.status == SearchStatus::undecided) return undecided("the full circulant");
  std::string fail;
  if (whole.status == SearchStatus::found) fail = "the circulant has a kernel";
  for (auto [u, v] : g.arcs()) {
    if (!fail.empty()) break;
    Digraph h = g;
    h.remove_arc(u, v);
    auto k = find_kernel(h, opt.kernel_budget);
    if (k.status == SearchStatus::undecided)
      return undecided("the deletion of (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (k.status == SearchStatus::none)
      fail = "deleting (" + std::to_string(u) + "," + std::to_string(v) + ") leaves it kernel-less";
  }
  auto cyc = find_kernel(directed_cycle(43), opt.kernel_budget);
  if (fail.empty() && cyc.status != SearchStatus::none) fail = "the 43-cycle has a kernel";
  if (!fail.empty()) {
    r.undecided = true;
    r.note = "certificate failed: " + fail;
    return r;
  }
  for (std::size_t p = 0; p < 4; ++p) {
    r.holds[p] = false;
    r.implied[p] = p != 0;
  }
  r.note = "kernel-less; each of the 129 single-arc deletions has a kernel; the spanning "
           "43-cycle i -> i+1 is kernel-less";
  return r;
}

}  // namespace detail

}  // namespace convexfam

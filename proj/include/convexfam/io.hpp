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

// JSON and DIMACS input for every ground kind, and JSON output for grounds,
// classification reports, audit reports and the registry.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "convexfam/registry.hpp"

namespace convexfam {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the line or field at fault.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string field_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

inline std::string index_path(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

[[noreturn]] inline void fail_at(const std::string& path, const std::string& msg) {
  throw ParseError("field '" + path + "': " + msg);
}

inline const Json& need(const Json& obj, const std::string& key, const std::string& parent = "") {
  if (!obj.is_object()) throw ParseError("expected a JSON object at the top level");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field '" + field_path(parent, key) + "'");
  return *it;
}

inline long long need_int(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    double x = v.get<double>();
    if (std::floor(x) == x && std::abs(x) < 1e15) return static_cast<long long>(x);
  }
  fail_at(path, "expected an integer, got " + v.dump());
}

inline double need_number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail_at(path, "expected a number, got " + v.dump());
  double x = v.get<double>();
  if (!std::isfinite(x)) fail_at(path, "expected a finite number");
  return x;
}

inline const Json& need_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail_at(path, "expected an array, got " + v.dump());
  return v;
}

inline int need_vertex_count(const Json& obj) {
  long long n = need_int(need(obj, "n"), "n");
  if (n < 0 || n > kMaxGroundIds) fail_at("n", "must be in 0..64, got " + std::to_string(n));
  return static_cast<int>(n);
}

inline std::vector<VertexPair> read_pairs(const Json& obj) {
  const Json& edges = need_array(need(obj, "edges"), "edges");
  std::vector<VertexPair> out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::string p = index_path("edges", k);
    const Json& e = need_array(edges[k], p);
    if (e.size() != 2) fail_at(p, "expected [u, v], got " + e.dump());
    out.emplace_back(static_cast<int>(need_int(e[0], index_path(p, 0))),
                     static_cast<int>(need_int(e[1], index_path(p, 1))));
  }
  return out;
}

inline void check_directed(const Json& obj, bool want) {
  auto it = obj.find("directed");
  if (it == obj.end()) return;
  if (!it->is_boolean()) fail_at("directed", "expected true or false");
  if (it->get<bool>() != want)
    fail_at("directed", want ? "is false but a digraph was requested"
                             : "is true but an undirected graph was requested");
}

template <class T, class Read>
Grid<T> read_grid(const Json& obj, const std::string& key, Read read) {
  const Json& rows = need_array(need(obj, key), key);
  if (rows.empty()) fail_at(key, "needs at least one row");
  std::vector<std::vector<T>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string p = index_path(key, i);
    const Json& row = need_array(rows[i], p);
    if (row.empty()) fail_at(p, "needs at least one entry");
    if (i > 0 && row.size() != rows[0].size())
      fail_at(p, "has " + std::to_string(row.size()) + " entries, row 0 has " +
                     std::to_string(rows[0].size()));
    auto& out = cells.emplace_back();
    for (std::size_t j = 0; j < row.size(); ++j) out.push_back(read(row[j], index_path(p, j)));
  }
  if (rows.size() > static_cast<std::size_t>(kMaxGroundIds) ||
      rows[0].size() > static_cast<std::size_t>(kMaxGroundIds))
    fail_at(key, "at most 64 rows and 64 columns are supported");
  return Grid<T>::from_rows(cells);
}

inline void reject_field(const Json& obj, const std::string& key, const std::string& why) {
  if (obj.contains(key)) fail_at(key, why);
}

}  // namespace detail

/// Parses a JSON document; syntax errors report line and column.
inline Json parse_json_text(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError("empty input");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg);
  }
}

// ---------------------------------------------------------------------------
// Ground input

/// {"directed": false, "n": 5, "edges": [[1,2], ...]}, ids 1-based.
inline Graph graph_from_json(const Json& obj) {
  detail::check_directed(obj, false);
  int n = detail::need_vertex_count(obj);
  auto pairs = detail::read_pairs(obj);
  Graph g(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    try {
      g.add_edge(pairs[k].first, pairs[k].second);
    } catch (const std::exception& e) {
      detail::fail_at(detail::index_path("edges", k), e.what());
    }
  }
  return g;
}

/// Same layout with "directed": true; each pair [u,v] is the arc u → v.
inline Digraph digraph_from_json(const Json& obj) {
  detail::check_directed(obj, true);
  int n = detail::need_vertex_count(obj);
  auto pairs = detail::read_pairs(obj);
  Digraph d(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    try {
      d.add_arc(pairs[k].first, pairs[k].second);
    } catch (const std::exception& e) {
      detail::fail_at(detail::index_path("edges", k), e.what());
    }
  }
  return d;
}

namespace detail {

struct DimacsPairs {
  int n = 0;
  std::vector<VertexPair> pairs;
  std::vector<int> lines;
};

// "c" comments, one "p <format> n m" line, then "e u v" (or "a u v") lines.
inline DimacsPairs read_dimacs(std::string_view text) {
  DimacsPairs out;
  bool have_p = false;
  long long declared = 0;
  int p_line = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto err = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (have_p) throw err("second 'p' line");
      std::string format;
      long long n = -1;
      if (!(ls >> format >> n >> declared)) throw err("expected 'p <format> <n> <m>'");
      if (n < 0 || n > kMaxGroundIds) throw err("vertex count must be in 0..64");
      out.n = static_cast<int>(n);
      have_p = true;
      p_line = lineno;
    } else if (tag == "e" || tag == "a") {
      if (!have_p) throw err("edge line before the 'p' line");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw err("expected '" + tag + " <u> <v>'");
      if (u < 1 || u > out.n || v < 1 || v > out.n)
        throw err("vertex outside 1.." + std::to_string(out.n));
      out.pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
      out.lines.push_back(lineno);
    } else {
      throw err("unknown line type '" + tag + "'");
    }
  }
  if (!have_p) throw ParseError("no 'p' line found");
  if (declared != static_cast<long long>(out.pairs.size()))
    throw ParseError("line " + std::to_string(p_line) + ": declares " + std::to_string(declared) +
                     " edges but " + std::to_string(out.pairs.size()) + " follow");
  return out;
}

}  // namespace detail

inline Graph graph_from_dimacs(std::string_view text) {
  auto in = detail::read_dimacs(text);
  Graph g(in.n);
  for (std::size_t k = 0; k < in.pairs.size(); ++k) {
    try {
      g.add_edge(in.pairs[k].first, in.pairs[k].second);
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(in.lines[k]) + ": " + e.what());
    }
  }
  return g;
}

inline Digraph digraph_from_dimacs(std::string_view text) {
  auto in = detail::read_dimacs(text);
  Digraph d(in.n);
  for (std::size_t k = 0; k < in.pairs.size(); ++k) {
    try {
      d.add_arc(in.pairs[k].first, in.pairs[k].second);
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(in.lines[k]) + ": " + e.what());
    }
  }
  return d;
}

/// {"n": 4, "d": 2, "edges": [[u,v,c], ...]} with every pair coloured once.
inline DGraph dgraph_from_json(const Json& obj) {
  int n = detail::need_vertex_count(obj);
  long long d = detail::need_int(detail::need(obj, "d"), "d");
  if (d < 1 || d > 64) detail::fail_at("d", "must be in 1..64, got " + std::to_string(d));
  const Json& edges = detail::need_array(detail::need(obj, "edges"), "edges");
  std::vector<ColoredEdge> list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::string p = detail::index_path("edges", k);
    const Json& e = detail::need_array(edges[k], p);
    if (e.size() != 3) detail::fail_at(p, "expected [u, v, colour], got " + e.dump());
    int u = static_cast<int>(detail::need_int(e[0], detail::index_path(p, 0)));
    int v = static_cast<int>(detail::need_int(e[1], detail::index_path(p, 1)));
    int c = static_cast<int>(detail::need_int(e[2], detail::index_path(p, 2)));
    if (u < 1 || u > n || v < 1 || v > n || u == v)
      detail::fail_at(p, "needs two distinct vertices in 1.." + std::to_string(n));
    if (c < 1 || c > d) detail::fail_at(p, "colour must be in 1.." + std::to_string(d));
    list.emplace_back(u, v, c);
  }
  try {
    return DGraph::from_edges(n, static_cast<int>(d), list);
  } catch (const std::exception& e) {
    detail::fail_at("edges", e.what());
  }
}

/// {"a": [[...], ...]}.
inline MatrixGame matrix_from_json(const Json& obj) {
  detail::reject_field(obj, "b", "a matrix game has one payoff grid; use kind bimatrix for two");
  return detail::read_grid<double>(obj, "a", detail::need_number);
}

/// {"a": [[...]], "b": [[...]]} of equal shape.
inline BimatrixGame bimatrix_from_json(const Json& obj) {
  auto a = detail::read_grid<double>(obj, "a", detail::need_number);
  auto b = detail::read_grid<double>(obj, "b", detail::need_number);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    detail::fail_at("b", "shape " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                             " differs from a's " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
  return {a, b};
}

/// {"outcomes": [["w1","w2"], ...]}; integer labels are read as their decimal text.
inline GameForm gameform_from_json(const Json& obj) {
  auto label = [](const Json& v, const std::string& path) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    detail::fail_at(path, "expected an outcome label (string or integer), got " + v.dump());
  };
  auto g = detail::read_grid<std::string>(obj, "outcomes", label);
  auto form = GameForm::from_labels(g.to_rows());
  if (form.outcome_count() > GameForm::kMaxOutcomes)
    detail::fail_at("outcomes", "at most " + std::to_string(GameForm::kMaxOutcomes) +
                                    " distinct outcomes are supported");
  return form;
}

/// Reads a ground of kind G from text: JSON, or DIMACS for graphs and digraphs.
template <class G>
G read_ground(std::string_view text);

namespace detail {
inline bool looks_like_json(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && (text[pos] == '{' || text[pos] == '[');
}
inline void require_text(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty input");
}
}  // namespace detail

template <>
inline Graph read_ground<Graph>(std::string_view text) {
  detail::require_text(text);
  return detail::looks_like_json(text) ? graph_from_json(parse_json_text(text)) : graph_from_dimacs(text);
}
template <>
inline Digraph read_ground<Digraph>(std::string_view text) {
  detail::require_text(text);
  return detail::looks_like_json(text) ? digraph_from_json(parse_json_text(text))
                                       : digraph_from_dimacs(text);
}
template <>
inline DGraph read_ground<DGraph>(std::string_view text) {
  return dgraph_from_json(parse_json_text(text));
}
template <>
inline MatrixGame read_ground<MatrixGame>(std::string_view text) {
  return matrix_from_json(parse_json_text(text));
}
template <>
inline BimatrixGame read_ground<BimatrixGame>(std::string_view text) {
  return bimatrix_from_json(parse_json_text(text));
}
template <>
inline GameForm read_ground<GameForm>(std::string_view text) {
  return gameform_from_json(parse_json_text(text));
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

// Integral payoffs print without a fractional part.
inline Json number_json(double x) {
  if (std::floor(x) == x && std::abs(x) < 1e15) return static_cast<long long>(x);
  return x;
}

inline Json grid_json(const Grid<double>& g) {
  Json rows = Json::array();
  for (int i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.cols(); ++j) row.push_back(number_json(g(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json ids_json(Mask m) { return Json(mask_ids(m)); }

}  // namespace detail

inline Json to_json(const Graph& g) {
  Json pairs = Json::array();
  for (auto [u, v] : g.edges()) pairs.push_back({u, v});
  return {{"directed", false}, {"n", g.n()}, {"edges", pairs}};
}

inline Json to_json(const Digraph& d) {
  Json pairs = Json::array();
  for (auto [u, v] : d.arcs()) pairs.push_back({u, v});
  return {{"directed", true}, {"n", d.n()}, {"edges", pairs}};
}

inline Json to_json(const DGraph& g) {
  Json edges = Json::array();
  for (auto [u, v, c] : g.edges()) edges.push_back({u, v, c});
  return {{"n", g.n()}, {"d", g.d()}, {"edges", edges}};
}

inline Json to_json(const MatrixGame& m) { return {{"a", detail::grid_json(m)}}; }

inline Json to_json(const BimatrixGame& g) {
  return {{"a", detail::grid_json(g.a)}, {"b", detail::grid_json(g.b)}};
}

inline Json to_json(const GameForm& f) { return {{"outcomes", f.to_labels()}}; }

/// Element by ids: vertex ids, edge ids (positions in the ground's sorted edge
/// list) or row and column ids.
inline Json to_json(const PosetElement& e) {
  Json j = {{"text", describe(e)}};
  switch (e.kind) {
    case Order::vertex: j["vertices"] = detail::ids_json(e.vertices); break;
    case Order::edge: j["edges"] = detail::ids_json(e.edges); break;
    case Order::line:
      j["rows"] = detail::ids_json(e.rows);
      j["cols"] = detail::ids_json(e.cols);
      break;
  }
  return j;
}

/// As above, with edge elements also spelled out as vertex pairs.
template <class G>
Json element_json(const G& ground, const PosetElement& e) {
  Json j = to_json(e);
  if constexpr (std::is_same_v<G, Graph> || std::is_same_v<G, Digraph>) {
    if (e.kind == Order::edge) {
      Json pairs = Json::array();
      const auto& all = ground.edges();
      for (int id : mask_ids(e.edges)) pairs.push_back({all[id - 1].first, all[id - 1].second});
      j["pairs"] = pairs;
    }
  }
  return j;
}

template <class G>
Json elements_json(const G& ground, const std::vector<PosetElement>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back(element_json(ground, e));
  return out;
}

inline Json elements_json(const std::vector<PosetElement>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back(to_json(e));
  return out;
}

template <class G>
Json classification_json(const G& ground, const ClassificationReport& r) {
  Json verdicts = Json::object();
  auto put = [&](std::string_view name, const Verdict& v) {
    verdicts[std::string(name)] = {{"holds", v.holds}, {"witness", elements_json(ground, v.witness)}};
  };
  put("convex", r.convex);
  put("strongly_convex", r.strongly_convex);
  put("weakly_hereditary", r.weakly_hereditary);
  put("hereditary", r.hereditary);
  return {{"family", r.family},
          {"order", to_string(r.order)},
          {"elements", r.element_count},
          {"minima", elements_json(ground, r.minima)},
          {"local_minima", elements_json(ground, r.local_minima)},
          {"verdicts", verdicts}};
}

inline Json to_json(const Expectation& e) {
  return {{"value", e.value ? Json(*e.value) : Json(nullptr)}, {"source", to_string(e.source)}};
}

inline Json to_json(const Bounds& b) {
  Json j = Json::object();
  auto put = [&](const char* key, int v) {
    if (v) j[key] = v;
  };
  put("n", b.n);
  put("d", b.d);
  put("max_lines", b.max_lines);
  put("alphabet", b.alphabet);
  put("outcomes", b.outcomes);
  put("samples", b.samples);
  put("sample_size", b.sample_size);
  return j;
}

inline Json to_json(const FamilyEntry& e) {
  Json expected = Json::object();
  for (Property p : kProperties) expected[std::string(to_string(p))] = to_json(e.expected[p]);
  return {{"id", e.id()},
          {"family", e.family},
          {"kind", to_string(e.kind)},
          {"order", to_string(e.order)},
          {"expected", expected},
          {"minima", to_string(e.minima)},
          {"local_minima", to_string(e.local_minima)},
          {"expected_minima", e.expected_minima},
          {"anchor", e.anchor},
          {"bounds", to_json(e.bounds)},
          {"fixtures", e.fixtures},
          {"note", e.note}};
}

inline Json registry_json() {
  Json entries = Json::array();
  for (const auto& e : list_families()) entries.push_back(to_json(e));
  return {{"entries", entries}};
}

inline Json to_json(const PropertyAudit& p) {
  Json j = {{"property", to_string(p.property)},
            {"expected", to_json(p.expected)},
            {"observed", p.observed ? Json(*p.observed) : Json(nullptr)},
            {"status", to_string(p.status)}};
  if (!p.ground.empty()) {
    j["ground"] = p.ground;
    j["witness"] = elements_json(p.witness);
    j["implied"] = p.implied;
  }
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

inline Json to_json(const AuditReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  return {{"entry", r.entry},
          {"kind", to_string(r.kind)},
          {"order", to_string(r.order)},
          {"bounds", to_json(r.bounds)},
          {"grounds", r.grounds},
          {"elements", r.elements},
          {"properties", props},
          {"minima_checked", r.minima_checked},
          {"shape_error_count", r.shape_error_count},
          {"shape_errors", r.shape_errors},
          {"undecided", r.undecided},
          {"partial", r.partial},
          {"ok", r.ok()}};
}

}  // namespace convexfam

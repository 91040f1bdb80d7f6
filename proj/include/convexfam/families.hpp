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

// Named family predicates for every ground kind.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convexfam/cycles.hpp"
#include "convexfam/dgraph.hpp"
#include "convexfam/game_form.hpp"
#include "convexfam/graph.hpp"
#include "convexfam/kernel.hpp"
#include "convexfam/matrix_game.hpp"
#include "convexfam/perfect.hpp"

namespace convexfam {

/// Kernel search hit its node budget while deciding membership.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Adjacency of the element plus the vertices it lives on.
struct GraphView {
  std::vector<Mask> adj;
  Mask within = 0;
};

inline GraphView view_of(const Graph& g, const PosetElement& e) {
  if (e.kind == Order::edge) return {g.spanning_adjacency(e.edges), g.vertex_mask()};
  return {g.adjacency(), e.vertices};
}

struct DigraphView {
  std::vector<Mask> out, in;
  Mask within = 0;
};

inline DigraphView view_of(const Digraph& d, const PosetElement& e) {
  if (e.kind == Order::edge) {
    auto out = d.spanning_out(e.edges);
    auto in = reverse_adjacency(out);
    return {std::move(out), std::move(in), d.vertex_mask()};
  }
  return {d.out_adjacency(), d.in_adjacency(), e.vertices};
}

inline Digraph element_digraph(const Digraph& d, const PosetElement& e) {
  return e.kind == Order::edge ? d.spanning_subgraph(e.edges) : induced_subgraph(d, e.vertices);
}

template <class Ground, class F>
FamilyPredicate<Ground> make(std::string name, F f) {
  return {std::move(name), std::move(f)};
}

}  // namespace detail

/// Kernel existence of the element; throws BudgetExhausted when undecided.
inline bool element_has_kernel(const Digraph& d, const PosetElement& e,
                               std::uint64_t budget = kDefaultKernelBudget) {
  auto r = find_kernel(detail::element_digraph(d, e), budget);
  if (r.status == SearchStatus::undecided)
    throw BudgetExhausted("kernel search undecided on " + describe(e));
  return r.status == SearchStatus::found;
}

struct FamilyOptions {
  std::uint64_t kernel_budget = kDefaultKernelBudget;
};

template <class Ground>
std::vector<FamilyPredicate<Ground>> families_for(const FamilyOptions& opt = {});

template <>
inline std::vector<FamilyPredicate<Graph>> families_for<Graph>(const FamilyOptions&) {
  using detail::make;
  using detail::view_of;
  auto chi_eq_omega = [](const Graph& g, const PosetElement& e) {
    auto v = view_of(g, e);
    return chromatic_number_on(v.adj, v.within) == clique_number_on(v.adj, v.within);
  };
  auto connected = [](const Graph& g, const PosetElement& e) {
    auto v = view_of(g, e);
    return is_connected_on(v.adj, v.within);
  };
  auto ternary = [](const Graph& g, const PosetElement& e) {
    auto v = view_of(g, e);
    return is_ternary_on(v.adj, v.within);
  };
  auto perfect = [](const Graph& g, const PosetElement& e) {
    auto v = view_of(g, e);
    return is_perfect_spgt_on(v.adj, v.within);
  };
  return {
      make<Graph>("connected", connected),
      make<Graph>("disconnected", [=](const Graph& g, const PosetElement& e) { return !connected(g, e); }),
      make<Graph>("ternary", ternary),
      make<Graph>("non-ternary", [=](const Graph& g, const PosetElement& e) { return !ternary(g, e); }),
      make<Graph>("perfect", perfect),
      make<Graph>("imperfect", [=](const Graph& g, const PosetElement& e) { return !perfect(g, e); }),
      make<Graph>("chi-equals-omega", chi_eq_omega),
      make<Graph>("chi-exceeds-omega",
                  [=](const Graph& g, const PosetElement& e) { return !chi_eq_omega(g, e); }),
  };
}

template <>
inline std::vector<FamilyPredicate<Digraph>> families_for<Digraph>(const FamilyOptions& opt) {
  using detail::make;
  std::uint64_t b = opt.kernel_budget;
  auto sc = [](const Digraph& d, const PosetElement& e) {
    auto v = detail::view_of(d, e);
    return is_strongly_connected_on(v.out, v.in, v.within);
  };
  return {
      make<Digraph>("strongly-connected", sc),
      make<Digraph>("not-strongly-connected",
                    [=](const Digraph& d, const PosetElement& e) { return !sc(d, e); }),
      make<Digraph>("kernel-less",
                    [b](const Digraph& d, const PosetElement& e) { return !element_has_kernel(d, e, b); }),
      make<Digraph>("with-kernel",
                    [b](const Digraph& d, const PosetElement& e) { return element_has_kernel(d, e, b); }),
  };
}

template <>
inline std::vector<FamilyPredicate<DGraph>> families_for<DGraph>(const FamilyOptions&) {
  using detail::make;
  auto cis = [](const DGraph& g, const PosetElement& e) { return is_cis_on(g, e.vertices).cis; };
  return {
      make<DGraph>("cc", [](const DGraph& g, const PosetElement& e) { return is_cc_on(g, e.vertices); }),
      make<DGraph>("not-cc",
                   [](const DGraph& g, const PosetElement& e) { return !is_cc_on(g, e.vertices); }),
      make<DGraph>("cis", cis),
      make<DGraph>("not-cis", [=](const DGraph& g, const PosetElement& e) { return !cis(g, e); }),
      make<DGraph>("pi-delta-free",
                   [](const DGraph& g, const PosetElement& e) {
                     return !find_pi_on(g, e.vertices) && !find_delta_on(g, e.vertices);
                   }),
  };
}

template <>
inline std::vector<FamilyPredicate<MatrixGame>> families_for<MatrixGame>(const FamilyOptions&) {
  using detail::make;
  return {
      make<MatrixGame>("sp-free",
                       [](const MatrixGame& m, const PosetElement& e) {
                         return !e.is_empty_submatrix() && !has_sp_on(m, e.rows, e.cols);
                       }),
      make<MatrixGame>("has-sp",
                       [](const MatrixGame& m, const PosetElement& e) {
                         return has_sp_on(m, e.rows, e.cols);
                       }),
      make<MatrixGame>("absolutely-determined",
                       [](const MatrixGame& m, const PosetElement& e) {
                         return is_absolutely_determined_on(m, e.rows, e.cols);
                       }),
  };
}

template <>
inline std::vector<FamilyPredicate<BimatrixGame>> families_for<BimatrixGame>(const FamilyOptions&) {
  using detail::make;
  return {
      make<BimatrixGame>("ne-free",
                         [](const BimatrixGame& g, const PosetElement& e) {
                           return !e.is_empty_submatrix() && !has_ne_on(g, e.rows, e.cols);
                         }),
      make<BimatrixGame>("has-ne",
                         [](const BimatrixGame& g, const PosetElement& e) {
                           return has_ne_on(g, e.rows, e.cols);
                         }),
  };
}

template <>
inline std::vector<FamilyPredicate<GameForm>> families_for<GameForm>(const FamilyOptions&) {
  using detail::make;
  return {
      make<GameForm>("tight",
                     [](const GameForm& f, const PosetElement& e) {
                       return is_tight_on(f, e.rows, e.cols).tight;
                     }),
      make<GameForm>("not-tight",
                     [](const GameForm& f, const PosetElement& e) {
                       return !e.is_empty_submatrix() && !is_tight_on(f, e.rows, e.cols).tight;
                     }),
      make<GameForm>("totally-tight",
                     [](const GameForm& f, const PosetElement& e) {
                       return is_totally_tight_on(f, e.rows, e.cols);
                     }),
      make<GameForm>("not-totally-tight",
                     [](const GameForm& f, const PosetElement& e) {
                       return !is_totally_tight_on(f, e.rows, e.cols);
                     }),
  };
}

template <class Ground>
std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (const auto& f : families_for<Ground>()) out.push_back(f.name);
  return out;
}

/// Looks up a family by name; unknown names list the valid ones.
template <class Ground>
FamilyPredicate<Ground> find_family(std::string_view name, const FamilyOptions& opt = {}) {
  std::string known;
  for (auto& f : families_for<Ground>(opt)) {
    if (f.name == name) return f;
    known += (known.empty() ? "" : ", ") + f.name;
  }
  throw std::invalid_argument("unknown " + std::string(ground_traits<Ground>::name) + " family '" +
                              std::string(name) + "' (known: " + known + ")");
}

}  // namespace convexfam

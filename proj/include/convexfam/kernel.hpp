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

// Kernels of digraphs: verification with certificates, backtracking search
// with unit propagation and a node budget, exact counting, circulants.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "convexfam/bits.hpp"
#include "convexfam/graph.hpp"

namespace convexfam {

/// A verified kernel: for every vertex outside it, one arc into it.
struct KernelCertificate {
  Mask kernel = 0;
  std::vector<VertexPair> domination;  // (v, w): v outside, w in the kernel
};

/// Independence fails on the arc `violation`, or domination fails at the
/// vertex `violation.first` (second is 0 then).
struct KernelViolation {
  bool independence = false;
  VertexPair violation{0, 0};
};

inline std::variant<KernelCertificate, KernelViolation> check_kernel(const Digraph& d, Mask k) {
  if (!is_subset(k, d.vertex_mask()))
    throw std::invalid_argument("kernel candidate contains ids outside 1.." + std::to_string(d.n()));
  const auto& out = d.out_adjacency();
  KernelCertificate cert{k, {}};
  for (int v = 0; v < d.n(); ++v) {
    if ((k >> v) & 1) {
      if (Mask bad = out[v] & k)
        return KernelViolation{true, {v + 1, lowest(bad) + 1}};
    } else {
      Mask hit = out[v] & k;
      if (!hit) return KernelViolation{false, {v + 1, 0}};
      cert.domination.emplace_back(v + 1, lowest(hit) + 1);
    }
  }
  return cert;
}

inline std::optional<KernelCertificate> kernel_certificate(const Digraph& d, Mask k) {
  auto r = check_kernel(d, k);
  if (auto* c = std::get_if<KernelCertificate>(&r)) return *c;
  return std::nullopt;
}

inline bool is_kernel(const Digraph& d, Mask k) { return kernel_certificate(d, k).has_value(); }

inline bool is_kernel(const Digraph& d, const std::vector<int>& ids) {
  return is_kernel(d, mask_from_ids(ids, d.n()));
}

enum class SearchStatus { found, none, undecided };

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::undecided: return "undecided";
  }
  return "?";
}

struct KernelSearchResult {
  SearchStatus status = SearchStatus::undecided;
  std::optional<Mask> kernel;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultKernelBudget = 50'000'000;

/// Backtracking kernel search. Each node fixes one vertex in or out of the
/// kernel and then propagates: a kernel vertex pushes all its neighbours
/// out, and an outside vertex with a single remaining candidate successor
/// pulls that successor in.
class KernelSearch {
 public:
  explicit KernelSearch(const Digraph& d, std::uint64_t node_budget = kDefaultKernelBudget)
      : out_(d.out_adjacency()), in_(d.in_adjacency()), all_(d.vertex_mask()),
        budget_(node_budget) {}

  KernelSearchResult find() {
    KernelSearchResult r;
    nodes_ = 0;
    exhausted_ = false;
    std::optional<Mask> found;
    run(State{}, [&](Mask k) {
      found = k;
      return true;
    });
    r.nodes = nodes_;
    if (found) {
      r.status = SearchStatus::found;
      r.kernel = found;
    } else {
      r.status = exhausted_ ? SearchStatus::undecided : SearchStatus::none;
    }
    return r;
  }

  /// Number of kernels; nullopt when the budget ran out.
  std::optional<std::uint64_t> count() {
    nodes_ = 0;
    exhausted_ = false;
    std::uint64_t c = 0;
    run(State{}, [&](Mask) {
      ++c;
      return false;
    });
    if (exhausted_) return std::nullopt;
    return c;
  }

  std::vector<Mask> all_kernels() {
    nodes_ = 0;
    exhausted_ = false;
    std::vector<Mask> ks;
    run(State{}, [&](Mask k) {
      ks.push_back(k);
      return false;
    });
    if (exhausted_) throw CapExceeded("kernel enumeration budget exhausted");
    return ks;
  }

 private:
  struct State {
    Mask in = 0;
    Mask out = 0;
  };

  // Returns false on contradiction.
  bool propagate(State& s) const {
    for (int v = 0; v < static_cast<int>(out_.size()); ++v)
      if ((out_[v] >> v) & 1) s.out |= bit(v);
    bool changed = true;
    while (changed) {
      changed = false;
      if (s.in & s.out) return false;
      Mask forced_out = 0;
      for_each_bit(s.in, [&](int v) { forced_out |= out_[v] | in_[v]; });
      if (forced_out & s.in) return false;
      if (forced_out & ~s.out) {
        s.out |= forced_out;
        changed = true;
      }
      Mask unknown = all_ & ~s.in & ~s.out;
      bool bad = false;
      for_each_bit(s.out, [&](int v) {
        if (bad || (out_[v] & s.in)) return;
        Mask cand = out_[v] & unknown;
        if (cand == 0) {
          bad = true;
        } else if ((cand & (cand - 1)) == 0) {
          s.in |= cand;
          unknown &= ~cand;
          changed = true;
        }
      });
      if (bad) return false;
    }
    return true;
  }

  template <class OnKernel>
  bool run(State s, OnKernel&& on_kernel) {
    if (exhausted_) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return true;
    }
    if (!propagate(s)) return false;
    Mask unknown = all_ & ~s.in & ~s.out;
    if (unknown == 0) return on_kernel(s.in);
    int v = pick(s, unknown);
    State a = s;
    a.in |= bit(v);
    if (run(a, on_kernel)) return true;
    State b = s;
    b.out |= bit(v);
    return run(b, on_kernel);
  }

  // Lowest candidate successor of the lowest unsatisfied outside vertex,
  // otherwise the lowest undecided vertex.
  int pick(const State& s, Mask unknown) const {
    int best = -1;
    int best_count = 65;
    for_each_bit(s.out, [&](int v) {
      if (out_[v] & s.in) return;
      int c = popcount(out_[v] & unknown);
      if (c < best_count) {
        best_count = c;
        best = lowest(out_[v] & unknown);
      }
    });
    return best >= 0 ? best : lowest(unknown);
  }

  const std::vector<Mask>& out_;
  const std::vector<Mask>& in_;
  Mask all_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

inline KernelSearchResult find_kernel(const Digraph& d,
                                      std::uint64_t node_budget = kDefaultKernelBudget) {
  return KernelSearch(d, node_budget).find();
}

inline std::optional<std::uint64_t> count_kernels(
    const Digraph& d, std::uint64_t node_budget = kDefaultKernelBudget) {
  return KernelSearch(d, node_budget).count();
}

/// Circulant digraph on 1..n with arcs i -> i+l (mod n) for each generator l.
/// A generator divisible by n would create loops and is rejected unless the
/// caller passes Loops::allow.
inline Digraph circulant(int n, const std::vector<int>& gens, Loops loops = Loops::reject) {
  if (n < 1) throw std::invalid_argument("circulant needs n >= 1");
  Digraph d(n, loops);
  for (int l : gens) {
    if (l < 1) throw std::invalid_argument("circulant generators must be positive");
    if (l % n == 0 && loops == Loops::reject)
      throw std::invalid_argument("generator " + std::to_string(l) + " is divisible by " +
                                  std::to_string(n) + " and would create loops");
    for (int i = 1; i <= n; ++i) d.add_arc(i, (i - 1 + l) % n + 1);
  }
  return d;
}

inline Digraph delete_vertex(const Digraph& d, int v) {
  return induced_subgraph(d, d.vertex_mask() & ~bit(v - 1));
}

}  // namespace convexfam

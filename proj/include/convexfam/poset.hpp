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

// Finite containment posets over a ground object and the minima / local
// minima machinery used to classify a family as convex, strongly convex,
// weakly hereditary or hereditary.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "convexfam/bits.hpp"

namespace convexfam {

enum class Order { vertex, edge, line };

inline std::string_view to_string(Order o) {
  switch (o) {
    case Order::vertex: return "vertex";
    case Order::edge: return "edge";
    case Order::line: return "line";
  }
  return "?";
}

inline Order parse_order(std::string_view s) {
  if (s == "vertex") return Order::vertex;
  if (s == "edge") return Order::edge;
  if (s == "line") return Order::line;
  throw std::invalid_argument("unknown order '" + std::string(s) +
                              "' (expected vertex|edge|line)");
}

/// Thrown when an exhaustive scan would exceed its element cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subobject of the ground: a vertex subset (induced order), a spanning
/// edge subset (edge order) or a row/column subset (line order).
struct PosetElement {
  Order kind = Order::vertex;
  Mask vertices = 0;
  Mask edges = 0;
  Mask rows = 0;
  Mask cols = 0;

  static PosetElement vertex_subset(Mask v) {
    return {Order::vertex, v, 0, 0, 0};
  }
  static PosetElement edge_subset(Mask all_vertices, Mask e) {
    return {Order::edge, all_vertices, e, 0, 0};
  }
  /// Any element with no rows or no columns is the single empty submatrix.
  static PosetElement line_subset(Mask r, Mask c) {
    if (r == 0 || c == 0) r = c = 0;
    return {Order::line, 0, 0, r, c};
  }

  bool is_empty_submatrix() const { return kind == Order::line && rows == 0; }

  bool operator==(const PosetElement&) const = default;
};

inline std::string describe(const PosetElement& e) {
  std::ostringstream os;
  auto list = [&os](Mask m) {
    os << '{';
    bool first = true;
    for (int id : mask_ids(m)) {
      os << (first ? "" : ",") << id;
      first = false;
    }
    os << '}';
  };
  switch (e.kind) {
    case Order::vertex: os << "V"; list(e.vertices); break;
    case Order::edge: os << "E"; list(e.edges); break;
    case Order::line:
      os << "R";
      list(e.rows);
      os << "xC";
      list(e.cols);
      break;
  }
  return os.str();
}

/// Deterministic witness order: lexicographic on sorted id sequences.
struct ElementLess {
  bool operator()(const PosetElement& a, const PosetElement& b) const {
    if (a.kind == Order::line) {
      if (a.rows != b.rows) return mask_lex_less(a.rows, b.rows);
      return mask_lex_less(a.cols, b.cols);
    }
    if (a.vertices != b.vertices) return mask_lex_less(a.vertices, b.vertices);
    return mask_lex_less(a.edges, b.edges);
  }
};

/// a ⪯ b in the containment order.
inline bool precedes(const PosetElement& a, const PosetElement& b) {
  if (a.kind != b.kind)
    throw std::invalid_argument("precedes: elements of different orders");
  switch (a.kind) {
    case Order::vertex: return is_subset(a.vertices, b.vertices);
    case Order::edge:
      return a.vertices == b.vertices && is_subset(a.edges, b.edges);
    case Order::line:
      if (a.rows == 0) return true;
      return is_subset(a.rows, b.rows) && is_subset(a.cols, b.cols);
  }
  return false;
}

/// Sizes of the id sets the poset ranges over, independent of the ground.
class PosetShape {
 public:
  static PosetShape vertex_order(int n) { return PosetShape(Order::vertex, n, 0, 0, 0); }
  static PosetShape edge_order(int n, int m) { return PosetShape(Order::edge, n, m, 0, 0); }
  static PosetShape line_order(int r, int c) { return PosetShape(Order::line, 0, 0, r, c); }

  Order order() const { return order_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }
  int row_count() const { return r_; }
  int col_count() const { return c_; }

  /// Number of elements; saturates at UINT64_MAX for huge grounds.
  std::uint64_t size() const {
    switch (order_) {
      case Order::vertex: return pow2(n_);
      case Order::edge: return pow2(m_);
      case Order::line: {
        std::uint64_t a = pow2(r_) - 1, b = pow2(c_) - 1;
        if (a != 0 && b > (UINT64_MAX - 1) / a) return UINT64_MAX;
        return 1 + a * b;
      }
    }
    return 0;
  }

  PosetElement top() const {
    switch (order_) {
      case Order::vertex: return PosetElement::vertex_subset(full_mask(n_));
      case Order::edge: return PosetElement::edge_subset(full_mask(n_), full_mask(m_));
      case Order::line: return PosetElement::line_subset(full_mask(r_), full_mask(c_));
    }
    return {};
  }

  PosetElement bottom() const {
    switch (order_) {
      case Order::vertex: return PosetElement::vertex_subset(0);
      case Order::edge: return PosetElement::edge_subset(full_mask(n_), 0);
      case Order::line: return PosetElement::line_subset(0, 0);
    }
    return {};
  }

  /// Throws std::invalid_argument unless e is an element of this poset.
  void validate(const PosetElement& e) const {
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("invalid " + std::string(to_string(order_)) +
                                  "-order element " + describe(e) + ": " + why);
    };
    if (e.kind != order_) fail("element kind does not match the poset order");
    switch (order_) {
      case Order::vertex:
        if (!is_subset(e.vertices, full_mask(n_))) fail("vertex id outside ground");
        if (e.edges || e.rows || e.cols) fail("stray ids");
        break;
      case Order::edge:
        if (e.vertices != full_mask(n_)) fail("edge order keeps the full vertex set");
        if (!is_subset(e.edges, full_mask(m_))) fail("edge id outside ground");
        if (e.rows || e.cols) fail("stray ids");
        break;
      case Order::line:
        if (!is_subset(e.rows, full_mask(r_)) || !is_subset(e.cols, full_mask(c_)))
          fail("line id outside ground");
        if ((e.rows == 0) != (e.cols == 0)) fail("empty rows xor empty columns");
        if (e.vertices || e.edges) fail("stray ids");
        break;
    }
  }

  /// Dense index; successors always receive smaller indices.
  std::uint64_t index_of(const PosetElement& e) const {
    switch (order_) {
      case Order::vertex: return e.vertices;
      case Order::edge: return e.edges;
      case Order::line:
        if (e.rows == 0) return 0;
        return 1 + (e.rows - 1) * (pow2(c_) - 1) + (e.cols - 1);
    }
    return 0;
  }

  PosetElement at(std::uint64_t idx) const {
    switch (order_) {
      case Order::vertex: return PosetElement::vertex_subset(idx);
      case Order::edge: return PosetElement::edge_subset(full_mask(n_), idx);
      case Order::line: {
        if (idx == 0) return PosetElement::line_subset(0, 0);
        std::uint64_t w = pow2(c_) - 1;
        return PosetElement::line_subset((idx - 1) / w + 1, (idx - 1) % w + 1);
      }
    }
    return {};
  }

  /// Elements covered by e: one vertex, edge, row or column fewer. A 1x1
  /// submatrix covers only the empty submatrix; a 1xk one (k>1) covers its
  /// 1x(k-1) submatrices, which lie strictly above the empty one.
  template <class F>
  void for_each_immediate_successor(const PosetElement& e, F&& f) const {
    switch (order_) {
      case Order::vertex:
        for_each_bit(e.vertices, [&](int k) {
          f(PosetElement::vertex_subset(e.vertices & ~bit(k)));
        });
        break;
      case Order::edge:
        for_each_bit(e.edges, [&](int k) {
          f(PosetElement::edge_subset(e.vertices, e.edges & ~bit(k)));
        });
        break;
      case Order::line: {
        if (e.rows == 0) break;
        bool single_row = popcount(e.rows) == 1;
        bool single_col = popcount(e.cols) == 1;
        if (single_row && single_col) {
          f(PosetElement::line_subset(0, 0));
          break;
        }
        if (!single_row)
          for_each_bit(e.rows, [&](int k) {
            f(PosetElement::line_subset(e.rows & ~bit(k), e.cols));
          });
        if (!single_col)
          for_each_bit(e.cols, [&](int k) {
            f(PosetElement::line_subset(e.rows, e.cols & ~bit(k)));
          });
        break;
      }
    }
  }

  template <class F>
  void for_each_immediate_predecessor(const PosetElement& e, F&& f) const {
    switch (order_) {
      case Order::vertex:
        for_each_bit(full_mask(n_) & ~e.vertices, [&](int k) {
          f(PosetElement::vertex_subset(e.vertices | bit(k)));
        });
        break;
      case Order::edge:
        for_each_bit(full_mask(m_) & ~e.edges, [&](int k) {
          f(PosetElement::edge_subset(e.vertices, e.edges | bit(k)));
        });
        break;
      case Order::line:
        if (e.rows == 0) {
          for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) f(PosetElement::line_subset(bit(i), bit(j)));
          break;
        }
        for_each_bit(full_mask(r_) & ~e.rows, [&](int k) {
          f(PosetElement::line_subset(e.rows | bit(k), e.cols));
        });
        for_each_bit(full_mask(c_) & ~e.cols, [&](int k) {
          f(PosetElement::line_subset(e.rows, e.cols | bit(k)));
        });
        break;
    }
  }

  /// Calls f on every element x with low ⪯ x (including low itself).
  template <class F>
  void for_each_above(const PosetElement& low, F&& f) const {
    auto supersets = [](Mask base, Mask universe, auto&& g) {
      Mask free = universe & ~base;
      Mask sub = 0;
      do {
        g(base | sub);
        sub = (sub - free) & free;
      } while (sub != 0);
    };
    switch (order_) {
      case Order::vertex:
        supersets(low.vertices, full_mask(n_),
                  [&](Mask v) { f(PosetElement::vertex_subset(v)); });
        break;
      case Order::edge:
        supersets(low.edges, full_mask(m_),
                  [&](Mask x) { f(PosetElement::edge_subset(low.vertices, x)); });
        break;
      case Order::line:
        if (low.rows == 0) {
          for (std::uint64_t i = 0; i < size(); ++i) f(at(i));
          break;
        }
        supersets(low.rows, full_mask(r_), [&](Mask r) {
          supersets(low.cols, full_mask(c_),
                    [&](Mask c) { f(PosetElement::line_subset(r, c)); });
        });
        break;
    }
  }

 private:
  PosetShape(Order o, int n, int m, int r, int c) : order_(o), n_(n), m_(m), r_(r), c_(c) {
    for (int k : {n, m, r, c})
      if (k < 0 || k > kMaxGroundIds)
        throw std::invalid_argument("poset ground sizes must lie in 0..64");
  }
  static std::uint64_t pow2(int k) { return k >= 64 ? UINT64_MAX : std::uint64_t{1} << k; }

  Order order_;
  int n_, m_, r_, c_;
};

/// Per-ground-type capabilities. Ground modules specialize this with
/// allows(Order) and shape(const Ground&, Order).
template <class Ground>
struct ground_traits;

/// A ground object together with one of its containment orders.
template <class Ground>
class GroundPoset {
 public:
  GroundPoset(const Ground& ground, Order order)
      : ground_(&ground), shape_(make_shape(ground, order)) {}

  const Ground& ground() const { return *ground_; }
  const PosetShape& shape() const { return shape_; }
  Order order() const { return shape_.order(); }
  std::uint64_t size() const { return shape_.size(); }
  PosetElement top() const { return shape_.top(); }
  PosetElement bottom() const { return shape_.bottom(); }

 private:
  static PosetShape make_shape(const Ground& g, Order order) {
    if (!ground_traits<Ground>::allows(order))
      throw std::invalid_argument(std::string(to_string(order)) +
                                  " order is not defined for " +
                                  std::string(ground_traits<Ground>::name));
    return ground_traits<Ground>::shape(g, order);
  }

  const Ground* ground_;
  PosetShape shape_;
};

/// A family 𝓕 inside the poset, given by a pure membership test.
template <class Ground>
struct FamilyPredicate {
  std::string name;
  std::function<bool(const Ground&, const PosetElement&)> eval;

  bool operator()(const Ground& g, const PosetElement& e) const { return eval(g, e); }
};

struct ScanLimits {
  std::uint64_t max_elements = std::uint64_t{1} << 20;
  unsigned jobs = 1;
};

/// Outcome of one property check; `witness` is empty when the property holds.
///   convex:            {F}          with F ∈ 𝓛𝓜 \ 𝓜
///   strongly convex:   {F, F'}      with F' ∈ 𝓜, F ≻ F', no good step
///   hereditary:        {F, P}       with F ∈ 𝓕, P covered by F, P ∉ 𝓕
///   weakly hereditary: {F, P, F'}   with F ≻ P ⪰ F', F' ∈ 𝓜, P ∉ 𝓕
struct Verdict {
  bool holds = true;
  std::vector<PosetElement> witness;

  explicit operator bool() const { return holds; }
};

struct ClassificationReport {
  std::string family;
  Order order = Order::vertex;
  std::uint64_t element_count = 0;
  std::vector<PosetElement> minima;
  std::vector<PosetElement> local_minima;
  Verdict convex;
  Verdict strongly_convex;
  Verdict weakly_hereditary;
  Verdict hereditary;

  /// Enforces 𝓜 ⊆ 𝓛𝓜 and hereditary ⇒ weakly ⇒ strongly ⇒ convex.
  void check_consistency() const {
    for (const auto& m : minima)
      if (std::find(local_minima.begin(), local_minima.end(), m) == local_minima.end())
        throw std::logic_error("classify(" + family + "): minimum " + describe(m) +
                               " is not a local minimum");
    bool chain = (!hereditary.holds || weakly_hereditary.holds) &&
                 (!weakly_hereditary.holds || strongly_convex.holds) &&
                 (!strongly_convex.holds || convex.holds);
    if (!chain)
      throw std::logic_error("classify(" + family + "): verdicts break the implication chain");
  }
};

namespace detail {

/// Membership of every element plus the derived minima bookkeeping.
template <class Ground>
class FamilyTable {
 public:
  FamilyTable(const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
              const ScanLimits& limits)
      : shape_(poset.shape()) {
    std::uint64_t n = shape_.size();
    if (n > limits.max_elements)
      throw CapExceeded("poset of " + std::string(to_string(shape_.order())) +
                        " order has " + (n == UINT64_MAX ? std::string("> 2^64")
                                                         : std::to_string(n)) +
                        " elements; cap is " + std::to_string(limits.max_elements));
    size_ = n;
    member_.assign(n, 0);
    evaluate(pred, poset.ground(), limits.jobs);

    below_member_.assign(n, 0);
    succ_member_.assign(n, 0);
    above_min_.assign(n, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
      char below = 0, succ = 0, above = 0;
      shape_.for_each_immediate_successor(shape_.at(i), [&](const PosetElement& s) {
        auto j = shape_.index_of(s);
        below |= member_[j] | below_member_[j];
        succ |= member_[j];
        above |= above_min_[j];
      });
      below_member_[i] = below;
      succ_member_[i] = succ;
      above_min_[i] = above | is_min(i);
    }
    above_member_.assign(n, 0);
    for (std::uint64_t i = n; i-- > 0;) {
      if (!(member_[i] | above_member_[i])) continue;
      shape_.for_each_immediate_successor(shape_.at(i), [&](const PosetElement& s) {
        above_member_[shape_.index_of(s)] = 1;
      });
    }
  }

  std::uint64_t size() const { return size_; }
  const PosetShape& shape() const { return shape_; }
  bool member(std::uint64_t i) const { return member_[i]; }
  bool is_min(std::uint64_t i) const { return member_[i] && !below_member_[i]; }
  bool is_local_min(std::uint64_t i) const { return member_[i] && !succ_member_[i]; }
  bool above_min(std::uint64_t i) const { return above_min_[i]; }
  bool strictly_below_member(std::uint64_t i) const { return above_member_[i]; }

  std::vector<PosetElement> collect(bool (FamilyTable::*keep)(std::uint64_t) const) const {
    std::vector<PosetElement> out;
    for (std::uint64_t i = 0; i < size_; ++i)
      if ((this->*keep)(i)) out.push_back(shape_.at(i));
    return out;
  }

 private:
  void evaluate(const FamilyPredicate<Ground>& pred, const Ground& g, unsigned jobs) {
    auto run = [&](std::uint64_t from, std::uint64_t to) {
      for (std::uint64_t i = from; i < to; ++i) member_[i] = pred(g, shape_.at(i)) ? 1 : 0;
    };
    if (jobs <= 1 || size_ < 4096) {
      run(0, size_);
      return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (size_ + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      std::uint64_t from = t * chunk, to = std::min(size_, from + chunk);
      if (from < to) pool.emplace_back(run, from, to);
    }
    for (auto& th : pool) th.join();
  }

  PosetShape shape_;
  std::uint64_t size_ = 0;
  std::vector<char> member_, below_member_, succ_member_, above_min_, above_member_;
};

inline bool pair_less(const std::vector<PosetElement>& a, const std::vector<PosetElement>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ElementLess{});
}

inline void keep_smallest(std::vector<PosetElement>& best, std::vector<PosetElement> cand) {
  if (best.empty() || pair_less(cand, best)) best = std::move(cand);
}

template <class Ground>
Verdict convex_verdict(const FamilyTable<Ground>& t) {
  Verdict v;
  for (std::uint64_t i = 0; i < t.size(); ++i)
    if (t.is_local_min(i) && !t.is_min(i))
      keep_smallest(v.witness, {t.shape().at(i)});
  v.holds = v.witness.empty();
  return v;
}

template <class Ground>
Verdict strong_verdict(const FamilyTable<Ground>& t) {
  const auto& shape = t.shape();
  Verdict v;
  for (std::uint64_t m = 0; m < t.size(); ++m) {
    if (!t.is_min(m)) continue;
    PosetElement low = shape.at(m);
    shape.for_each_above(low, [&](const PosetElement& f) {
      auto fi = shape.index_of(f);
      if (fi == m || !t.member(fi)) return;
      bool ok = false;
      shape.for_each_immediate_successor(f, [&](const PosetElement& p) {
        if (!ok && t.member(shape.index_of(p)) && precedes(low, p)) ok = true;
      });
      if (!ok) keep_smallest(v.witness, {f, low});
    });
  }
  v.holds = v.witness.empty();
  return v;
}

template <class Ground>
Verdict hereditary_verdict(const FamilyTable<Ground>& t) {
  const auto& shape = t.shape();
  Verdict v;
  for (std::uint64_t i = 0; i < t.size(); ++i) {
    if (!t.member(i)) continue;
    PosetElement f = shape.at(i);
    shape.for_each_immediate_successor(f, [&](const PosetElement& p) {
      if (!t.member(shape.index_of(p))) keep_smallest(v.witness, {f, p});
    });
  }
  v.holds = v.witness.empty();
  return v;
}

template <class Ground>
Verdict weakly_hereditary_verdict(const FamilyTable<Ground>& t) {
  const auto& shape = t.shape();
  std::optional<PosetElement> p_best;
  for (std::uint64_t i = 0; i < t.size(); ++i)
    if (!t.member(i) && t.above_min(i) && t.strictly_below_member(i)) {
      PosetElement p = shape.at(i);
      if (!p_best || ElementLess{}(p, *p_best)) p_best = p;
    }
  Verdict v;
  if (!p_best) return v;
  v.holds = false;
  std::optional<PosetElement> f_best, m_best;
  for (std::uint64_t i = 0; i < t.size(); ++i) {
    PosetElement x = shape.at(i);
    if (t.member(i) && x != *p_best && precedes(*p_best, x) &&
        (!f_best || ElementLess{}(x, *f_best)))
      f_best = x;
    if (t.is_min(i) && precedes(x, *p_best) && (!m_best || ElementLess{}(x, *m_best)))
      m_best = x;
  }
  v.witness = {*f_best, *p_best, *m_best};
  return v;
}

}  // namespace detail

template <class Ground>
std::vector<PosetElement> immediate_successors(const PosetElement& e,
                                               const GroundPoset<Ground>& poset) {
  poset.shape().validate(e);
  std::vector<PosetElement> out;
  poset.shape().for_each_immediate_successor(e, [&](const PosetElement& s) { out.push_back(s); });
  return out;
}

template <class Ground>
std::vector<PosetElement> immediate_predecessors(const PosetElement& e,
                                                 const GroundPoset<Ground>& poset) {
  poset.shape().validate(e);
  std::vector<PosetElement> out;
  poset.shape().for_each_immediate_predecessor(e,
                                               [&](const PosetElement& s) { out.push_back(s); });
  return out;
}

/// 𝓜(𝓕): members with no member strictly below, in index order.
template <class Ground>
std::vector<PosetElement> minima(const FamilyPredicate<Ground>& pred,
                                 const GroundPoset<Ground>& poset, const ScanLimits& limits = {}) {
  detail::FamilyTable<Ground> t(pred, poset, limits);
  return t.collect(&detail::FamilyTable<Ground>::is_min);
}

/// 𝓛𝓜(𝓕): members with no member among their immediate successors.
template <class Ground>
std::vector<PosetElement> local_minima(const FamilyPredicate<Ground>& pred,
                                       const GroundPoset<Ground>& poset,
                                       const ScanLimits& limits = {}) {
  detail::FamilyTable<Ground> t(pred, poset, limits);
  return t.collect(&detail::FamilyTable<Ground>::is_local_min);
}

template <class Ground>
Verdict is_convex(const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
                  const ScanLimits& limits = {}) {
  return detail::convex_verdict(detail::FamilyTable<Ground>(pred, poset, limits));
}

template <class Ground>
Verdict is_strongly_convex(const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
                           const ScanLimits& limits = {}) {
  detail::FamilyTable<Ground> t(pred, poset, limits);
  auto c = detail::convex_verdict(t);
  auto s = detail::strong_verdict(t);
  if (!c.holds && s.holds) throw std::logic_error("strong convexity without convexity");
  return s;
}

template <class Ground>
Verdict is_hereditary(const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
                      const ScanLimits& limits = {}) {
  return detail::hereditary_verdict(detail::FamilyTable<Ground>(pred, poset, limits));
}

template <class Ground>
Verdict is_weakly_hereditary(const FamilyPredicate<Ground>& pred,
                             const GroundPoset<Ground>& poset, const ScanLimits& limits = {}) {
  return detail::weakly_hereditary_verdict(detail::FamilyTable<Ground>(pred, poset, limits));
}

template <class Ground>
ClassificationReport classify(const FamilyPredicate<Ground>& pred,
                              const GroundPoset<Ground>& poset, const ScanLimits& limits = {}) {
  detail::FamilyTable<Ground> t(pred, poset, limits);
  ClassificationReport r;
  r.family = pred.name;
  r.order = poset.order();
  r.element_count = t.size();
  r.minima = t.collect(&detail::FamilyTable<Ground>::is_min);
  r.local_minima = t.collect(&detail::FamilyTable<Ground>::is_local_min);
  r.convex = detail::convex_verdict(t);
  r.strongly_convex = detail::strong_verdict(t);
  r.weakly_hereditary = detail::weakly_hereditary_verdict(t);
  r.hereditary = detail::hereditary_verdict(t);
  r.check_consistency();
  return r;
}

// Single-element queries that avoid scanning the whole poset.

template <class Ground>
bool is_member(const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
               const PosetElement& e) {
  poset.shape().validate(e);
  return pred(poset.ground(), e);
}

template <class Ground>
bool is_local_minimum(const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
                      const PosetElement& e) {
  if (!is_member(pred, poset, e)) return false;
  bool any = false;
  poset.shape().for_each_immediate_successor(e, [&](const PosetElement& s) {
    if (!any && pred(poset.ground(), s)) any = true;
  });
  return !any;
}

/// Some family member strictly below e, trying the bottom element and the
/// caller's hints first, then (within the cap) every element below e.
template <class Ground>
std::optional<PosetElement> find_member_below(const FamilyPredicate<Ground>& pred,
                                              const GroundPoset<Ground>& poset,
                                              const PosetElement& e,
                                              const std::vector<PosetElement>& hints = {},
                                              const ScanLimits& limits = {}) {
  const auto& shape = poset.shape();
  shape.validate(e);
  std::vector<PosetElement> first{shape.bottom()};
  first.insert(first.end(), hints.begin(), hints.end());
  for (const auto& h : first) {
    shape.validate(h);
    if (h != e && precedes(h, e) && pred(poset.ground(), h)) return h;
  }
  std::uint64_t below = 0;
  switch (shape.order()) {
    case Order::vertex: below = std::uint64_t{1} << std::min(63, popcount(e.vertices)); break;
    case Order::edge: below = std::uint64_t{1} << std::min(63, popcount(e.edges)); break;
    case Order::line:
      below = (std::uint64_t{1} << std::min(31, popcount(e.rows))) *
              (std::uint64_t{1} << std::min(31, popcount(e.cols)));
      break;
  }
  if (below > limits.max_elements)
    throw CapExceeded("down-set of " + describe(e) + " exceeds the element cap");
  // Submask enumeration in increasing index order.
  std::optional<PosetElement> found;
  auto try_elem = [&](const PosetElement& x) {
    if (!found && x != e && pred(poset.ground(), x)) found = x;
  };
  auto submasks = [](Mask m, auto&& g) {
    Mask s = 0;
    do {
      g(s);
      s = (s - m) & m;
    } while (s != 0);
  };
  switch (shape.order()) {
    case Order::vertex:
      submasks(e.vertices, [&](Mask s) { try_elem(PosetElement::vertex_subset(s)); });
      break;
    case Order::edge:
      submasks(e.edges, [&](Mask s) { try_elem(PosetElement::edge_subset(e.vertices, s)); });
      break;
    case Order::line:
      submasks(e.rows, [&](Mask r) {
        submasks(e.cols, [&](Mask c) { try_elem(PosetElement::line_subset(r, c)); });
      });
      break;
  }
  return found;
}

/// Certificate that e ∈ 𝓛𝓜 \ 𝓜, i.e. that the family is not convex.
struct NonConvexityCertificate {
  PosetElement local_minimum;
  PosetElement member_below;
};

template <class Ground>
std::optional<NonConvexityCertificate> certify_not_convex(
    const FamilyPredicate<Ground>& pred, const GroundPoset<Ground>& poset,
    const PosetElement& e, const std::vector<PosetElement>& hints = {},
    const ScanLimits& limits = {}) {
  if (!is_local_minimum(pred, poset, e)) return std::nullopt;
  auto below = find_member_below(pred, poset, e, hints, limits);
  if (!below) return std::nullopt;
  return NonConvexityCertificate{e, *below};
}

}  // namespace convexfam

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

// Game forms: grids of outcome labels; tightness and total tightness.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convexfam/grid.hpp"

namespace convexfam {

/// Outcome grid. Cells hold 0-based outcome ids into `labels`.
class GameForm {
 public:
  static constexpr int kMaxOutcomes = 20;

  GameForm() = default;

  /// Outcome ids are assigned to labels in reading order.
  static GameForm from_labels(const std::vector<std::vector<std::string>>& rows) {
    GameForm f;
    std::map<std::string, int> ids;
    std::vector<std::vector<int>> cells;
    for (const auto& row : rows) {
      auto& out = cells.emplace_back();
      for (const auto& s : row) {
        auto [it, fresh] = ids.try_emplace(s, static_cast<int>(f.labels_.size()));
        if (fresh) f.labels_.push_back(s);
        out.push_back(it->second);
      }
    }
    f.g_ = Grid<int>::from_rows(cells);
    return f;
  }

  /// Integer outcomes; labels are "w<k>" for each value k, ids in reading order.
  static GameForm from_ints(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<std::string>> s;
    for (const auto& row : rows) {
      auto& out = s.emplace_back();
      for (int v : row) out.push_back("w" + std::to_string(v));
    }
    return from_labels(s);
  }

  int rows() const { return g_.rows(); }
  int cols() const { return g_.cols(); }
  Mask row_mask() const { return g_.row_mask(); }
  Mask col_mask() const { return g_.col_mask(); }
  int outcome_count() const { return static_cast<int>(labels_.size()); }
  int operator()(int r, int c) const { return g_(r, c); }
  const Grid<int>& grid() const { return g_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int id) const { return labels_.at(static_cast<std::size_t>(id)); }

  /// Subform on the given lines, relabelled so ids stay dense.
  GameForm sub(Mask r, Mask c) const {
    std::vector<std::vector<std::string>> rows;
    for_each_bit(r, [&](int i) {
      auto& out = rows.emplace_back();
      for_each_bit(c, [&](int j) { out.push_back(labels_[g_(i, j)]); });
    });
    if (c == 0) rows.clear();
    return from_labels(rows);
  }

  std::vector<std::vector<std::string>> to_labels() const {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(rows()));
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) out[i].push_back(labels_[g_(i, j)]);
    return out;
  }

  bool operator==(const GameForm&) const = default;

 private:
  Grid<int> g_;
  std::vector<std::string> labels_;
};

template <>
struct ground_traits<GameForm> {
  static constexpr const char* name = "game-form";
  static bool allows(Order o) { return o == Order::line; }
  static PosetShape shape(const GameForm& g, Order) {
    return PosetShape::line_order(g.rows(), g.cols());
  }
};

/// Outcome sets are masks over outcome ids (bit k = id k).
struct TightResult {
  bool tight = false;
  std::optional<Mask> witness;  // a set A no row fits inside and whose complement no column fits inside
};

namespace detail {

inline Mask row_outcomes(const Grid<int>& g, int i, Mask c) {
  Mask s = 0;
  for_each_bit(c, [&](int j) { s |= bit(g(i, j)); });
  return s;
}

inline Mask col_outcomes(const Grid<int>& g, int j, Mask r) {
  Mask s = 0;
  for_each_bit(r, [&](int i) { s |= bit(g(i, j)); });
  return s;
}

}  // namespace detail

/// Tightness of the subform on rows `r`, columns `c`: for every set A of the
/// outcomes it uses, some row uses only outcomes in A or some column uses
/// only outcomes outside A. The empty subform is not tight.
/// The reported witness is the smallest violating A in mask order.
inline TightResult is_tight_on(const GameForm& f, Mask r, Mask c) {
  if (r == 0 || c == 0) return {false, std::nullopt};
  const Grid<int>& g = f.grid();
  std::vector<Mask> rs, cs;
  for_each_bit(r, [&](int i) { rs.push_back(detail::row_outcomes(g, i, c)); });
  for_each_bit(c, [&](int j) { cs.push_back(detail::col_outcomes(g, j, r)); });
  Mask used = 0;
  for (Mask s : rs) used |= s;
  if (popcount(used) > GameForm::kMaxOutcomes)
    throw CapExceeded("tightness scan over " + std::to_string(popcount(used)) +
                      " outcomes exceeds the cap of " + std::to_string(GameForm::kMaxOutcomes));
  // Enumerate subsets of `used` by the standard submask walk.
  std::optional<Mask> witness;
  Mask a = used;
  while (true) {
    bool ok = false;
    for (Mask s : rs)
      if (is_subset(s, a)) { ok = true; break; }
    if (!ok) {
      Mask rest = used & ~a;
      for (Mask s : cs)
        if (is_subset(s, rest)) { ok = true; break; }
    }
    if (!ok && (!witness || mask_lex_less(a, *witness))) witness = a;
    if (a == 0) break;
    a = (a - 1) & used;
  }
  return {!witness.has_value(), witness};
}

inline TightResult is_tight(const GameForm& f) { return is_tight_on(f, f.row_mask(), f.col_mask()); }

/// A 2x2 subform is tight iff it has a constant row or column.
inline bool tight_2x2(const Grid<int>& g, int i1, int i2, int j1, int j2) {
  return g(i1, j1) == g(i1, j2) || g(i2, j1) == g(i2, j2) || g(i1, j1) == g(i2, j1) ||
         g(i1, j2) == g(i2, j2);
}

/// Totally tight: every subform is tight, decided on 2x2 subforms.
/// Vacuously true below 2x2, including the empty subform.
inline bool is_totally_tight_on(const GameForm& f, Mask r, Mask c) {
  auto rows = mask_ids(r), cols = mask_ids(c);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      for (std::size_t x = 0; x < cols.size(); ++x)
        for (std::size_t y = x + 1; y < cols.size(); ++y)
          if (!tight_2x2(f.grid(), rows[a] - 1, rows[b] - 1, cols[x] - 1, cols[y] - 1))
            return false;
  return true;
}

inline bool is_totally_tight(const GameForm& f) {
  return is_totally_tight_on(f, f.row_mask(), f.col_mask());
}

/// The three minimal not-tight 2x2 forms, by number of distinct outcomes.
enum class NotTight2x2 { diag2, diag3, diag4 };

inline std::string_view to_string(NotTight2x2 t) {
  switch (t) {
    case NotTight2x2::diag2: return "diag-2";
    case NotTight2x2::diag3: return "diag-3";
    case NotTight2x2::diag4: return "diag-4";
  }
  return "?";
}

/// Type of a not-tight 2x2 form, or nullopt when the form is tight.
inline std::optional<NotTight2x2> not_tight_2x2_type(const GameForm& f) {
  if (f.rows() != 2 || f.cols() != 2) throw std::invalid_argument("not_tight_2x2_type needs a 2x2 form");
  const Grid<int>& g = f.grid();
  if (tight_2x2(g, 0, 1, 0, 1)) return std::nullopt;
  Mask all = bit(g(0, 0)) | bit(g(0, 1)) | bit(g(1, 0)) | bit(g(1, 1));
  switch (popcount(all)) {
    case 2: return NotTight2x2::diag2;
    case 3: return NotTight2x2::diag3;
    default: return NotTight2x2::diag4;
  }
}

/// Relabel by merging outcome blocks. `blocks` must partition the outcome ids
/// (0-based). The merged label joins the block's labels with '+'.
inline GameForm merge_outcomes(const GameForm& f, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> block_of(static_cast<std::size_t>(f.outcome_count()), -1);
  std::vector<std::string> names;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block in outcome partition");
    std::string name;
    for (int o : blocks[b]) {
      if (o < 0 || o >= f.outcome_count())
        throw std::invalid_argument("outcome id " + std::to_string(o) + " out of range");
      if (block_of[o] != -1)
        throw std::invalid_argument("outcome id " + std::to_string(o) + " in two blocks");
      block_of[o] = static_cast<int>(b);
      name += (name.empty() ? "" : "+") + f.label(o);
    }
    names.push_back(name);
  }
  for (std::size_t o = 0; o < block_of.size(); ++o)
    if (block_of[o] == -1) throw std::invalid_argument("outcome id " + std::to_string(o) + " in no block");
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < f.rows(); ++i) {
    auto& out = rows.emplace_back();
    for (int j = 0; j < f.cols(); ++j) out.push_back(names[block_of[f(i, j)]]);
  }
  return GameForm::from_labels(rows);
}

// ---- fixtures ----

inline GameForm g1() { return GameForm::from_ints({{1, 1}, {2, 3}}); }
inline GameForm g2() { return GameForm::from_ints({{1, 1, 2, 2}, {3, 4, 3, 4}}); }
inline GameForm g3() { return GameForm::from_ints({{1, 1, 3}, {1, 2, 2}, {3, 2, 3}}); }
inline GameForm g4() { return GameForm::from_ints({{1, 1, 3}, {1, 1, 2}, {4, 2, 2}}); }
inline GameForm g5() {
  return GameForm::from_ints({{1, 2, 1, 2}, {3, 4, 4, 3}, {1, 4, 1, 5}, {3, 2, 6, 2}});
}
inline GameForm g6() { return GameForm::from_ints({{1, 1}, {1, 2}}); }
inline GameForm g7() { return GameForm::from_ints({{1, 2}, {2, 1}}); }
inline GameForm g8() { return GameForm::from_ints({{1, 1, 2}, {3, 4, 3}}); }
inline GameForm g9() { return GameForm::from_ints({{1, 1, 2}, {4, 5, 2}, {4, 3, 3}}); }

/// Not tight; tight after deleting row 4 or column 4; not tight after deleting
/// any other single line.
inline GameForm ab_form_4x4() {
  return GameForm::from_labels(
      {{"a", "b", "a", "b"}, {"b", "a", "a", "b"}, {"a", "a", "a", "b"}, {"b", "b", "b", "a"}});
}

/// Tight, and deleting any single row or column breaks tightness.
inline GameForm locally_minimal_tight_4x4() {
  return GameForm::from_ints({{1, 1, 2, 2}, {3, 4, 3, 2}, {3, 1, 3, 5}, {5, 4, 4, 5}});
}

/// The minimal not-tight 2x2 forms with 2, 3 and 4 outcomes.
inline std::vector<GameForm> not_tight_2x2_catalog() {
  return {GameForm::from_ints({{1, 2}, {2, 1}}), GameForm::from_ints({{1, 2}, {3, 1}}),
          GameForm::from_ints({{1, 2}, {3, 4}})};
}

}  // namespace convexfam
